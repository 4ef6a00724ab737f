#pragma once

#include <string>

#include "singspec/function.hpp"

namespace singspec {

// Parsed descriptor together with its canonical text (format of the ast).
struct Descriptor {
    std::string source;
    SingularFunction ast;
};

// Parses the function-descriptor mini-language:
//
//   expr    := factor ('*' factor)*
//   factor  := alg | logf | smooth
//   alg     := '(1-x)^' num | '(1+x)^' num | '|x-' num '|^' num
//   logf    := 'log' ('^' int)? ( '(1-x)' | '(1+x)' | '|x-' num '|' | '(1-x^2)' )
//   smooth  := 'sin(x)' | 'cos(x)' | 'exp(x)' | 'poly(' num (',' num)* ')'
//
// Whitespace is ignored; log is the natural logarithm.  Factors at the same
// site merge (algebraic exponents add, log powers add); 'log(1-x^2)' maps to
// the dedicated log1mx2 slot.  |x-z| requires z strictly inside (-1,1).
// Raises ParseError with the byte offset into `source` and the expected token.
SingularFunction parse(const std::string& source);

Descriptor parse_descriptor(const std::string& source);

// Canonical text for f: algebraic factors (right, left, interior by
// ascending z0), then log factors in the same order, then log(1-x^2), then
// smooth terms; numbers printed with %.17g.  parse(format(f)) has the same
// ast.  Functions with a custom smooth closure cannot be formatted.
std::string format(const SingularFunction& f);

}  // namespace singspec
