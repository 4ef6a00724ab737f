#pragma once

#include <stdexcept>
#include <string>

namespace singspec {

// Base class for all singspec errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside a function's mathematical domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// Size parameter (rule order, list length) out of the supported range.
class SizeError : public Error {
public:
    using Error::Error;
};

// Adaptive quadrature failed to reach the requested tolerance.  Carries the
// best value obtained and its error estimate.
class NoConvergence : public Error {
public:
    NoConvergence(const std::string& msg, double value, double err_est)
        : Error(msg), value(value), err_est(err_est) {}
    double value;
    double err_est;
};

// Function is not in the weighted L^2 space of the requested basis.
class NotInL2w : public Error {
public:
    using Error::Error;
};

// Function is not in the requested weighted Sobolev space.
class NotInSobolev : public Error {
public:
    using Error::Error;
};

// Series basis does not match what an operation requires.
class BasisMismatch : public Error {
public:
    using Error::Error;
};

// Series too short for the requested operation.
class LengthError : public Error {
public:
    using Error::Error;
};

// A rate prediction was requested outside the hypotheses of its rule.
// `condition` names the violated inequality, e.g. "alpha+gamma>-1".
class HypothesisViolated : public Error {
public:
    HypothesisViolated(const std::string& condition)
        : Error("hypothesis violated: " + condition), condition(condition) {}
    std::string condition;
};

// Not enough usable samples for a fit.
class InsufficientData : public Error {
public:
    using Error::Error;
};

// Extrapolated (unstored) coefficient tail exceeds 10% of the stored tail,
// so a projection-error norm would be dominated by modelled data.
class TailDominates : public Error {
public:
    using Error::Error;
};

// Descriptor parse failure; `offset` is a byte offset into the source and
// `expected` describes the expected token set at that point.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t offset, std::string expected)
        : Error(msg + " at offset " + std::to_string(offset) +
                " (expected " + expected + ")"),
          offset(offset), expected(std::move(expected)) {}
    std::size_t offset;
    std::string expected;
};

}  // namespace singspec
