#include "singspec/descr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

namespace singspec {

namespace {

class Lexer {
public:
    explicit Lexer(const std::string& source) : src_len_(source.size()) {
        buf_.reserve(source.size());
        off_.reserve(source.size());
        for (std::size_t i = 0; i < source.size(); ++i) {
            if (std::isspace(static_cast<unsigned char>(source[i]))) continue;
            buf_.push_back(source[i]);
            off_.push_back(i);
        }
    }

    bool eof() const { return pos_ >= buf_.size(); }
    char peek() const { return eof() ? '\0' : buf_[pos_]; }

    std::size_t offset() const { return pos_ < off_.size() ? off_[pos_] : src_len_; }

    bool try_consume(const char* lit) {
        std::size_t len = std::strlen(lit);
        if (buf_.compare(pos_, len, lit) != 0) return false;
        pos_ += len;
        return true;
    }

    void expect(const char* lit, const char* what) {
        if (!try_consume(lit)) fail(what);
    }

    [[noreturn]] void fail(const std::string& expected) const {
        throw ParseError("descriptor syntax error", offset(), expected);
    }

    double number(const char* what) {
        char c = peek();
        if (c != '+' && c != '-' && c != '.' && !std::isdigit(static_cast<unsigned char>(c)))
            fail(what);
        const char* start = buf_.c_str() + pos_;
        char* end = nullptr;
        double v = std::strtod(start, &end);
        if (end == start || !std::isfinite(v)) fail(what);
        pos_ += static_cast<std::size_t>(end - start);
        return v;
    }

    int integer(const char* what) {
        std::size_t begin = pos_;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ == begin) fail(what);
        return std::atoi(buf_.c_str() + begin);
    }

private:
    std::string buf_;               // source with whitespace removed
    std::vector<std::size_t> off_;  // position in buf_ -> byte offset in source
    std::size_t src_len_;
    std::size_t pos_ = 0;
};

SingularFactor& site_factor(SingularFunction& f, Site site, double z0) {
    for (auto& fac : f.factors) {
        if (fac.site != site) continue;
        if (site != Site::Interior || fac.z0 == z0) return fac;
    }
    SingularFactor fac;
    fac.site = site;
    fac.z0 = z0;
    f.factors.push_back(fac);
    return f.factors.back();
}

double interior_point(Lexer& lex) {
    std::size_t at = lex.offset();
    double z0 = lex.number("interior point");
    if (!(z0 > -1.0 && z0 < 1.0))
        throw ParseError("interior point must lie strictly inside (-1,1)", at,
                         "number in (-1,1)");
    return z0;
}

void parse_alg(Lexer& lex, SingularFunction& f) {
    if (lex.try_consume("(1-x)^")) {
        site_factor(f, Site::RightEndpoint, 0.0).exponent += lex.number("exponent");
        return;
    }
    if (lex.try_consume("(1+x)^")) {
        site_factor(f, Site::LeftEndpoint, 0.0).exponent += lex.number("exponent");
        return;
    }
    if (lex.try_consume("|x-")) {
        double z0 = interior_point(lex);
        lex.expect("|^", "'|^'");
        site_factor(f, Site::Interior, z0).exponent += lex.number("exponent");
        return;
    }
    lex.fail("'(1-x)^', '(1+x)^' or '|x-'");
}

void parse_log(Lexer& lex, SingularFunction& f) {
    int power = 1;
    if (lex.try_consume("^")) power = lex.integer("log power");
    if (lex.try_consume("(1-x^2)")) {
        f.log1mx2_power += power;
        return;
    }
    if (lex.try_consume("(1-x)")) {
        site_factor(f, Site::RightEndpoint, 0.0).log_power += power;
        return;
    }
    if (lex.try_consume("(1+x)")) {
        site_factor(f, Site::LeftEndpoint, 0.0).log_power += power;
        return;
    }
    if (lex.try_consume("|x-")) {
        double z0 = interior_point(lex);
        lex.expect("|", "'|'");
        site_factor(f, Site::Interior, z0).log_power += power;
        return;
    }
    lex.fail("'(1-x)', '(1+x)', '(1-x^2)' or '|x-'");
}

void parse_factor(Lexer& lex, SingularFunction& f) {
    char c = lex.peek();
    if (c == '(' || c == '|') {
        parse_alg(lex, f);
        return;
    }
    if (lex.try_consume("log")) {
        parse_log(lex, f);
        return;
    }
    if (lex.try_consume("sin(x)")) {
        SmoothTerm t;
        t.kind = SmoothTerm::Kind::Sin;
        f.smooth_terms.push_back(t);
        return;
    }
    if (lex.try_consume("cos(x)")) {
        SmoothTerm t;
        t.kind = SmoothTerm::Kind::Cos;
        f.smooth_terms.push_back(t);
        return;
    }
    if (lex.try_consume("exp(x)")) {
        SmoothTerm t;
        t.kind = SmoothTerm::Kind::Exp;
        f.smooth_terms.push_back(t);
        return;
    }
    if (lex.try_consume("poly(")) {
        SmoothTerm t;
        t.kind = SmoothTerm::Kind::Poly;
        t.poly.push_back(lex.number("coefficient"));
        while (lex.try_consume(",")) t.poly.push_back(lex.number("coefficient"));
        lex.expect(")", "',' or ')'");
        f.smooth_terms.push_back(t);
        return;
    }
    lex.fail("a factor: '(1-x)^', '(1+x)^', '|x-', 'log', 'sin(x)', 'cos(x)', 'exp(x)' or "
             "'poly('");
}

std::string fmt_num(double v) {
    char tmp[40];
    std::snprintf(tmp, sizeof tmp, "%.17g", v);
    return tmp;
}

std::string fmt_log(int power, const std::string& site) {
    if (power == 1) return "log" + site;
    return "log^" + std::to_string(power) + site;
}

}  // namespace

SingularFunction parse(const std::string& source) {
    Lexer lex(source);
    SingularFunction f;
    if (lex.eof()) lex.fail("a non-empty descriptor");
    parse_factor(lex, f);
    while (!lex.eof()) {
        lex.expect("*", "'*' or end of input");
        parse_factor(lex, f);
    }
    f.validate();
    return f;
}

Descriptor parse_descriptor(const std::string& source) {
    Descriptor d;
    d.ast = parse(source);
    d.source = format(d.ast);
    return d;
}

std::string format(const SingularFunction& f) {
    if (f.custom_smooth)
        throw DomainError("descriptor grammar cannot express a custom smooth closure");

    const SingularFactor* right = nullptr;
    const SingularFactor* left = nullptr;
    std::vector<const SingularFactor*> interior;
    for (const auto& fac : f.factors) {
        switch (fac.site) {
            case Site::RightEndpoint: right = &fac; break;
            case Site::LeftEndpoint: left = &fac; break;
            case Site::Interior: interior.push_back(&fac); break;
        }
    }
    std::sort(interior.begin(), interior.end(),
              [](const SingularFactor* a, const SingularFactor* b) { return a->z0 < b->z0; });

    std::vector<std::string> pieces;
    auto emit_alg = [&pieces](const SingularFactor* fac, const std::string& head,
                              const std::string& tail) {
        if (!fac) return;
        if (fac->exponent != 0.0 || fac->log_power == 0)
            pieces.push_back(head + fmt_num(fac->exponent) + tail);
    };
    emit_alg(right, "(1-x)^", "");
    emit_alg(left, "(1+x)^", "");
    for (const auto* fac : interior)
        if (fac->exponent != 0.0 || fac->log_power == 0)
            pieces.push_back("|x-" + fmt_num(fac->z0) + "|^" + fmt_num(fac->exponent));

    if (right && right->log_power > 0) pieces.push_back(fmt_log(right->log_power, "(1-x)"));
    if (left && left->log_power > 0) pieces.push_back(fmt_log(left->log_power, "(1+x)"));
    for (const auto* fac : interior)
        if (fac->log_power > 0)
            pieces.push_back(fmt_log(fac->log_power, "|x-" + fmt_num(fac->z0) + "|"));
    if (f.log1mx2_power > 0) pieces.push_back(fmt_log(f.log1mx2_power, "(1-x^2)"));

    for (const auto& t : f.smooth_terms) {
        switch (t.kind) {
            case SmoothTerm::Kind::Sin: pieces.push_back("sin(x)"); break;
            case SmoothTerm::Kind::Cos: pieces.push_back("cos(x)"); break;
            case SmoothTerm::Kind::Exp: pieces.push_back("exp(x)"); break;
            case SmoothTerm::Kind::Poly: {
                std::string s = "poly(";
                for (std::size_t i = 0; i < t.poly.size(); ++i) {
                    if (i) s += ",";
                    s += fmt_num(t.poly[i]);
                }
                s += ")";
                pieces.push_back(s);
                break;
            }
        }
    }

    if (pieces.empty()) return "poly(1)";
    std::string out = pieces.front();
    for (std::size_t i = 1; i < pieces.size(); ++i) out += "*" + pieces[i];
    return out;
}

}  // namespace singspec
