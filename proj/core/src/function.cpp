#include "singspec/function.hpp"

#include <cmath>

namespace singspec {

namespace {

double int_pow(double base, int p) {
    double out = 1.0;
    for (int i = 0; i < p; ++i) out *= base;
    return out;
}

double factor_from_distance(const SingularFactor& fac, double dist) {
    double v = (fac.exponent == 0.0) ? 1.0 : std::pow(dist, fac.exponent);
    if (fac.log_power > 0) v *= int_pow(std::log(dist), fac.log_power);
    return v;
}

double factor_distance(const SingularFactor& fac, double x) {
    switch (fac.site) {
        case Site::RightEndpoint: return 1.0 - x;
        case Site::LeftEndpoint: return 1.0 + x;
        case Site::Interior: return std::fabs(x - fac.z0);
    }
    return 0.0;
}

}  // namespace

double SmoothTerm::eval(double x) const {
    switch (kind) {
        case Kind::Sin: return std::sin(x);
        case Kind::Cos: return std::cos(x);
        case Kind::Exp: return std::exp(x);
        case Kind::Poly: {
            double v = 0.0;
            for (std::size_t i = poly.size(); i-- > 0;) v = v * x + poly[i];
            return v;
        }
    }
    return 0.0;
}

void SingularFunction::validate() const {
    bool seen_right = false, seen_left = false;
    for (const auto& fac : factors) {
        if (fac.log_power < 0) throw DomainError("log_power must be non-negative");
        switch (fac.site) {
            case Site::RightEndpoint:
                if (seen_right) throw DomainError("duplicate right-endpoint factor");
                seen_right = true;
                if (fac.exponent <= -1.0)
                    throw DomainError("right-endpoint exponent must exceed -1");
                break;
            case Site::LeftEndpoint:
                if (seen_left) throw DomainError("duplicate left-endpoint factor");
                seen_left = true;
                if (fac.exponent <= -1.0)
                    throw DomainError("left-endpoint exponent must exceed -1");
                break;
            case Site::Interior:
                if (!(fac.z0 > -1.0 && fac.z0 < 1.0))
                    throw DomainError("interior singularity must lie strictly inside (-1,1)");
                if (fac.exponent <= -0.5)
                    throw DomainError("interior exponent must exceed -1/2");
                break;
        }
    }
    for (std::size_t i = 0; i < factors.size(); ++i)
        for (std::size_t j = i + 1; j < factors.size(); ++j)
            if (factors[i].site == Site::Interior && factors[j].site == Site::Interior &&
                factors[i].z0 == factors[j].z0)
                throw DomainError("duplicate interior singularity location");
    if (log1mx2_power < 0) throw DomainError("log1mx2 power must be non-negative");
}

double SingularFunction::smooth_eval(double x) const {
    double v = 1.0;
    for (const auto& term : smooth_terms) v *= term.eval(x);
    if (custom_smooth) v *= custom_smooth(x);
    return v;
}

double SingularFunction::eval(double x) const {
    double v = smooth_eval(x);
    for (const auto& fac : factors) v *= factor_from_distance(fac, factor_distance(fac, x));
    if (log1mx2_power > 0) v *= int_pow(std::log1p(-x * x), log1mx2_power);
    return v;
}

double SingularFunction::eval_hinted(double x, const Hint& hint) const {
    if (!hint.active) return eval(x);
    double v = smooth_eval(x);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto& fac = factors[i];
        bool matched = (fac.site == hint.site) &&
                       (fac.site != Site::Interior || static_cast<int>(i) == hint.interior_index);
        double dist = matched ? hint.t : factor_distance(fac, x);
        v *= factor_from_distance(fac, dist);
    }
    if (log1mx2_power > 0) {
        double lg;
        if (hint.site == Site::Interior) {
            lg = std::log1p(-x * x);
        } else {
            // 1-x^2 = t*(2-t) with t the exact distance to the endpoint.
            lg = std::log(hint.t) + std::log(2.0 - hint.t);
        }
        v *= int_pow(lg, log1mx2_power);
    }
    return v;
}

bool SingularFunction::has_site(Site s) const {
    for (const auto& fac : factors)
        if (fac.site == s) return true;
    return false;
}

int SingularFunction::interior_factor_at(double z0) const {
    for (std::size_t i = 0; i < factors.size(); ++i)
        if (factors[i].site == Site::Interior && factors[i].z0 == z0) return static_cast<int>(i);
    return -1;
}

SingularFunction SingularFunction::from_smooth(std::function<double(double)> g) {
    SingularFunction f;
    f.custom_smooth = std::move(g);
    return f;
}

Basis Basis::make_jacobi(const JacobiParams& p) {
    Basis b;
    b.family = BasisFamily::Jacobi;
    b.jacobi = p;
    return b;
}

Basis Basis::make_gegenbauer(double lambda) {
    if (!(lambda > -0.5) || lambda == 0.0)
        throw DomainError("Gegenbauer parameter must satisfy lambda > -1/2, lambda != 0");
    Basis b;
    b.family = BasisFamily::Gegenbauer;
    b.lambda = lambda;
    b.jacobi = JacobiParams(lambda - 0.5, lambda - 0.5);
    return b;
}

Basis Basis::make_legendre() {
    Basis b;
    b.family = BasisFamily::Legendre;
    b.jacobi = JacobiParams(0.0, 0.0);
    return b;
}

Basis Basis::make_chebyshev() {
    Basis b;
    b.family = BasisFamily::Chebyshev;
    b.jacobi = JacobiParams(-0.5, -0.5);
    return b;
}

JacobiParams Basis::effective_jacobi() const {
    switch (family) {
        case BasisFamily::Jacobi: return jacobi;
        case BasisFamily::Gegenbauer: return JacobiParams(lambda - 0.5, lambda - 0.5);
        case BasisFamily::Legendre: return JacobiParams(0.0, 0.0);
        case BasisFamily::Chebyshev: return JacobiParams(-0.5, -0.5);
    }
    return JacobiParams(0.0, 0.0);
}

bool Basis::operator==(const Basis& other) const {
    if (family != other.family) return false;
    switch (family) {
        case BasisFamily::Jacobi:
            return jacobi.alpha == other.jacobi.alpha && jacobi.beta == other.jacobi.beta;
        case BasisFamily::Gegenbauer: return lambda == other.lambda;
        default: return true;
    }
}

}  // namespace singspec
