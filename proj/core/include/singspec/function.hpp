#pragma once

#include <functional>
#include <string>
#include <vector>

#include "singspec/errors.hpp"
#include "singspec/specfun.hpp"

namespace singspec {

enum class Site { RightEndpoint, LeftEndpoint, Interior };

// One algebraic-logarithmic factor: dist^exponent * log^log_power(dist) where
// dist is (1-x), (1+x) or |x - z0| depending on the site.
struct SingularFactor {
    Site site = Site::RightEndpoint;
    double z0 = 0.0;        // used when site == Interior
    double exponent = 0.0;  // gamma / delta / s
    int log_power = 0;      // mu >= 0
};

// Structured smooth factor, kept in symbolic form so descriptors round-trip.
struct SmoothTerm {
    enum class Kind { Sin, Cos, Exp, Poly };
    Kind kind = Kind::Sin;
    std::vector<double> poly;  // coefficients, constant first (Kind::Poly only)
    double eval(double x) const;
};

// f(x) = g(x) * prod(factors) * log^{log1mx2_power}(1-x^2), where g is the
// product of the smooth terms and an optional custom closure.
struct SingularFunction {
    std::vector<SingularFactor> factors;
    int log1mx2_power = 0;
    std::vector<SmoothTerm> smooth_terms;
    std::function<double(double)> custom_smooth;  // optional extra smooth factor

    // Checks site uniqueness, z0 in (-1,1), log powers >= 0 and the
    // weight-free integrability floors (endpoint exponents > -1, interior
    // exponents > -1/2).  Basis-dependent admissibility is checked by the
    // expansion routines.
    void validate() const;

    double smooth_eval(double x) const;
    double eval(double x) const;

    // Exact-distance evaluation hint: identifies the singular site a
    // quadrature panel is graded toward, with t > 0 the exact distance from x
    // to it.  Keeps (1 -+ x) and |x - z0| free of cancellation at any depth.
    struct Hint {
        bool active = false;
        Site site = Site::RightEndpoint;
        int interior_index = -1;  // index into factors when site == Interior
        double t = 0.0;
    };
    double eval_hinted(double x, const Hint& hint) const;

    bool has_site(Site s) const;
    int interior_factor_at(double z0) const;  // -1 if none

    static SingularFunction from_smooth(std::function<double(double)> g);
};

enum class BasisFamily { Jacobi, Gegenbauer, Legendre, Chebyshev };

struct Basis {
    BasisFamily family = BasisFamily::Legendre;
    JacobiParams jacobi{0.0, 0.0};  // meaningful for Jacobi
    double lambda = 0.5;            // meaningful for Gegenbauer

    static Basis make_jacobi(const JacobiParams& p);
    static Basis make_gegenbauer(double lambda);  // lambda > -1/2, lambda != 0
    static Basis make_legendre();
    static Basis make_chebyshev();

    // Jacobi parameters of the family's orthogonality weight.
    JacobiParams effective_jacobi() const;
    bool operator==(const Basis& other) const;
};

}  // namespace singspec
