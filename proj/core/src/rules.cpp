#include <cmath>
#include <numbers>
#include <vector>

#include "singspec/quad.hpp"

namespace singspec {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884L;

// Recurrence coefficients of the monic-orthonormal three-term recurrence for
// the Jacobi weight (Gautschi's r_jacobi):
//   p_{k+1} = ((x - a_k) p_k - sqrt(b_k) p_{k-1}) / sqrt(b_{k+1}).
struct JacobiRecurrence {
    std::vector<double> a;  // a_0..a_{n-1}
    std::vector<double> b;  // b_0..b_n; b_0 is the zeroth weight moment
};

JacobiRecurrence jacobi_recurrence(int n, double al, double be) {
    JacobiRecurrence rec;
    rec.a.resize(n);
    rec.b.resize(n + 1);
    double s = al + be;
    rec.b[0] = std::exp((s + 1.0) * std::numbers::ln2 + ln_gamma(al + 1.0) +
                        ln_gamma(be + 1.0) - ln_gamma(s + 2.0));
    rec.a[0] = (be - al) / (s + 2.0);
    if (n >= 1)
        rec.b[1] = 4.0 * (al + 1.0) * (be + 1.0) / ((s + 2.0) * (s + 2.0) * (s + 3.0));
    for (int k = 1; k < n; ++k) {
        double d = 2.0 * k + s;
        rec.a[k] = (be * be - al * al) / (d * (d + 2.0));
    }
    for (int k = 2; k <= n; ++k) {
        double d = 2.0 * k + s;
        rec.b[k] = 4.0 * k * (k + al) * (k + be) * (k + s) / (d * d * (d + 1.0) * (d - 1.0));
    }
    return rec;
}

struct EvalResult {
    double p;       // orthonormal p_n(x)
    double dp;      // d/dx p_n(x)
    double chrsum;  // sum of p_j(x)^2 for j = 0..n-1 (Christoffel denominator)
};

EvalResult eval_orthonormal(const JacobiRecurrence& rec, int n, double x) {
    std::vector<double> sqb(n + 1);
    for (int k = 0; k <= n; ++k) sqb[k] = std::sqrt(rec.b[k]);
    double pm1 = 0.0, dpm1 = 0.0;
    double p = 1.0 / sqb[0], dp = 0.0;
    double chrsum = p * p;
    for (int k = 0; k < n; ++k) {
        double pn = ((x - rec.a[k]) * p - sqb[k] * pm1) / sqb[k + 1];
        double dpn = ((x - rec.a[k]) * dp + p - sqb[k] * dpm1) / sqb[k + 1];
        pm1 = p;
        dpm1 = dp;
        p = pn;
        dp = dpn;
        if (k + 1 < n) chrsum += p * p;
    }
    return {p, dp, chrsum};
}

}  // namespace

QuadratureRule gauss_jacobi(int n, const JacobiParams& prm) {
    if (n < 1 || n > 10000) throw SizeError("quadrature size must be in [1, 10000]");
    const double al = prm.alpha, be = prm.beta;
    JacobiRecurrence rec = jacobi_recurrence(n, al, be);

    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);

    const double ntilde = n + 0.5 * (al + be + 1.0);
    for (int k = 1; k <= n; ++k) {
        // Interior estimate for the k-th zero of P_n (counted from x = 1),
        // exact for the Chebyshev case; refined by Newton in theta, where the
        // roots are nearly uniformly spaced.
        double theta = (k + 0.5 * al - 0.25) * kPi / ntilde;
        theta = std::min(std::max(theta, 1e-8), kPi - 1e-8);
        double x = std::cos(theta);
        EvalResult ev{};
        for (int it = 0; it < 100; ++it) {
            x = std::cos(theta);
            ev = eval_orthonormal(rec, n, x);
            double denom = std::sin(theta) * ev.dp;
            if (denom == 0.0) break;
            double dtheta = ev.p / denom;
            double next = theta + dtheta;
            if (next <= 0.0) next = 0.5 * theta;
            if (next >= kPi) next = 0.5 * (theta + kPi);
            double moved = std::fabs(next - theta);
            theta = next;
            if (moved < 1e-15) {
                x = std::cos(theta);
                ev = eval_orthonormal(rec, n, x);
                break;
            }
        }
        double chrsum = ev.chrsum + ev.p * ev.p;
        rule.nodes[n - k] = x;
        rule.weights[n - k] = 1.0 / chrsum;
    }

    for (int i = 0; i < n; ++i) {
        if (!(rule.weights[i] > 0.0) || !std::isfinite(rule.nodes[i]))
            throw Error("Gauss-Jacobi rule construction failed");
        if (i > 0 && !(rule.nodes[i] > rule.nodes[i - 1]))
            throw Error("Gauss-Jacobi rule nodes out of order");
    }
    return rule;
}

QuadratureRule gauss_legendre(int n) { return gauss_jacobi(n, JacobiParams(0.0, 0.0)); }

}  // namespace singspec
