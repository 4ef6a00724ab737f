#include "singspec/expand.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "singspec/asymp.hpp"

namespace singspec {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884L;

void merge_weight_factor(SingularFunction& h, Site site, double exponent) {
    if (exponent == 0.0) return;
    for (auto& fac : h.factors) {
        if (fac.site == site) {
            fac.exponent += exponent;
            return;
        }
    }
    SingularFactor fac;
    fac.site = site;
    fac.exponent = exponent;
    h.factors.push_back(fac);
}

void check_l2w(const SingularFunction& f, const JacobiParams& p) {
    double ga = 0.0, de = 0.0;
    for (const auto& fac : f.factors) {
        switch (fac.site) {
            case Site::RightEndpoint: ga = fac.exponent; break;
            case Site::LeftEndpoint: de = fac.exponent; break;
            case Site::Interior:
                if (!(fac.exponent > -0.5))
                    throw NotInL2w("interior exponent must satisfy s > -1/2");
                break;
        }
    }
    double lim = std::min(std::min(p.alpha + ga, p.beta + de),
                          std::min(p.alpha + 2.0 * ga, p.beta + 2.0 * de));
    if (!(lim > -1.0))
        throw NotInL2w("weighted square-integrability requires "
                       "min{alpha+gamma, beta+delta, alpha+2gamma, beta+2delta} > -1");
}

std::vector<double> basis_norms(const Basis& basis, int upto) {
    std::vector<double> h(upto + 1);
    switch (basis.family) {
        case BasisFamily::Jacobi:
        case BasisFamily::Legendre: {
            JacobiParams eff = basis.effective_jacobi();
            for (int n = 0; n <= upto; ++n) h[n] = jacobi_norm(n, eff);
            break;
        }
        case BasisFamily::Gegenbauer:
            for (int n = 0; n <= upto; ++n) h[n] = gegenbauer_norm(n, basis.lambda);
            break;
        case BasisFamily::Chebyshev:
            for (int n = 0; n <= upto; ++n) h[n] = (n == 0) ? kPi : 0.5 * kPi;
            break;
    }
    return h;
}

CoefficientSeries jacobi_like_coeffs(const SingularFunction& f, const JacobiParams& p, int N,
                                     double tol, const Basis& tag) {
    f.validate();
    if (N < 0 || N > 20000) throw SizeError("expansion order must be in [0, 20000]");
    if (!(tol >= 1e-14)) throw DomainError("tolerance must be at least 1e-14");
    check_l2w(f, p);

    SingularFunction h = f;
    merge_weight_factor(h, Site::RightEndpoint, p.alpha);
    merge_weight_factor(h, Site::LeftEndpoint, p.beta);

    std::vector<double> sigma(N + 1), tol_n(N + 1);
    for (int n = 0; n <= N; ++n) {
        sigma[n] = jacobi_norm(n, p);
        tol_n[n] = tol * sigma[n];
    }
    detail::BatchedResult batch =
        detail::batched_kernel_integrals(h, detail::KernelFamily::Jacobi, p, N, tol_n);

    CoefficientSeries out;
    out.basis = tag;
    out.values.resize(N + 1);
    out.err_ests.resize(N + 1);
    for (int n = 0; n <= N; ++n) {
        out.values[n] = batch.values[n] / sigma[n];
        out.err_ests[n] = batch.err_ests[n] / sigma[n];
    }
    out.has_source = true;
    out.source = f;
    return out;
}

// Multiplier turning a_n(lambda-1/2, lambda-1/2) into a_n(lambda).
double gegenbauer_conversion_factor(int n, double lambda) {
    int s1 = 1, s2 = 1, s3 = 1, s4 = 1;
    double ln = detail::ln_abs_gamma(2.0 * lambda, &s1) +
                detail::ln_abs_gamma(n + lambda + 0.5, &s2) -
                detail::ln_abs_gamma(lambda + 0.5, &s3) -
                detail::ln_abs_gamma(n + 2.0 * lambda, &s4);
    return s1 * s2 * s3 * s4 * std::exp(ln);
}

double chebyshev_conversion_factor(int n) {
    return std::exp(ln_gamma(n + 0.5) - ln_gamma(0.5) - ln_gamma(n + 1.0));
}

}  // namespace

CoefficientSeries jacobi_coeffs(const SingularFunction& f, const JacobiParams& p, int N,
                                double tol) {
    return jacobi_like_coeffs(f, p, N, tol, Basis::make_jacobi(p));
}

CoefficientSeries legendre_coeffs(const SingularFunction& f, int N, double tol) {
    return jacobi_like_coeffs(f, JacobiParams(0.0, 0.0), N, tol, Basis::make_legendre());
}

CoefficientSeries gegenbauer_coeffs(const SingularFunction& f, double lambda, int N, double tol) {
    Basis tag = Basis::make_gegenbauer(lambda);  // validates lambda
    JacobiParams eff = tag.effective_jacobi();
    CoefficientSeries jac = jacobi_like_coeffs(f, eff, N, tol, Basis::make_jacobi(eff));
    CoefficientSeries out = convert_jacobi_to_gegenbauer(jac, lambda);
    out.has_source = true;
    out.source = f;
    return out;
}

CoefficientSeries chebyshev_coeffs(const SingularFunction& f, int N, double tol) {
    f.validate();
    if (N < 0 || N > 20000) throw SizeError("expansion order must be in [0, 20000]");
    if (!(tol >= 1e-14)) throw DomainError("tolerance must be at least 1e-14");
    JacobiParams eff(-0.5, -0.5);
    check_l2w(f, eff);

    SingularFunction h = f;
    merge_weight_factor(h, Site::RightEndpoint, -0.5);
    merge_weight_factor(h, Site::LeftEndpoint, -0.5);

    std::vector<double> hn(N + 1), tol_n(N + 1);
    for (int n = 0; n <= N; ++n) {
        hn[n] = (n == 0) ? kPi : 0.5 * kPi;
        tol_n[n] = tol * hn[n];
    }
    detail::BatchedResult batch =
        detail::batched_kernel_integrals(h, detail::KernelFamily::Chebyshev, eff, N, tol_n);

    CoefficientSeries out;
    out.basis = Basis::make_chebyshev();
    out.values.resize(N + 1);
    out.err_ests.resize(N + 1);
    for (int n = 0; n <= N; ++n) {
        out.values[n] = batch.values[n] / hn[n];
        out.err_ests[n] = batch.err_ests[n] / hn[n];
    }
    out.has_source = true;
    out.source = f;
    return out;
}

CoefficientSeries expand_coeffs(const SingularFunction& f, const Basis& basis, int N, double tol) {
    switch (basis.family) {
        case BasisFamily::Jacobi: return jacobi_coeffs(f, basis.jacobi, N, tol);
        case BasisFamily::Gegenbauer: return gegenbauer_coeffs(f, basis.lambda, N, tol);
        case BasisFamily::Legendre: return legendre_coeffs(f, N, tol);
        case BasisFamily::Chebyshev: return chebyshev_coeffs(f, N, tol);
    }
    throw DomainError("unknown basis family");
}

CoefficientSeries convert_jacobi_to_gegenbauer(const CoefficientSeries& s, double lambda) {
    Basis tag = Basis::make_gegenbauer(lambda);
    if (s.basis.family != BasisFamily::Jacobi || s.basis.jacobi.alpha != lambda - 0.5 ||
        s.basis.jacobi.beta != lambda - 0.5)
        throw BasisMismatch("input must be a Jacobi series with alpha = beta = lambda - 1/2");
    CoefficientSeries out = s;
    out.basis = tag;
    for (std::size_t n = 0; n < out.values.size(); ++n) {
        double c = gegenbauer_conversion_factor(static_cast<int>(n), lambda);
        out.values[n] = s.values[n] * c;
        out.err_ests[n] = s.err_ests[n] * std::fabs(c);
    }
    return out;
}

CoefficientSeries convert_jacobi_to_chebyshev(const CoefficientSeries& s) {
    if (s.basis.family != BasisFamily::Jacobi || s.basis.jacobi.alpha != -0.5 ||
        s.basis.jacobi.beta != -0.5)
        throw BasisMismatch("input must be a Jacobi series with alpha = beta = -1/2");
    CoefficientSeries out = s;
    out.basis = Basis::make_chebyshev();
    for (std::size_t n = 0; n < out.values.size(); ++n) {
        double c = chebyshev_conversion_factor(static_cast<int>(n));
        out.values[n] = s.values[n] * c;
        out.err_ests[n] = s.err_ests[n] * c;
    }
    return out;
}

CoefficientSeries derivative_coeffs(const CoefficientSeries& s, int q) {
    if (q < 1) throw DomainError("derivative order must be at least 1");
    if (s.basis.family != BasisFamily::Jacobi && s.basis.family != BasisFamily::Legendre)
        throw BasisMismatch("derivative series requires a Jacobi basis");
    JacobiParams eff = s.basis.effective_jacobi();
    int outlen = s.order() - q + 1;
    if (outlen <= 0) throw LengthError("series too short for requested derivative order");

    double sab = eff.alpha + eff.beta;
    CoefficientSeries out;
    out.basis = Basis::make_jacobi(JacobiParams(eff.alpha + q, eff.beta + q));
    out.values.resize(outlen);
    out.err_ests.resize(outlen);
    const double ln2 = 0.6931471805599453094172321214581766;
    for (int n = 0; n < outlen; ++n) {
        double factor =
            std::exp(ln_gamma(n + 2.0 * q + sab + 1.0) - ln_gamma(n + q + sab + 1.0) - q * ln2);
        out.values[n] = s.values[n + q] * factor;
        out.err_ests[n] = s.err_ests[n + q] * factor;
    }
    return out;
}

namespace {

struct TailSums {
    double stored = 0.0;
    double unstored = 0.0;
};

// stored = sum_{n=N+1}^{Ns} a_n^2 h_n; unstored extrapolates the mass beyond
// Ns from an envelope fit of |a_n| over the last 40% of the series.
TailSums tail_sums(const std::vector<double>& values, int N, const std::vector<double>& h) {
    int Ns = static_cast<int>(values.size()) - 1;
    TailSums out;
    double comp = 0.0;
    for (int n = N + 1; n <= Ns; ++n) {
        double term = values[n] * values[n] * h[n];
        double y = term - comp;
        double t = out.stored + y;
        comp = (t - out.stored) - y;
        out.stored = t;
    }
    if (Ns < 20) return out;

    double amax_all = 0.0;
    for (double v : values) amax_all = std::max(amax_all, std::fabs(v));
    int lo = std::max(10, static_cast<int>(std::ceil(0.6 * Ns)));
    double amax_win = 0.0;
    for (int n = lo; n <= Ns; ++n) amax_win = std::max(amax_win, std::fabs(values[n]));
    if (amax_win < 1e-300 || amax_win < 1e-13 * amax_all) return out;  // finite expansion

    std::vector<std::pair<double, double>> pts;
    for (int n = lo; n <= Ns; ++n) {
        double m = std::fabs(values[n]);
        if (m > 0.0) pts.emplace_back(static_cast<double>(n), m);
    }
    std::vector<std::pair<double, double>> env = envelope_maxima(pts);
    if (static_cast<int>(env.size()) < 8) env = pts;
    DecayFit fit = fit_decay(env, 0, lo, Ns);

    // Norm growth exponent d: h(n) ~ h(Ns) (n/Ns)^d, measured empirically.
    int nmid = std::max(1, static_cast<int>(std::lround(0.7 * Ns)));
    double d = std::log(h[Ns] / h[nmid]) / std::log(static_cast<double>(Ns) / nmid);
    double p = fit.exponent;
    double denom = -2.0 * p - d - 1.0;
    if (!(denom > 0.0))
        throw TailDominates("extrapolated tail beyond the stored series does not converge");
    out.unstored = fit.amplitude * fit.amplitude * h[Ns] * std::pow(Ns, 2.0 * p + 1.0) / denom;
    return out;
}

void check_tail_guard(const TailSums& t) {
    if (t.unstored > 0.1 * t.stored)
        throw TailDominates("extrapolated unstored tail exceeds 10% of the stored tail");
}

}  // namespace

double l2w_projection_error(const CoefficientSeries& s, int N) {
    if (N < 0 || N > s.order()) throw DomainError("truncation order exceeds series length");
    std::vector<double> h = basis_norms(s.basis, s.order());
    TailSums t = tail_sums(s.values, N, h);
    check_tail_guard(t);
    return std::sqrt(t.stored + t.unstored);
}

double sobolev_projection_error(const CoefficientSeries& s, int N, int m) {
    if (m < 0) throw DomainError("Sobolev order must be non-negative");
    if (s.basis.family != BasisFamily::Jacobi && s.basis.family != BasisFamily::Legendre)
        throw BasisMismatch("Sobolev projection error requires a Jacobi basis");
    if (m == 0) return l2w_projection_error(s, N);
    if (N < 0 || N > s.order() - m)
        throw DomainError("truncation order exceeds stored derivative length");

    JacobiParams eff = s.basis.effective_jacobi();
    if (s.has_source) {
        for (const auto& fac : s.source.factors) {
            switch (fac.site) {
                case Site::RightEndpoint:
                    if (!(eff.alpha + 2.0 * fac.exponent - m > -1.0))
                        throw NotInSobolev("requires alpha + 2 gamma - m > -1");
                    break;
                case Site::LeftEndpoint:
                    if (!(eff.beta + 2.0 * fac.exponent - m > -1.0))
                        throw NotInSobolev("requires beta + 2 delta - m > -1");
                    break;
                case Site::Interior:
                    if (!(fac.exponent > m - 0.5)) throw NotInSobolev("requires s > m - 1/2");
                    break;
            }
        }
    }

    double stored = 0.0, unstored = 0.0;
    for (int q = 0; q <= m; ++q) {
        const std::vector<double>* vals;
        CoefficientSeries dq;
        JacobiParams pq(eff.alpha + q, eff.beta + q);
        if (q == 0) {
            vals = &s.values;
        } else {
            dq = derivative_coeffs(s, q);
            vals = &dq.values;
        }
        int upto = static_cast<int>(vals->size()) - 1;
        std::vector<double> h = basis_norms(Basis::make_jacobi(pq), upto);
        TailSums t = tail_sums(*vals, N, h);
        stored += t.stored;
        unstored += t.unstored;
    }
    TailSums total{stored, unstored};
    check_tail_guard(total);
    return std::sqrt(stored + unstored);
}

double evaluate_projection(const CoefficientSeries& s, int N, double x) {
    if (N < 0 || N > s.order()) throw DomainError("partial-sum order exceeds series length");
    const std::vector<double>& a = s.values;

    if (s.basis.family == BasisFamily::Chebyshev) {
        double b1 = 0.0, b2 = 0.0;
        for (int k = N; k >= 1; --k) {
            double bk = a[k] + 2.0 * x * b1 - b2;
            b2 = b1;
            b1 = bk;
        }
        return a[0] + x * b1 - b2;
    }

    // phi_{k+1} = (A_k x + B_k) phi_k - C_k phi_{k-1}
    auto abc = [&s](int k, double& A, double& B, double& C) {
        if (s.basis.family == BasisFamily::Gegenbauer) {
            double lam = s.basis.lambda;
            A = 2.0 * (k + lam) / (k + 1.0);
            B = 0.0;
            C = (k + 2.0 * lam - 1.0) / (k + 1.0);
            return;
        }
        JacobiParams eff = s.basis.effective_jacobi();
        double al = eff.alpha, be = eff.beta;
        if (k == 0) {
            A = 0.5 * (al + be + 2.0);
            B = 0.5 * (al - be);
            C = 0.0;
            return;
        }
        double kk = k;
        double c1 = 2.0 * (kk + 1.0) * (kk + al + be + 1.0) * (2.0 * kk + al + be);
        double c2 = (2.0 * kk + al + be + 1.0) * (al * al - be * be);
        double c3 = (2.0 * kk + al + be) * (2.0 * kk + al + be + 1.0) * (2.0 * kk + al + be + 2.0);
        double c4 = 2.0 * (kk + al) * (kk + be) * (2.0 * kk + al + be + 2.0);
        A = c3 / c1;
        B = c2 / c1;
        C = c4 / c1;
    };

    double b1 = 0.0, b2 = 0.0;
    for (int k = N; k >= 0; --k) {
        double A, B, C, Cnext, Anext, Bnext;
        abc(k, A, B, C);
        abc(k + 1, Anext, Bnext, Cnext);
        double bk = a[k] + (A * x + B) * b1 - Cnext * b2;
        b2 = b1;
        b1 = bk;
    }
    return b1;
}

}  // namespace singspec
