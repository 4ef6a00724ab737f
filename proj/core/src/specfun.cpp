#include "singspec/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace singspec {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kLn2 = 0.693147180559945309417232121458176568;
constexpr double kHalfLn2Pi = 0.918938533204672741780329736405617639;  // ln(2*pi)/2

// Stirling series for ln Gamma(y), y >= 10: terms B_{2k}/(2k(2k-1) y^{2k-1}).
double stirling_ln_gamma(double y) {
    static const double c[8] = {
        1.0 / 12.0,      -1.0 / 360.0,      1.0 / 1260.0,   -1.0 / 1680.0,
        1.0 / 1188.0,    -691.0 / 360360.0, 1.0 / 156.0,    -3617.0 / 122400.0,
    };
    const double inv = 1.0 / y;
    const double inv2 = inv * inv;
    double s = 0.0;
    double t = inv;
    for (int k = 0; k < 8; ++k) {
        s += c[k] * t;
        t *= inv2;
    }
    return (y - 0.5) * std::log(y) - y + kHalfLn2Pi + s;
}

}  // namespace

double ln_gamma(double x) {
    if (!(x > 0.0))
        throw DomainError("ln_gamma: require x > 0");
    if (x >= 10.0)
        return stirling_ln_gamma(x);
    // Shift up to y >= 10 by ln Gamma(x) = ln Gamma(y) - ln(x (x+1) ... (y-1)).
    double prod = 1.0;
    double y = x;
    while (y < 10.0) {
        prod *= y;
        y += 1.0;
    }
    return stirling_ln_gamma(y) - std::log(prod);
}

namespace detail {

double ln_abs_gamma(double x, int* sign) {
    if (x > 0.0) {
        *sign = 1;
        return ln_gamma(x);
    }
    if (!(x > -1.0) || x == 0.0)
        throw DomainError("ln_abs_gamma: argument must be > -1 and nonzero");
    // Reflection on (-1, 0): Gamma(x) Gamma(1-x) = pi / sin(pi x), Gamma < 0 here.
    *sign = -1;
    return std::log(kPi) - std::log(std::abs(std::sin(kPi * x))) - ln_gamma(1.0 - x);
}

void jacobi_p_all(int nmax, double a, double b, double x, double* out) {
    out[0] = 1.0;
    if (nmax == 0) return;
    out[1] = 0.5 * ((a + b + 2.0) * x + (a - b));
    for (int k = 1; k < nmax; ++k) {
        const double c1 = 2.0 * (k + 1.0) * (k + a + b + 1.0) * (2.0 * k + a + b);
        const double c2 = (2.0 * k + a + b + 1.0) * (a * a - b * b);
        const double c3 = (2.0 * k + a + b) * (2.0 * k + a + b + 1.0) * (2.0 * k + a + b + 2.0);
        const double c4 = 2.0 * (k + a) * (k + b) * (2.0 * k + a + b + 2.0);
        out[k + 1] = ((c2 + c3 * x) * out[k] - c4 * out[k - 1]) / c1;
    }
}

void chebyshev_t_all(int nmax, double x, double* out) {
    out[0] = 1.0;
    if (nmax == 0) return;
    out[1] = x;
    for (int k = 1; k < nmax; ++k)
        out[k + 1] = 2.0 * x * out[k] - out[k - 1];
}

double gegenbauer_jacobi_factor(int n, double lambda) {
    int s1 = 1, s2 = 1;
    const double num = ln_gamma(lambda + 0.5) + ln_abs_gamma(n + 2.0 * lambda, &s1);
    const double den = ln_abs_gamma(2.0 * lambda, &s2) + ln_gamma(n + lambda + 0.5);
    return s1 * s2 * std::exp(num - den);
}

}  // namespace detail

double jacobi_p(int n, const JacobiParams& p, double x) {
    if (n < 0)
        throw DomainError("jacobi_p: require n >= 0");
    const double a = p.alpha, b = p.beta;
    if (n == 0) return 1.0;
    double p0 = 1.0;
    double p1 = 0.5 * ((a + b + 2.0) * x + (a - b));
    for (int k = 1; k < n; ++k) {
        const double c1 = 2.0 * (k + 1.0) * (k + a + b + 1.0) * (2.0 * k + a + b);
        const double c2 = (2.0 * k + a + b + 1.0) * (a * a - b * b);
        const double c3 = (2.0 * k + a + b) * (2.0 * k + a + b + 1.0) * (2.0 * k + a + b + 2.0);
        const double c4 = 2.0 * (k + a) * (k + b) * (2.0 * k + a + b + 2.0);
        const double p2 = ((c2 + c3 * x) * p1 - c4 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double jacobi_norm(int n, const JacobiParams& p) {
    if (n < 0)
        throw DomainError("jacobi_norm: require n >= 0");
    const double a = p.alpha, b = p.beta;
    if (n == 0) {
        // Beta-function form; the generic formula divides by Gamma(a+b+1),
        // which has a pole at a+b = -1.
        return std::exp((a + b + 1.0) * kLn2 + ln_gamma(a + 1.0) + ln_gamma(b + 1.0) -
                        ln_gamma(a + b + 2.0));
    }
    const double ln = (a + b + 1.0) * kLn2 + ln_gamma(n + a + 1.0) + ln_gamma(n + b + 1.0) -
                      ln_gamma(n + 1.0) - std::log(2.0 * n + a + b + 1.0) -
                      ln_gamma(n + a + b + 1.0);
    return std::exp(ln);
}

static void check_gegenbauer_lambda(double lambda) {
    if (!(lambda > -0.5) || lambda == 0.0)
        throw DomainError("gegenbauer: require lambda > -1/2 and lambda != 0");
}

double gegenbauer_c(int n, double lambda, double x) {
    check_gegenbauer_lambda(lambda);
    if (n < 0)
        throw DomainError("gegenbauer_c: require n >= 0");
    const JacobiParams p(lambda - 0.5, lambda - 0.5);
    return detail::gegenbauer_jacobi_factor(n, lambda) * jacobi_p(n, p, x);
}

double gegenbauer_norm(int n, double lambda) {
    check_gegenbauer_lambda(lambda);
    if (n < 0)
        throw DomainError("gegenbauer_norm: require n >= 0");
    int s1 = 1, s2 = 1;
    const double lg_lam = detail::ln_abs_gamma(lambda, &s2);  // squared below, sign irrelevant
    const double lg_n2l = detail::ln_abs_gamma(n + 2.0 * lambda, &s1);
    const double nl = n + lambda;
    const double ln = (1.0 - 2.0 * lambda) * kLn2 + std::log(kPi) - 2.0 * lg_lam + lg_n2l -
                      ln_gamma(n + 1.0) - std::log(std::abs(nl));
    return s1 * (nl < 0.0 ? -1.0 : 1.0) * std::exp(ln);
}

double chebyshev_t(int n, double x) {
    if (n < 0)
        throw DomainError("chebyshev_t: require n >= 0");
    const double xc = std::clamp(x, -1.0, 1.0);
    return std::cos(n * std::acos(xc));
}

// ---------------------------------------------------------------------------
// Bessel J_nu
// ---------------------------------------------------------------------------

namespace {

// Minimal double-double arithmetic for the compensated power series.
struct dd {
    double hi, lo;
};

inline dd two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline dd quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd dd_add(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    s.lo += a.lo + b.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline dd dd_mul(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline dd dd_mul_d(dd a, double b) {
    dd p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline dd dd_div(dd a, dd b) {
    const double q1 = a.hi / b.hi;
    const dd r = dd_add(a, dd_mul_d(b, -q1));
    const double q2 = (r.hi + r.lo) / b.hi;
    return quick_two_sum(q1, q2);
}

// Power series sum_k (-1)^k (x/2)^{nu+2k} / (k! Gamma(nu+k+1)) with the term
// recurrence carried in double-double so alternating-series cancellation does
// not eat the absolute-error budget.  Fails (ok=false) when the largest term
// exceeds 1e21, i.e. when even double-double roundoff would exceed ~1e-11.
double bessel_series(double nu, double x, bool* ok) {
    const double ln_t0 = nu * std::log(0.5 * x) - ln_gamma(nu + 1.0);
    if (ln_t0 < -745.0) {  // result underflows to 0 at double precision
        *ok = true;
        return 0.0;
    }
    const double t0 = std::exp(ln_t0);
    dd term = {t0, 0.0};
    dd sum = term;
    dd x24 = two_prod(x, x);
    x24.hi *= 0.25;
    x24.lo *= 0.25;
    double max_term = std::abs(t0);
    for (int k = 0; k < 700; ++k) {
        const dd num = dd_mul(term, x24);
        const dd den = dd_mul_d(two_sum(nu, k + 1.0), k + 1.0);
        dd q = dd_div(num, den);
        term = {-q.hi, -q.lo};
        sum = dd_add(sum, term);
        max_term = std::max(max_term, std::abs(term.hi));
        if (std::abs(term.hi) < 1e-40 + 1e-34 * std::abs(sum.hi)) break;
    }
    *ok = max_term <= 1e21;
    return sum.hi + sum.lo;
}

// 12-term Hankel asymptotic expansion with a self-estimate of the truncation
// error from the next two terms.
double bessel_hankel(double nu, double x, double* err_est) {
    const double mu4 = 4.0 * nu * nu;
    double a[14];
    a[0] = 1.0;
    for (int k = 1; k <= 13; ++k)
        a[k] = a[k - 1] * (mu4 - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k);
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double P = 0.0, Q = 0.0, pw = 1.0;
    for (int m = 0; m <= 5; ++m) {
        const double sgn = (m % 2) ? -1.0 : 1.0;
        P += sgn * a[2 * m] * pw;
        Q += sgn * a[2 * m + 1] * pw * inv;
        pw *= inv2;
    }
    const double amp = std::sqrt(2.0 / (kPi * x));
    const double chi = x - nu * (0.5 * kPi) - 0.25 * kPi;
    *err_est = amp * (std::abs(a[12]) * std::pow(inv, 12) + std::abs(a[13]) * std::pow(inv, 13));
    return amp * (P * std::cos(chi) - Q * std::sin(chi));
}

// Miller backward recurrence for the remaining (x, nu) region: unnormalized
// downward pass with rescaling, then the normalization sum
// sum_k c_k jhat_{nu+2k} = (x/2)^nu, c_0 = Gamma(nu+1),
// c_k = (nu+2k) Gamma(nu+k) / k!, combined in log space with tracked signs.
double bessel_miller(double nu, double x) {
    const double start = std::max(x + 14.0 * std::cbrt(0.5 * x + 1.0) + 25.0, nu + 25.0);
    int K = static_cast<int>(std::ceil(start - nu));
    if (K % 2) ++K;

    const double rescale = 1e250;
    const double ln_rescale = std::log(rescale);
    std::vector<double> j(K + 2, 0.0);
    std::vector<int> epoch(K + 2, 0);
    int ep = 0;
    double jp1 = 0.0;   // jhat_{nu+m+1}
    double jc = 1e-30;  // jhat_{nu+m}
    j[K + 1] = jp1;
    j[K] = jc;
    for (int m = K; m >= 1; --m) {
        double jm1 = (2.0 * (nu + m) / x) * jc - jp1;
        if (std::abs(jm1) > rescale) {
            jm1 /= rescale;
            jc /= rescale;
            ++ep;
        }
        j[m - 1] = jm1;
        epoch[m - 1] = ep;
        jp1 = jc;
        jc = jm1;
    }

    // Normalization sum in log space: ln c_k + ln |jhat_{nu+2k}|.
    double max_lt = -1e300;
    std::vector<double> lts(K / 2 + 1);
    std::vector<double> sgns(K / 2 + 1);
    for (int k = 0; k <= K / 2; ++k) {
        const double v = j[2 * k];
        if (v == 0.0) {
            lts[k] = -1e300;
            sgns[k] = 0.0;
            continue;
        }
        const double ln_c = (k == 0) ? ln_gamma(nu + 1.0)
                                     : std::log(nu + 2.0 * k) + ln_gamma(nu + k) -
                                           ln_gamma(k + 1.0);
        lts[k] = ln_c + std::log(std::abs(v)) + epoch[2 * k] * ln_rescale;
        sgns[k] = (v > 0.0) ? 1.0 : -1.0;
        max_lt = std::max(max_lt, lts[k]);
    }
    double s_scaled = 0.0;
    for (int k = 0; k <= K / 2; ++k) {
        if (sgns[k] != 0.0) s_scaled += sgns[k] * std::exp(lts[k] - max_lt);
    }
    const double ln_abs_s = max_lt + std::log(std::abs(s_scaled));
    const double sign_s = (s_scaled >= 0.0) ? 1.0 : -1.0;

    const double v0 = j[0];
    if (v0 == 0.0) return 0.0;
    const double ln_j0 = std::log(std::abs(v0)) + epoch[0] * ln_rescale;
    const double sign_j0 = (v0 > 0.0) ? 1.0 : -1.0;
    const double ln_res = ln_j0 - ln_abs_s + nu * std::log(0.5 * x);
    return sign_j0 * sign_s * std::exp(ln_res);
}

}  // namespace

double bessel_j(const BesselOrder& order, double x) {
    const double nu = order.nu;
    if (!(x >= 0.0))
        throw DomainError("bessel_j: require x >= 0");
    if (x == 0.0)
        return (nu == 0.0) ? 1.0 : 0.0;
    // Documented series gate: power series up to max(20, 1.5 nu), provided the
    // compensated accumulation keeps the absolute error within budget.
    if (x <= std::max(20.0, 1.5 * nu)) {
        bool ok = false;
        const double v = bessel_series(nu, x, &ok);
        if (ok) return v;
    }
    double hankel_err = 0.0;
    const double vh = bessel_hankel(nu, x, &hankel_err);
    if (hankel_err <= 5e-11) return vh;
    return bessel_miller(nu, x);
}

double hilb_main_term(int n, const JacobiParams& p, double theta) {
    if (n < 1)
        throw DomainError("hilb_main_term: require n >= 1");
    if (!(theta > 0.0) || !(theta < kPi))
        throw DomainError("hilb_main_term: require theta in (0, pi)");
    const double a = p.alpha, b = p.beta;
    const double nt = n + 0.5 * (a + b + 1.0);
    const double ln_pref =
        ln_gamma(n + a + 1.0) - ln_gamma(n + 1.0) - 0.5 * kLn2 - a * std::log(nt);
    const double ln_w = -0.5 * std::log(theta) +
                        (a + 0.5) * std::log(std::sin(0.5 * theta)) +
                        (b + 0.5) * std::log(std::cos(0.5 * theta));
    return std::exp(ln_pref - ln_w) * bessel_j(BesselOrder(a), nt * theta);
}

}  // namespace singspec
