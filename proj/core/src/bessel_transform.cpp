#include <cmath>
#include <limits>
#include <vector>

#include "panel_internal.hpp"
#include "singspec/quad.hpp"

namespace singspec {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884L;

double int_pow(double base, int p) {
    double out = 1.0;
    for (int i = 0; i < p; ++i) out *= base;
    return out;
}

}  // namespace

IntegralResult bessel_transform(const OscIntegralSpec& spec, double omega) {
    if (!(spec.b > 0.0) || !std::isfinite(spec.b)) throw DomainError("b must be positive");
    if (!(spec.t >= 0.0 && spec.t <= spec.b))
        throw DomainError("upper limit t must lie in [0, b]");
    if (spec.mu < 0) throw DomainError("log power must be non-negative");
    if (spec.log_site == LogSite::None && spec.mu != 0)
        throw DomainError("log power requires a log site");
    if (!(spec.alpha + spec.nu.nu > -1.0)) throw DomainError("alpha + nu must exceed -1");
    if (!(spec.beta > -1.0)) throw DomainError("beta must exceed -1");
    if (!(omega >= 1.0) || !std::isfinite(omega)) throw DomainError("omega must be at least 1");
    if (spec.t == 0.0) return {0.0, 0.0};

    const QuadratureRule& gl = detail::cached_gauss_legendre(12);
    const double cap = kPi / (2.0 * omega);  // panel length cap: quarter period

    // hint.site == LeftEndpoint marks panels graded toward x = 0 (hint.t is
    // the exact x); RightEndpoint marks panels graded toward x = b (hint.t is
    // the exact b - x).
    detail::PanelIntegrand g = [&spec, omega](double x, const SingularFunction::Hint& h) {
        double dist0 = (h.active && h.site == Site::LeftEndpoint) ? h.t : x;
        double distb = (h.active && h.site == Site::RightEndpoint) ? h.t : spec.b - x;
        double v = (spec.alpha == 0.0) ? 1.0 : std::pow(dist0, spec.alpha);
        if (spec.beta != 0.0) v *= std::pow(distb, spec.beta);
        if (spec.mu > 0)
            v *= int_pow(std::log(spec.log_site == LogSite::AtZero ? dist0 : distb), spec.mu);
        if (spec.psi) v *= spec.psi(x);
        return v * bessel_j(spec.nu, omega * x);
    };

    // The x = 0 end is always graded (J_nu and x^alpha make the integrand
    // non-polynomial there).  The x = b end needs grading only when t reaches
    // b and the (b-x) factor is genuinely singular or carries a log.
    bool right_graded =
        (spec.t == spec.b) && (spec.beta < 0.0 || spec.beta != std::floor(spec.beta) ||
                               (spec.log_site == LogSite::AtB && spec.mu > 0));

    std::vector<detail::GradedRun> runs;
    {
        detail::GradedRun r0;
        r0.anchor = 0.0;
        r0.dirsign = 1.0;
        r0.T = right_graded ? 0.5 * spec.t : spec.t;
        r0.hint.active = true;
        r0.hint.site = Site::LeftEndpoint;
        runs.push_back(r0);
        if (right_graded) {
            detail::GradedRun rb;
            rb.anchor = spec.b;
            rb.dirsign = -1.0;
            rb.T = 0.5 * spec.t;
            rb.hint.active = true;
            rb.hint.site = Site::RightEndpoint;
            runs.push_back(rb);
        }
    }
    const double thr = 1e-11 / 20.0;
    for (auto& r : runs) r.half_depth = detail::probe_half_depth(g, r, thr, 0.0, cap, gl);

    double value = 0.0, err = std::numeric_limits<double>::infinity();
    for (int round = 0; round < 4; ++round) {
        detail::MeshSums s = detail::evaluate_run_mesh(g, runs, 0.0, cap, gl);
        value = s.full;
        err = std::fabs(s.full - s.half);
        double target = 1e-11 + 1e-8 * std::fabs(value);
        if (err <= target) return {value, err};
        if (!detail::escalate_runs(runs)) break;
    }
    throw NoConvergence("oscillatory Bessel integral failed to reach tolerance", value, err);
}

double bessel_tail_estimate(double alpha, double nu, double X) {
    if (!(X > 0.0) || !std::isfinite(X)) throw DomainError("X must be positive");
    double chi = X - 0.5 * nu * kPi - 0.25 * kPi;
    double lead = (alpha - 0.5) + (4.0 * nu * nu - 1.0) / 8.0;
    return -std::sqrt(2.0 / kPi) * std::pow(X, alpha - 0.5) *
           (std::sin(chi) + lead * std::cos(chi) / X);
}

}  // namespace singspec
