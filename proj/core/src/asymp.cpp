#include "singspec/asymp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "singspec/errors.hpp"
#include "singspec/parallel.hpp"
#include "singspec/specfun.hpp"

namespace singspec {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884L;

struct Rate {
    double exponent = 0.0;
    int log_power = 0;
    bool super = false;
    bool tie = false;
    std::string source;
};

bool is_nonneg_integer(double x) { return x >= 0.0 && x == std::floor(x); }

// Slowest decay wins: larger exponent, ties broken by larger log power (and
// flagged).  Super-algebraic rates lose to any algebraic rate.
Rate dominate(const Rate& a, const Rate& b) {
    if (a.super && b.super) return a;
    if (a.super) return b;
    if (b.super) return a;
    if (a.exponent != b.exponent) return (a.exponent > b.exponent) ? a : b;
    Rate w = (b.log_power > a.log_power) ? b : a;
    if (a.log_power != b.log_power)
        w.tie = true;
    else {
        w.tie = a.tie || b.tie;
        w.source = std::min(a.source, b.source);  // order-independent pick
    }
    return w;
}

// Exponent offset turning a Jacobi rate at the effective parameters into the
// rate for the requested family (normalization of the family's polynomials).
double decay_shift(const Basis& basis) {
    switch (basis.family) {
        case BasisFamily::Gegenbauer: return 0.5 - basis.lambda;
        case BasisFamily::Chebyshev: return -0.5;
        default: return 0.0;
    }
}

// Offset turning a coefficient-decay exponent into the L2_w projection-error
// exponent (growth of the squared norms sigma_n / hbar_n / h_n).
double projection_shift(const Basis& basis) {
    switch (basis.family) {
        case BasisFamily::Gegenbauer: return basis.lambda - 0.5;
        case BasisFamily::Chebyshev: return 0.5;
        default: return 0.0;
    }
}

bool gegenbauer_like(const Basis& basis) {
    return basis.family == BasisFamily::Gegenbauer || basis.family == BasisFamily::Chebyshev;
}

// a_n rate of a single endpoint singularity (1 -/+ x)^g ln^mu at effective
// Jacobi parameter `ab` (alpha for the right endpoint, beta for the left).
Rate endpoint_rate(double ab, double g, int mu, bool right, bool geg_like) {
    if (!(ab + g > -1.0)) {
        if (geg_like)
            throw HypothesisViolated(right ? "lambda + gamma > -1/2" : "lambda + delta > -1/2");
        throw HypothesisViolated(right ? "alpha + gamma > -1" : "beta + delta > -1");
    }
    Rate r;
    if (is_nonneg_integer(g)) {
        if (mu == 0) {
            r.super = true;
            return r;
        }
        r.exponent = -ab - 2.0 * g - 1.0;
        r.log_power = mu - 1;
        return r;
    }
    r.exponent = -ab - 2.0 * g - 1.0;
    r.log_power = mu;
    return r;
}

// a_n rate of an interior singularity |x - z0|^s ln^mu at effective (a, b).
Rate interior_rate(double a, double b, double s, int mu) {
    if (!(s > -0.5)) throw HypothesisViolated("s > -1/2");
    Rate r;
    if (s == 0.0 && mu == 0) {  // trivial factor
        r.super = true;
        return r;
    }
    if (s > 0.0) {
        if (is_nonneg_integer(s) && std::fmod(s, 2.0) == 0.0 && mu == 0) {
            r.super = true;
            return r;
        }
        r.exponent = -s - 0.5;
        r.log_power = mu;
        return r;
    }
    // -1/2 < s <= 0: envelope of the singular rate and an endpoint-weight rate.
    Rate first{-s - 0.5, mu, false, false, ""};
    Rate second{-std::min(1.0 + a, 1.0 + b), 0, false, false, ""};
    return dominate(first, second);
}

// Per-site rates combined by slowest-decay dominance, in the effective Jacobi
// frame (no family shift applied yet).  Sets per-rate source labels.
Rate combined_decay_rate(const SingularFunction& f, const Basis& basis) {
    f.validate();
    JacobiParams eff = basis.effective_jacobi();
    bool geg_like = gegenbauer_like(basis);

    const SingularFactor* rf = nullptr;
    const SingularFactor* lf = nullptr;
    for (const auto& fac : f.factors) {
        if (fac.site == Site::RightEndpoint) rf = &fac;
        if (fac.site == Site::LeftEndpoint) lf = &fac;
    }
    int mu2 = f.log1mx2_power;

    std::optional<Rate> right, left;
    if (rf || mu2 > 0)
        right = endpoint_rate(eff.alpha, rf ? rf->exponent : 0.0, (rf ? rf->log_power : 0) + mu2,
                              true, geg_like);
    if (lf || mu2 > 0)
        left = endpoint_rate(eff.beta, lf ? lf->exponent : 0.0, (lf ? lf->log_power : 0) + mu2,
                             false, geg_like);

    int live_endpoints = (right && !right->super ? 1 : 0) + (left && !left->super ? 1 : 0);
    std::vector<Rate> pool;
    if (right && !right->super) {
        right->source = geg_like ? "Cor2" : (live_endpoints == 2 ? "Cor1" : "Thm1");
        pool.push_back(*right);
    }
    if (left && !left->super) {
        left->source = geg_like ? "Cor2" : (live_endpoints == 2 ? "Cor1" : "Thm2");
        pool.push_back(*left);
    }
    for (const auto& fac : f.factors) {
        if (fac.site != Site::Interior) continue;
        Rate r = interior_rate(eff.alpha, eff.beta, fac.exponent, fac.log_power);
        if (r.super) continue;
        r.source = geg_like ? "Cor3" : (fac.exponent > 0.0 ? "Thm3" : "Rem3");
        pool.push_back(r);
    }

    if (pool.empty()) {
        Rate r;
        r.super = true;
        r.source = "Rem5";
        return r;
    }
    Rate acc = pool.front();
    for (std::size_t i = 1; i < pool.size(); ++i) acc = dominate(acc, pool[i]);
    return acc;
}

}  // namespace

RatePrediction predict_coeff_decay(const SingularFunction& f, const Basis& basis) {
    Rate r = combined_decay_rate(f, basis);
    RatePrediction out;
    out.kind = RateKind::CoefficientDecay;
    if (r.super) {
        out.super_algebraic = true;
        out.source = r.source;
        return out;
    }
    out.exponent = r.exponent + decay_shift(basis);
    out.log_power = r.log_power;
    out.tie_flagged = r.tie;
    out.source = r.source;
    return out;
}

RatePrediction predict_projection_rate(const SingularFunction& f, const Basis& basis, int m) {
    if (m < 0) throw DomainError("Sobolev order must be non-negative");
    f.validate();
    JacobiParams eff = basis.effective_jacobi();
    bool geg_like = gegenbauer_like(basis);
    if (m >= 1 && basis.family == BasisFamily::Gegenbauer && basis.lambda < 0.0)
        throw HypothesisViolated("lambda >= 0");

    // Membership of f in the weighted space (only singular sites constrain it).
    const SingularFactor* rf = nullptr;
    const SingularFactor* lf = nullptr;
    bool has_interior = false;
    for (const auto& fac : f.factors) {
        if (fac.site == Site::RightEndpoint) rf = &fac;
        if (fac.site == Site::LeftEndpoint) lf = &fac;
        if (fac.site == Site::Interior) has_interior = true;
    }
    int mu2 = f.log1mx2_power;
    if (rf || mu2 > 0) {
        double g = rf ? rf->exponent : 0.0;
        if (!(eff.alpha + g > m - 1.0)) throw HypothesisViolated("alpha + gamma > m - 1");
        if (!(eff.alpha + 2.0 * g > m - 1.0)) throw HypothesisViolated("alpha + 2*gamma > m - 1");
    }
    if (lf || mu2 > 0) {
        double d = lf ? lf->exponent : 0.0;
        if (!(eff.beta + d > m - 1.0)) throw HypothesisViolated("beta + delta > m - 1");
        if (!(eff.beta + 2.0 * d > m - 1.0)) throw HypothesisViolated("beta + 2*delta > m - 1");
    }
    for (const auto& fac : f.factors) {
        if (fac.site != Site::Interior) continue;
        if (!(fac.exponent > m - 0.5)) throw HypothesisViolated("s > m - 1/2");
    }
    if (has_interior && !(std::min(eff.alpha, eff.beta) >= -0.5))
        throw HypothesisViolated("min{alpha, beta} >= -1/2");

    Rate r = combined_decay_rate(f, basis);
    RatePrediction out;
    out.kind = (m == 0) ? RateKind::ProjectionL2 : RateKind::ProjectionSobolev;
    out.sobolev_m = m;
    if (r.super) {
        out.super_algebraic = true;
        out.source = "Rem5";
        return out;
    }
    out.exponent = r.exponent + decay_shift(basis) + projection_shift(basis) + m;
    out.log_power = r.log_power;
    out.tie_flagged = r.tie;
    if (m == 0)
        out.source = geg_like ? "Cor4" : "Thm4";
    else
        out.source = geg_like ? "Cor5" : "Thm5";
    return out;
}

RatePrediction predict_bessel_rate(const OscIntegralSpec& spec) {
    if (!(spec.b > 0.0) || !std::isfinite(spec.b)) throw HypothesisViolated("b > 0");
    if (!(spec.t > 0.0) || !(spec.t <= spec.b)) throw HypothesisViolated("0 < t <= b");
    if (spec.mu < 0) throw HypothesisViolated("mu >= 0");
    if (spec.mu > 0 && spec.log_site == LogSite::None)
        throw HypothesisViolated("mu >= 1 requires a log site");
    if (!(spec.alpha + spec.nu.nu > -1.0)) throw HypothesisViolated("alpha + nu > -1");
    if (!(spec.beta > -1.0)) throw HypothesisViolated("beta > -1");

    bool full = spec.t == spec.b;
    bool at_b = spec.mu > 0 && spec.log_site == LogSite::AtB;
    bool refine = spec.b == 1.0 && spec.mu >= 1;
    double al = spec.alpha, be = spec.beta;
    int mu = spec.mu;

    Rate first, second;
    std::string source;
    if (!at_b) {  // log factor at the origin (or no log at all)
        first = Rate{-al - 1.0, mu, false, false, ""};
        if (full) {
            second = refine ? Rate{-be - mu - 1.5, 0, false, false, ""}
                            : Rate{-be - 1.5, 0, false, false, ""};
            source = "L7";
        } else {
            second = refine ? Rate{-1.5, 0, false, false, ""}
                            : Rate{-std::min(be + 1.5, 1.5), 0, false, false, ""};
            source = (mu == 0) ? "L3" : "L5";
        }
    } else {  // log factor at x = b
        first = refine ? Rate{-al - mu - 1.0, 0, false, false, ""}
                       : Rate{-al - 1.0, 0, false, false, ""};
        if (full) {
            second = Rate{-be - 1.5, mu, false, false, ""};
            source = "L9";
        } else {
            second = Rate{-std::min(be + 1.5, 1.5), mu, false, false, ""};
            source = "L8";
        }
    }

    Rate r = dominate(first, second);
    RatePrediction out;
    out.kind = RateKind::BesselTransform;
    out.exponent = r.exponent;
    out.log_power = r.log_power;
    out.tie_flagged = r.tie;
    out.source = source;
    return out;
}

DecayFit fit_decay(const std::vector<std::pair<double, double>>& samples, int log_power,
                   double window_lo, double window_hi) {
    if (log_power < 0) throw DomainError("log power must be non-negative");
    double lo = std::max(window_lo, 10.0);
    double hi = window_hi;

    std::vector<double> xs, ys;
    int excluded = 0;
    for (const auto& [idx, mag] : samples) {
        if (!(idx >= lo) || !(idx <= hi)) continue;
        if (!std::isfinite(mag) || !(mag >= 1e-300)) {
            ++excluded;
            continue;
        }
        xs.push_back(std::log(idx));
        ys.push_back(std::log(mag) - log_power * std::log(std::log(idx)));
    }
    int count = static_cast<int>(xs.size());
    if (count < 8) throw InsufficientData("fewer than 8 usable samples in the fit window");

    double xbar = 0.0, ybar = 0.0;
    for (int i = 0; i < count; ++i) {
        xbar += xs[i];
        ybar += ys[i];
    }
    xbar /= count;
    ybar /= count;
    double sxx = 0.0, sxy = 0.0;
    for (int i = 0; i < count; ++i) {
        sxx += (xs[i] - xbar) * (xs[i] - xbar);
        sxy += (xs[i] - xbar) * (ys[i] - ybar);
    }
    if (!(sxx > 0.0)) throw InsufficientData("fit window spans a single index");

    double p = sxy / sxx;
    double intercept = ybar - p * xbar;
    double ss = 0.0;
    for (int i = 0; i < count; ++i) {
        double r = ys[i] - (intercept + p * xs[i]);
        ss += r * r;
    }

    DecayFit fit;
    fit.exponent = p;
    fit.amplitude = std::exp(intercept);
    fit.log_power_used = log_power;
    fit.residual_rms = std::sqrt(ss / count);
    fit.window_lo = lo;
    fit.window_hi = hi;
    fit.used_count = count;
    fit.excluded_count = excluded;
    return fit;
}

std::vector<std::pair<double, double>> envelope_maxima(
    const std::vector<std::pair<double, double>>& samples) {
    std::vector<std::pair<double, double>> s = samples;
    std::sort(s.begin(), s.end());
    std::vector<std::pair<double, double>> out;
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        if (s[i].second > s[i - 1].second && s[i].second > s[i + 1].second) out.push_back(s[i]);
    }
    return out;
}

std::vector<HilbRow> hilb_residual_scan(const JacobiParams& p, const std::vector<int>& n_list,
                                        const ThetaGridSpec& grid) {
    const double hi = kPi - 0.3;
    for (int n : n_list) {
        if (n < 1) throw DomainError("polynomial degree must be positive");
        if (!grid.automatic) {
            for (double th : grid.explicit_grid)
                if (!(th >= 2.0 / n) || !(th <= hi))
                    throw DomainError("theta grid leaves the validity strip [2/n, pi - 0.3]");
        }
    }
    if (grid.automatic && grid.points < 2) throw DomainError("grid needs at least 2 points");

    std::vector<HilbRow> rows(n_list.size());
    detail::parallel_for(0, n_list.size(), [&](std::size_t i) {
        int n = n_list[i];
        double ntilde = n + 0.5 * (p.alpha + p.beta + 1.0);
        double lo = 2.0 / n;
        std::size_t npts = grid.automatic ? static_cast<std::size_t>(grid.points)
                                          : grid.explicit_grid.size();
        double best = 0.0;
        for (std::size_t j = 0; j < npts; ++j) {
            double theta = grid.automatic ? lo + (hi - lo) * static_cast<double>(j) /
                                                     static_cast<double>(grid.points - 1)
                                          : grid.explicit_grid[j];
            double pn = jacobi_p(n, p, std::cos(theta));
            double main = hilb_main_term(n, p, theta);
            double w = std::pow(std::sin(0.5 * theta), p.alpha + 0.5) *
                       std::pow(std::cos(0.5 * theta), p.beta + 0.5);
            double scaled = std::fabs(pn - main) * w / std::sqrt(theta) * std::pow(ntilde, 1.5);
            best = std::max(best, scaled);
        }
        rows[i] = HilbRow{n, best};
    });
    return rows;
}

}  // namespace singspec
