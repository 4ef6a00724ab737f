#pragma once

#include <string>
#include <utility>
#include <vector>

#include "singspec/function.hpp"
#include "singspec/quad.hpp"

namespace singspec {

enum class RateKind { CoefficientDecay, ProjectionL2, ProjectionSobolev, BesselTransform };

// Predicted envelope magnitude ~ c * n^exponent * ln^log_power(n) (or omega in
// the Bessel case).  For composite functions the slowest rate (largest
// exponent, ties broken by the larger log power) dominates.
struct RatePrediction {
    RateKind kind = RateKind::CoefficientDecay;
    int sobolev_m = 0;             // meaningful for ProjectionSobolev
    double exponent = 0.0;         // negative means decay
    int log_power = 0;
    bool super_algebraic = false;  // decays faster than any power; exponent unset
    bool tie_flagged = false;      // equal-exponent envelope tie resolved by log power
    std::string source;            // identifier of the rate rule applied
};

struct DecayFit {
    double exponent = 0.0;
    double amplitude = 0.0;  // c in |a| ~ c n^p ln^m n
    int log_power_used = 0;
    double residual_rms = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    int used_count = 0;
    int excluded_count = 0;  // zero/denormal magnitudes dropped from the window
};

// Rate of the basis coefficients of f.  Raises HypothesisViolated (naming the
// condition) outside the per-rule hypothesis domain.
RatePrediction predict_coeff_decay(const SingularFunction& f, const Basis& basis);

// Rate of ||f - P_N f|| in L2_w (m = 0) or the weighted H^m norm.
RatePrediction predict_projection_rate(const SingularFunction& f, const Basis& basis, int m);

// omega-rate of the oscillatory Bessel integral described by spec.
RatePrediction predict_bessel_rate(const OscIntegralSpec& spec);

// Least-squares fit of log|a| = log c + p log n + log_power log log n over
// index window [window_lo, window_hi] (window_lo clamped to >= 10), solving
// for (log c, p) with the log power fixed.  Zero and denormal magnitudes are
// excluded and counted; fewer than 8 usable samples raises InsufficientData.
DecayFit fit_decay(const std::vector<std::pair<double, double>>& samples, int log_power,
                   double window_lo, double window_hi);

// Strict local maxima of a (index, magnitude) sequence; used to extract the
// envelope of oscillating coefficient magnitudes before fitting.
std::vector<std::pair<double, double>> envelope_maxima(
    const std::vector<std::pair<double, double>>& samples);

// Theta grid for the Hilb residual scan.  The automatic grid for order n is
// `points` equispaced values on [2/n, pi - 0.3]; an explicit grid must lie in
// that strip for every requested n.
struct ThetaGridSpec {
    bool automatic = true;
    int points = 200;
    std::vector<double> explicit_grid;
};

struct HilbRow {
    int n = 0;
    double scaled_max = 0.0;
};

// For each n, the grid maximum of
//   |P_n(cos t) - hilb_main_term(n,p,t)| * sin^(a+1/2)(t/2) cos^(b+1/2)(t/2)
//   * t^(-1) * Ntilde^(3/2),
// the residual of the Hilb-type approximation scaled so it stays bounded.
std::vector<HilbRow> hilb_residual_scan(const JacobiParams& p, const std::vector<int>& n_list,
                                        const ThetaGridSpec& grid = {});

}  // namespace singspec
