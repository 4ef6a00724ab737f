#pragma once

#include <functional>
#include <vector>

#include "singspec/errors.hpp"
#include "singspec/function.hpp"
#include "singspec/specfun.hpp"

namespace singspec {

// Nodes ascending in (-1,1) with positive weights; sum of weights equals the
// zeroth weight moment.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int size() const { return static_cast<int>(nodes.size()); }
};

// n-point Gauss-Legendre rule on (-1,1).  1 <= n <= 10000.
QuadratureRule gauss_legendre(int n);

// n-point Gauss-Jacobi rule for weight (1-x)^alpha (1+x)^beta on (-1,1).
QuadratureRule gauss_jacobi(int n, const JacobiParams& p);

struct IntegralResult {
    double value = 0.0;
    double err_est = 0.0;
};

// Adaptive singularity-graded integration of f(x)*kernel(x) over [a,b] within
// [-1,1].  Panels are geometrically graded toward every singular site of f
// that lies on [a,b]; near-site panels work in exact-distance coordinates so
// the algebraic-logarithmic factors never lose accuracy to cancellation.  A
// positive osc_hint declares the kernel oscillatory with effective frequency
// osc_hint (phase osc_hint * theta in theta = arccos x); panels are subdivided
// until each spans a bounded phase.  Requires tol >= 1e-14.  Throws
// NoConvergence (carrying the best value and its error estimate) if the target
// is not met after depth escalation.
IntegralResult integrate_singular(const SingularFunction& f,
                                  const std::function<double(double)>& kernel, double a, double b,
                                  double tol, double osc_hint = 0.0);

enum class LogSite { None, AtZero, AtB };

// Finite-part oscillatory Bessel integral
//   I(omega) = int_0^t x^alpha [log^mu x] (b-x)^beta [log^mu (b-x)]
//              psi(x) J_nu(omega x) dx
// with the log factor attached at the site selected by log_site (mu = 0 when
// log_site == None).
struct OscIntegralSpec {
    double alpha = 0.0;  // alpha + nu > -1
    double beta = 0.0;   // beta > -1
    int mu = 0;          // mu >= 0
    BesselOrder nu{0.0};
    double b = 1.0;  // b > 0
    LogSite log_site = LogSite::None;
    std::function<double(double)> psi;  // smooth amplitude; empty means 1
    double t = 1.0;                     // 0 <= t <= b
};

// Evaluates the integral above for omega >= 1, to absolute accuracy about
// 1e-11 + 1e-8*|I|.
IntegralResult bessel_transform(const OscIntegralSpec& spec, double omega);

// First-order large-X estimate of int_X^inf x^(alpha-1/2) * sqrt(2/(pi x)) *
// ... tail of int x^alpha J_nu(x) dx, i.e. minus the antiderivative evaluated
// at X using the leading Bessel asymptotics.  Used to extend truncated Weber-
// Schafheitlin integrals to the half line.
double bessel_tail_estimate(double alpha, double nu, double X);

namespace detail {

enum class KernelFamily { Jacobi, Chebyshev };

struct BatchedResult {
    std::vector<double> values;    // I_n, n = 0..nmax
    std::vector<double> err_ests;  // grading-depth comparison per n
};

// Integrals I_n = int_{-1}^{1} h(x) K_n(x) dx for n = 0..nmax over one shared
// singularity-graded, oscillation-resolved mesh, where K_n is the Jacobi
// polynomial P_n^(kp) or the Chebyshev polynomial T_n.  tol_n gives the
// per-n absolute tolerance; the mesh is deepened until every err_est passes
// or NoConvergence is thrown.  Panel sums are computed thread-parallel and
// reduced in a fixed order, so results are independent of the thread count.
BatchedResult batched_kernel_integrals(const SingularFunction& h, KernelFamily fam,
                                       const JacobiParams& kp, int nmax,
                                       const std::vector<double>& tol_n);

}  // namespace detail

}  // namespace singspec
