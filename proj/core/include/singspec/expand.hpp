#pragma once

#include <vector>

#include "singspec/function.hpp"
#include "singspec/parallel.hpp"
#include "singspec/quad.hpp"

namespace singspec {

// Expansion coefficients a_0..a_N in an orthogonal-polynomial basis, with a
// per-coefficient quadrature-error estimate.  The source function is kept so
// norm routines can verify membership hypotheses.
struct CoefficientSeries {
    Basis basis;
    std::vector<double> values;
    std::vector<double> err_ests;
    bool has_source = false;
    SingularFunction source;

    int order() const { return static_cast<int>(values.size()) - 1; }
};

// a_n = (1/sigma_n) int w f P_n^(alpha,beta).  Requires f in L2_w:
// min{alpha+gamma, beta+delta, alpha+2 gamma, beta+2 delta} > -1 over the
// endpoint factors and s > -1/2 at interior sites (NotInL2w otherwise).
CoefficientSeries jacobi_coeffs(const SingularFunction& f, const JacobiParams& p, int N,
                                double tol = 1e-12);

// a_n(lambda) = (1/hbar_n) int (1-x^2)^(lambda-1/2) C_n^(lambda) f.
CoefficientSeries gegenbauer_coeffs(const SingularFunction& f, double lambda, int N,
                                    double tol = 1e-12);

// c_n = (2 - delta_n0)/pi int f T_n (1-x^2)^(-1/2).
CoefficientSeries chebyshev_coeffs(const SingularFunction& f, int N, double tol = 1e-12);

// Legendre = Jacobi(0,0), tagged with the Legendre family.
CoefficientSeries legendre_coeffs(const SingularFunction& f, int N, double tol = 1e-12);

// Dispatch on the basis family.
CoefficientSeries expand_coeffs(const SingularFunction& f, const Basis& basis, int N,
                                double tol = 1e-12);

// a_n(lambda) = a_n(lambda-1/2, lambda-1/2) * Gamma(2 lambda) Gamma(n+lambda+1/2) /
// (Gamma(lambda+1/2) Gamma(n+2 lambda)).  Requires a symmetric Jacobi input
// basis with alpha = beta = lambda - 1/2 (BasisMismatch otherwise).
CoefficientSeries convert_jacobi_to_gegenbauer(const CoefficientSeries& s, double lambda);

// c_0 = a_0 and c_n = Gamma(n+1/2)/(Gamma(1/2) Gamma(n+1)) * a_n(-1/2,-1/2).
// Requires alpha = beta = -1/2.
CoefficientSeries convert_jacobi_to_chebyshev(const CoefficientSeries& s);

// Coefficients of f^(q) in the Jacobi(alpha+q, beta+q) basis:
// out_n = a_{n+q} * Gamma(n+2q+alpha+beta+1) / (2^q Gamma(n+q+alpha+beta+1)).
// Requires a Jacobi (or Legendre) input basis and q >= 1; output has length
// N-q+1 (LengthError when that is not positive).
CoefficientSeries derivative_coeffs(const CoefficientSeries& s, int q);

// sqrt(sum_{n>N} a_n^2 h_n) where h_n is the basis norm.  The part beyond the
// stored length is extrapolated from an envelope fit of the stored tail;
// TailDominates if that correction exceeds 10% of the stored tail sum.
double l2w_projection_error(const CoefficientSeries& s, int N);

// sqrt(sum_{q=0}^m sum_{n>N} [a_n^(q)]^2 sigma_n^(alpha+q,beta+q)) built from
// derivative_coeffs.  Requires a Jacobi (or Legendre) basis and membership of
// the source in H^m: alpha+2 gamma - m > -1, beta+2 delta - m > -1,
// s > m - 1/2 (NotInSobolev otherwise).
double sobolev_projection_error(const CoefficientSeries& s, int N, int m);

// Partial sum sum_{n<=N} a_n phi_n(x) by Clenshaw backward recurrence.
double evaluate_projection(const CoefficientSeries& s, int N, double x);

}  // namespace singspec
