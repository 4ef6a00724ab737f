#pragma once

#include "singspec/errors.hpp"

namespace singspec {

// Jacobi weight parameters (1-x)^alpha (1+x)^beta; both must exceed -1 for
// the weight to be integrable.
struct JacobiParams {
    double alpha;
    double beta;
    JacobiParams(double alpha, double beta) : alpha(alpha), beta(beta) {
        if (!(alpha > -1.0) || !(beta > -1.0))
            throw DomainError("JacobiParams: require alpha > -1 and beta > -1");
    }
};

// Real Bessel order; the library supports nu > -1.
struct BesselOrder {
    double nu;
    explicit BesselOrder(double nu) : nu(nu) {
        if (!(nu > -1.0))
            throw DomainError("BesselOrder: require nu > -1");
    }
};

// ln Gamma(x) for x > 0, relative error <= 1e-13 on (0, 1e6].
double ln_gamma(double x);

// Jacobi polynomial P_n^{(alpha,beta)}(x) by forward three-term recurrence.
double jacobi_p(int n, const JacobiParams& p, double x);

// Squared weighted L^2 norm sigma_n of P_n^{(alpha,beta)}, computed in log
// space so it neither overflows nor underflows for n up to ~1e5.
double jacobi_norm(int n, const JacobiParams& p);

// Gegenbauer polynomial C_n^{(lambda)}(x), lambda > -1/2, lambda != 0.
double gegenbauer_c(int n, double lambda, double x);

// Squared weighted L^2 norm of C_n^{(lambda)} under (1-x^2)^{lambda-1/2}.
double gegenbauer_norm(int n, double lambda);

// Chebyshev polynomial of the first kind, T_n(x) = cos(n arccos x).
double chebyshev_t(int n, double x);

// Bessel function of the first kind J_nu(x), x >= 0, nu > -1.
// Absolute error <= 1e-10 for x in [0, 5e4] and nu in (-1, 60].
double bessel_j(const BesselOrder& order, double x);

// Main-term approximation of P_n^{(alpha,beta)}(cos theta) from the Hilb-type
// asymptotic formula, theta in (0, pi).  The remainder is
// O(Ntilde^{-3/2}) in the weighted sense, Ntilde = n + (alpha+beta+1)/2.
double hilb_main_term(int n, const JacobiParams& p, double theta);

namespace detail {

// ln |Gamma(x)| with the sign of Gamma(x) stored in *sign.
// Supports x > 0 and x in (-1, 0) (via the reflection formula).
double ln_abs_gamma(double x, int* sign);

// Evaluate P_0..P_nmax at x into out[0..nmax] in one recurrence pass.
void jacobi_p_all(int nmax, double alpha, double beta, double x, double* out);

// Evaluate T_0..T_nmax at x into out[0..nmax].
void chebyshev_t_all(int nmax, double x, double* out);

// Conversion constant k_n with C_n^{(lambda)} = k_n P_n^{(lambda-1/2,lambda-1/2)}.
double gegenbauer_jacobi_factor(int n, double lambda);

}  // namespace detail

}  // namespace singspec
