#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "singspec/expand.hpp"
#include "singspec/quad.hpp"

using namespace singspec;

namespace {

SingularFunction one_factor(Site site, double exponent, int log_power, double z0 = 0.0) {
    SingularFunction f;
    SingularFactor fac;
    fac.site = site;
    fac.z0 = z0;
    fac.exponent = exponent;
    fac.log_power = log_power;
    f.factors.push_back(fac);
    return f;
}

SingularFunction with_sin(SingularFunction f) {
    SmoothTerm t;
    t.kind = SmoothTerm::Kind::Sin;
    f.smooth_terms.push_back(t);
    return f;
}

}  // namespace

TEST_CASE("jacobi_coeffs frozen values for (1-x)^0.5 log(1-x)") {
    SingularFunction f = one_factor(Site::RightEndpoint, 0.5, 1);
    CoefficientSeries s = jacobi_coeffs(f, JacobiParams(0.0, 0.0), 12, 1e-12);
    REQUIRE(s.order() == 12);
    CHECK(std::fabs(s.values[0] - 0.02496606792432255056407) <= 1e-11);
    CHECK(std::fabs(s.values[10] - 0.02535103309328548216881) <= 1e-11);
    CHECK(s.has_source);
    CHECK(s.basis.family == BasisFamily::Jacobi);
}

TEST_CASE("chebyshev_coeffs frozen values for (1-x)^0.3 sin x") {
    SingularFunction f = with_sin(one_factor(Site::RightEndpoint, 0.3, 0));
    CoefficientSeries s = chebyshev_coeffs(f, 10, 1e-12);
    CHECK(std::fabs(s.values[0] - (-0.1817365345002503230634)) <= 1e-11);
    CHECK(std::fabs(s.values[7] - (-0.01434853731639804679952)) <= 1e-11);
    CHECK(s.basis.family == BasisFamily::Chebyshev);
}

TEST_CASE("gegenbauer_coeffs frozen value for |x-0.3|^1.2") {
    SingularFunction f = one_factor(Site::Interior, 1.2, 0, 0.3);
    CoefficientSeries s = gegenbauer_coeffs(f, 0.75, 8, 1e-12);
    CHECK(std::fabs(s.values[5] - (-0.04697168190488747185423)) <= 1e-11);
    CHECK(s.basis.family == BasisFamily::Gegenbauer);
}

TEST_CASE("jacobi_coeffs frozen values with log(1-x^2) weight mix") {
    SingularFunction f = one_factor(Site::RightEndpoint, 0.6, 0);
    SingularFactor left;
    left.site = Site::LeftEndpoint;
    left.exponent = 0.4;
    f.factors.push_back(left);
    f.log1mx2_power = 1;
    f = with_sin(f);
    CoefficientSeries s = jacobi_coeffs(f, JacobiParams(0.3, -0.4), 26, 1e-12);
    CHECK(std::fabs(s.values[6] - (-0.1028176319289242076712)) <= 1e-10);
    CHECK(std::fabs(s.values[25] - 0.04732043987984747855492) <= 1e-10);
}

TEST_CASE("expansions reproduce an exact polynomial basis combination") {
    // f = P_0 + P_3 in Legendre
    SingularFunction f;
    SmoothTerm t;
    t.kind = SmoothTerm::Kind::Poly;
    t.poly = {1.0, -1.5, 0.0, 2.5};  // 1 + P_3(x) = 1 - 1.5x + 2.5x^3
    f.smooth_terms.push_back(t);
    CoefficientSeries s = legendre_coeffs(f, 6, 1e-12);
    CHECK(std::fabs(s.values[0] - 1.0) <= 1e-11);
    CHECK(std::fabs(s.values[3] - 1.0) <= 1e-11);
    for (int n : {1, 2, 4, 5, 6}) CHECK(std::fabs(s.values[n]) <= 1e-11);
}

TEST_CASE("Parseval identity on a random degree-20 polynomial") {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    SingularFunction f;
    SmoothTerm t;
    t.kind = SmoothTerm::Kind::Poly;
    t.poly.resize(21);
    for (double& c : t.poly) c = coeff(rng);
    f.smooth_terms.push_back(t);

    JacobiParams p(0.3, -0.4);
    CoefficientSeries s = jacobi_coeffs(f, p, 25, 1e-12);
    double lhs = 0.0;
    for (int n = 0; n <= 25; ++n) lhs += s.values[n] * s.values[n] * jacobi_norm(n, p);

    QuadratureRule r = gauss_jacobi(25, p);
    double rhs = 0.0;
    for (int i = 0; i < r.size(); ++i) {
        double fx = f.eval(r.nodes[i]);
        rhs += r.weights[i] * fx * fx;
    }
    CHECK(std::fabs(lhs - rhs) <= 1e-10 * std::fabs(rhs));
}

TEST_CASE("conversion commutativity: Chebyshev") {
    SingularFunction f = with_sin(one_factor(Site::RightEndpoint, 0.3, 0));
    CoefficientSeries direct = chebyshev_coeffs(f, 80, 1e-12);
    CoefficientSeries viaj =
        convert_jacobi_to_chebyshev(jacobi_coeffs(f, JacobiParams(-0.5, -0.5), 80, 1e-12));
    for (int n = 0; n <= 80; ++n)
        CHECK(std::fabs(direct.values[n] - viaj.values[n]) <= 1e-9);
}

TEST_CASE("conversion commutativity: Gegenbauer") {
    SingularFunction f = one_factor(Site::Interior, 1.2, 0, 0.3);
    for (double lambda : {0.5, 1.0, 1.5, 4.1}) {
        CoefficientSeries direct = gegenbauer_coeffs(f, lambda, 40, 1e-12);
        JacobiParams eff(lambda - 0.5, lambda - 0.5);
        CoefficientSeries viaj =
            convert_jacobi_to_gegenbauer(jacobi_coeffs(f, eff, 40, 1e-12), lambda);
        for (int n = 0; n <= 40; ++n)
            CHECK(std::fabs(direct.values[n] - viaj.values[n]) <= 1e-9);
    }
}

TEST_CASE("conversion input validation") {
    SingularFunction f = one_factor(Site::RightEndpoint, 0.5, 0);
    CoefficientSeries s = jacobi_coeffs(f, JacobiParams(0.0, 0.0), 5, 1e-12);
    CHECK_THROWS_AS(convert_jacobi_to_chebyshev(s), BasisMismatch);
    CHECK_THROWS_AS(convert_jacobi_to_gegenbauer(s, 1.5), BasisMismatch);
}

TEST_CASE("coefficient maps are linear") {
    SingularFunction f1 = one_factor(Site::RightEndpoint, 0.5, 0);
    SingularFunction f2 = one_factor(Site::RightEndpoint, 0.5, 0);
    f2.custom_smooth = [](double x) { return std::exp(x); };
    SingularFunction combo = one_factor(Site::RightEndpoint, 0.5, 0);
    combo.custom_smooth = [](double x) { return 2.0 - 0.7 * std::exp(x); };

    JacobiParams p(0.0, 0.0);
    CoefficientSeries a = jacobi_coeffs(f1, p, 20, 1e-13);
    CoefficientSeries b = jacobi_coeffs(f2, p, 20, 1e-13);
    CoefficientSeries c = jacobi_coeffs(combo, p, 20, 1e-13);
    for (int n = 0; n <= 20; ++n)
        CHECK(std::fabs(c.values[n] - (2.0 * a.values[n] - 0.7 * b.values[n])) <= 1e-11);
}

TEST_CASE("expand_coeffs dispatches by family") {
    SingularFunction f = one_factor(Site::RightEndpoint, 0.5, 0);
    CoefficientSeries s1 = expand_coeffs(f, Basis::make_chebyshev(), 6, 1e-12);
    CoefficientSeries s2 = chebyshev_coeffs(f, 6, 1e-12);
    for (int n = 0; n <= 6; ++n) CHECK(s1.values[n] == doctest::Approx(s2.values[n]));
    CHECK(expand_coeffs(f, Basis::make_legendre(), 4, 1e-12).basis.family ==
          BasisFamily::Legendre);
}

TEST_CASE("membership and size validation") {
    SingularFunction f = one_factor(Site::RightEndpoint, -0.8, 0);
    CHECK_THROWS_AS(chebyshev_coeffs(f, 10, 1e-12), NotInL2w);  // -1/2 - 1.6 <= -1
    SingularFunction g = one_factor(Site::RightEndpoint, -0.6, 0);
    CHECK_THROWS_AS(jacobi_coeffs(g, JacobiParams(0.0, 0.0), 10, 1e-12), NotInL2w);
    SingularFunction h = one_factor(Site::RightEndpoint, -0.4, 0);
    CHECK_NOTHROW(jacobi_coeffs(h, JacobiParams(0.0, 0.0), 4, 1e-12));
    CHECK_THROWS_AS(jacobi_coeffs(h, JacobiParams(0.0, 0.0), 20001, 1e-12), SizeError);
    CHECK_THROWS_AS(jacobi_coeffs(h, JacobiParams(0.0, 0.0), 10, 1e-15), DomainError);
}

TEST_CASE("derivative_coeffs closed-form check on P_2") {
    CoefficientSeries s;
    s.basis = Basis::make_legendre();
    s.values = {0.0, 0.0, 1.0};
    s.err_ests = {0.0, 0.0, 0.0};
    CoefficientSeries d = derivative_coeffs(s, 1);
    REQUIRE(d.order() == 1);
    // P_2' = 3x = 1.5 * P_1^{(1,1)}
    CHECK(d.values[0] == doctest::Approx(0.0));
    CHECK(d.values[1] == doctest::Approx(1.5).epsilon(1e-13));
    CHECK(d.basis.family == BasisFamily::Jacobi);
    CHECK(d.basis.jacobi.alpha == doctest::Approx(1.0));
    CHECK(d.basis.jacobi.beta == doctest::Approx(1.0));
    CHECK_FALSE(d.has_source);
}

TEST_CASE("derivative_coeffs matches a finite-difference derivative of the partial sum") {
    SingularFunction f = one_factor(Site::RightEndpoint, 2.6, 0);
    CoefficientSeries s = jacobi_coeffs(f, JacobiParams(0.3, -0.4), 40, 1e-12);
    CoefficientSeries d = derivative_coeffs(s, 1);
    double x = 0.2, h = 1e-5;
    double fd = (evaluate_projection(s, 40, x + h) - evaluate_projection(s, 40, x - h)) /
                (2.0 * h);
    double got = evaluate_projection(d, 39, x);
    CHECK(std::fabs(got - fd) <= 1e-5 * std::max(1.0, std::fabs(got)));
}

TEST_CASE("derivative_coeffs validation") {
    CoefficientSeries s;
    s.basis = Basis::make_chebyshev();
    s.values = {1.0, 2.0, 3.0};
    s.err_ests = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(derivative_coeffs(s, 1), BasisMismatch);
    CoefficientSeries t;
    t.basis = Basis::make_legendre();
    t.values = {1.0, 2.0};
    t.err_ests = {0.0, 0.0};
    CHECK_THROWS_AS(derivative_coeffs(t, 0), DomainError);
    CHECK_THROWS_AS(derivative_coeffs(t, 2), LengthError);
}

TEST_CASE("l2w_projection_error on an exact finite expansion") {
    CoefficientSeries s;
    s.basis = Basis::make_legendre();
    s.values = {1.0, 0.0, 0.0, 1.0};
    s.err_ests = {0.0, 0.0, 0.0, 0.0};
    CHECK(l2w_projection_error(s, 3) == doctest::Approx(0.0));
    CHECK(l2w_projection_error(s, 2) == doctest::Approx(std::sqrt(2.0 / 7.0)).epsilon(1e-13));
}

TEST_CASE("l2w_projection_error is non-increasing in N") {
    SingularFunction f = one_factor(Site::RightEndpoint, 0.5, 0);
    CoefficientSeries s = chebyshev_coeffs(f, 120, 1e-12);
    double prev = -1.0;
    for (int N : {10, 20, 40}) {
        double e = l2w_projection_error(s, N);
        if (prev >= 0.0) CHECK(e <= prev + 1e-15);
        prev = e;
    }
    // N close to the stored length: the extrapolated (unstored) share of the
    // tail exceeds the 10% dominance guard.
    CHECK_THROWS_AS(l2w_projection_error(s, 80), TailDominates);
}

TEST_CASE("sobolev_projection_error basics") {
    SingularFunction f = one_factor(Site::RightEndpoint, 1.6, 2);
    CoefficientSeries s = jacobi_coeffs(f, JacobiParams(0.0, 0.0), 60, 1e-12);
    CHECK(sobolev_projection_error(s, 20, 0) ==
          doctest::Approx(l2w_projection_error(s, 20)).epsilon(1e-13));
    double e1 = sobolev_projection_error(s, 20, 1);
    CHECK(e1 > l2w_projection_error(s, 20));

    CoefficientSeries cheb;
    cheb.basis = Basis::make_chebyshev();
    cheb.values.assign(30, 0.1);
    cheb.err_ests.assign(30, 0.0);
    CHECK_THROWS_AS(sobolev_projection_error(cheb, 5, 1), BasisMismatch);

    SingularFunction bad = one_factor(Site::RightEndpoint, -0.3, 0);
    CoefficientSeries sb = jacobi_coeffs(bad, JacobiParams(0.0, 0.0), 30, 1e-12);
    CHECK_THROWS_AS(sobolev_projection_error(sb, 10, 1), NotInSobolev);

    SingularFunction badint = one_factor(Site::Interior, 0.3, 0, 0.2);
    CoefficientSeries si = jacobi_coeffs(badint, JacobiParams(0.0, 0.0), 30, 1e-12);
    CHECK_THROWS_AS(sobolev_projection_error(si, 10, 1), NotInSobolev);
}

TEST_CASE("evaluate_projection against direct summation in all four bases") {
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    std::vector<double> a(13);
    for (double& v : a) v = coeff(rng);

    std::vector<Basis> bases = {Basis::make_jacobi(JacobiParams(0.7, -0.2)),
                                Basis::make_gegenbauer(1.3), Basis::make_legendre(),
                                Basis::make_chebyshev()};
    for (const Basis& basis : bases) {
        CoefficientSeries s;
        s.basis = basis;
        s.values = a;
        s.err_ests.assign(a.size(), 0.0);
        for (double x : {-0.9, -0.33, 0.0, 0.58, 0.97}) {
            double direct = 0.0;
            for (int n = 0; n <= 12; ++n) {
                double phi = 0.0;
                switch (basis.family) {
                    case BasisFamily::Jacobi:
                    case BasisFamily::Legendre:
                        phi = jacobi_p(n, basis.effective_jacobi(), x);
                        break;
                    case BasisFamily::Gegenbauer: phi = gegenbauer_c(n, basis.lambda, x); break;
                    case BasisFamily::Chebyshev: phi = chebyshev_t(n, x); break;
                }
                direct += a[n] * phi;
            }
            double got = evaluate_projection(s, 12, x);
            CHECK(std::fabs(got - direct) <= 1e-12 * std::max(1.0, std::fabs(direct)));
        }
    }
}

TEST_CASE("evaluate_projection truncation and pointwise convergence") {
    CoefficientSeries s;
    s.basis = Basis::make_legendre();
    s.values = {0.5, 0.0, 0.0, 1.0};
    s.err_ests = {0.0, 0.0, 0.0, 0.0};
    CHECK(evaluate_projection(s, 0, 0.4) == doctest::Approx(0.5));
    CHECK(evaluate_projection(s, 3, 0.4) ==
          doctest::Approx(0.5 + jacobi_p(3, JacobiParams(0.0, 0.0), 0.4)).epsilon(1e-13));
    CHECK_THROWS_AS(evaluate_projection(s, 4, 0.4), DomainError);

    SingularFunction f = one_factor(Site::RightEndpoint, 0.5, 0);
    CoefficientSeries c = chebyshev_coeffs(f, 400, 1e-12);
    // Truncation error at x = 0 is an alternating tail of ~ sqrt(2)/(pi n^2)
    // terms, so about 1.4e-6 at N = 400.
    CHECK(std::fabs(evaluate_projection(c, 400, 0.0) - 1.0) <= 2e-6);
}
