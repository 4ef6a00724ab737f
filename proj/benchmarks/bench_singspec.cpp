// Microbenchmarks for the hot paths: special-function kernels, quadrature
// construction, singular integration, oscillatory transforms, and batched
// expansion.  Build with -DSINGSPEC_BUILD_BENCHMARKS=ON (default) and run
// ./benchmarks/bench_singspec; google-benchmark flags apply.

#include <benchmark/benchmark.h>

#include <cmath>

#include "singspec/asymp.hpp"
#include "singspec/descr.hpp"
#include "singspec/expand.hpp"
#include "singspec/parallel.hpp"
#include "singspec/quad.hpp"
#include "singspec/specfun.hpp"

namespace {

using namespace singspec;

void bm_bessel_j_series(benchmark::State& state) {
    BesselOrder nu{2.7};
    double x = 0.0;
    for (auto _ : state) {
        x += 1e-12;  // defeat value caching without leaving the series branch
        benchmark::DoNotOptimize(bessel_j(nu, 14.0 + x));
    }
}
BENCHMARK(bm_bessel_j_series);

void bm_bessel_j_asymptotic(benchmark::State& state) {
    BesselOrder nu{2.7};
    double x = 0.0;
    for (auto _ : state) {
        x += 1e-9;
        benchmark::DoNotOptimize(bessel_j(nu, 900.0 + x));
    }
}
BENCHMARK(bm_bessel_j_asymptotic);

void bm_bessel_j_large_order(benchmark::State& state) {
    BesselOrder nu{60.0};
    double x = 0.0;
    for (auto _ : state) {
        x += 1e-9;
        benchmark::DoNotOptimize(bessel_j(nu, 90.0 + x));
    }
}
BENCHMARK(bm_bessel_j_large_order);

void bm_jacobi_p(benchmark::State& state) {
    JacobiParams p{0.3, -0.4};
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(jacobi_p(n, p, 0.7));
    }
    state.SetComplexityN(n);
}
BENCHMARK(bm_jacobi_p)->Arg(100)->Arg(1000)->Arg(8000)->Complexity(benchmark::oN);

void bm_gauss_jacobi(benchmark::State& state) {
    JacobiParams p{0.3, -0.4};
    int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gauss_jacobi(n, p));
    }
}
BENCHMARK(bm_gauss_jacobi)->Arg(64)->Arg(512)->Arg(2048);

void bm_integrate_singular(benchmark::State& state) {
    SingularFunction f = parse("(1-x)^0.5*log(1-x)");
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate_singular(f, {}, -1.0, 1.0, 1e-12));
    }
}
BENCHMARK(bm_integrate_singular);

void bm_bessel_transform(benchmark::State& state) {
    OscIntegralSpec spec;
    spec.alpha = 1.0;
    spec.beta = 0.5;
    spec.mu = 1;
    spec.nu = BesselOrder{0.0};
    spec.b = 0.5;
    spec.log_site = LogSite::AtZero;
    spec.psi = [](double x) { return std::cos(x); };
    spec.t = spec.b;
    double omega = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(bessel_transform(spec, omega));
    }
}
BENCHMARK(bm_bessel_transform)->Arg(10)->Arg(100)->Arg(1000);

void bm_expand_coeffs(benchmark::State& state) {
    SingularFunction f = parse("(1-x)^0.3*(1+x)^0.7*log(1-x^2)*sin(x)");
    Basis basis = Basis::make_chebyshev();
    int N = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(expand_coeffs(f, basis, N, 1e-12));
    }
}
BENCHMARK(bm_expand_coeffs)->Arg(100)->Arg(400)->Arg(1600)->Unit(benchmark::kMillisecond);

void bm_l2w_projection_error(benchmark::State& state) {
    SingularFunction f = parse("|x-0.5|^1*log|x-0.5|");
    CoefficientSeries s = expand_coeffs(f, Basis::make_legendre(), 2000, 1e-12);
    for (auto _ : state) {
        benchmark::DoNotOptimize(l2w_projection_error(s, 400));
    }
}
BENCHMARK(bm_l2w_projection_error);

void bm_hilb_scan(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(hilb_residual_scan({0.0, 0.0}, {256}));
    }
}
BENCHMARK(bm_hilb_scan);

}  // namespace

BENCHMARK_MAIN();
