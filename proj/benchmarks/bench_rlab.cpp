// Performance-sensitive kernels: the sort-and-stack rearrangement, exact
// step-profile algebra, the spectral strip tendency, and the radial solver.

#include <benchmark/benchmark.h>

#include <cmath>

#include "rlab/carriers.hpp"
#include "rlab/certify.hpp"
#include "rlab/euler2d.hpp"
#include "rlab/rearrange.hpp"
#include "rlab/rng.hpp"

using namespace rlab;

static void BM_SigmaRearrange(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    auto sc = make_disc_radius2(n, 1.0);
    RandomStream rs(1);
    AtomicFunction f = random_bumps(rs, sc.carrier);
    for (auto _ : state) {
        AtomicFunction r = sigma_rearrange(f, sc.sigma);
        benchmark::DoNotOptimize(r.values().data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * n);
}
BENCHMARK(BM_SigmaRearrange)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);

static void BM_MuOf(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    auto sc = make_disc_radius2(n, 1.0);
    RandomStream rs(2);
    AtomicFunction f = random_bumps(rs, sc.carrier);
    for (auto _ : state) {
        StepProfile mu = mu_of(f);
        benchmark::DoNotOptimize(mu.piece_values().data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * n);
}
BENCHMARK(BM_MuOf)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);

static void BM_CertifyThm1(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    auto sc = make_disc_radius2(n, 1.0);
    RandomStream rs(3);
    AtomicFunction f = random_bumps(rs, sc.carrier);
    AtomicFunction q = random_bumps(rs, sc.carrier);
    for (auto _ : state) {
        Certificate c = certify_thm1(f, q, sc.sigma);
        benchmark::DoNotOptimize(c.slack);
    }
}
BENCHMARK(BM_CertifyThm1)->Arg(1 << 9)->Arg(1 << 12)->Arg(1 << 14);

static void BM_StripTendency(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    VorticityField w = shear_field(n, n, 1.0, 1.0,
                                   [](double x2) { return std::max(1.0 - x2, 0.0); });
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            w.at(i, j) += 0.02 * std::exp(-40.0 * (std::pow(w.x1(i) - 0.5, 2) +
                                                   std::pow(w.x2(j) - 0.5, 2)));
    StripSpectral sp(n, n, 1.0, 1.0);
    std::vector<double> out;
    for (auto _ : state) {
        sp.tendency(w, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * n * n);
}
BENCHMARK(BM_StripTendency)->Arg(64)->Arg(128)->Arg(256);

static void BM_RadialPoisson(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    RadialDiscMesh mesh = RadialDiscMesh::equal_area(n, 1.0);
    std::vector<double> omega(n);
    for (std::size_t i = 0; i < n; ++i)
        omega[i] = 1.0 + std::sin(7.0 * static_cast<double>(i) / n);
    for (auto _ : state) {
        RadialStream rs = poisson_disc_radial(mesh, omega);
        benchmark::DoNotOptimize(rs.grad_energy);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) * n);
}
BENCHMARK(BM_RadialPoisson)->Arg(1 << 10)->Arg(1 << 14);

BENCHMARK_MAIN();
