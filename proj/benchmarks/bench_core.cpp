#include <benchmark/benchmark.h>

#include <random>

#include "derivzeros/coulomb.hpp"
#include "derivzeros/polycore.hpp"
#include "derivzeros/rootfind.hpp"
#include "derivzeros/transport.hpp"

using namespace derivzeros;
using Cx = std::complex<double>;

namespace {

std::vector<Cx> disk_points(int n, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Cx> p(static_cast<std::size_t>(n));
    for (Cx& z : p) {
        const double r = std::sqrt(u(eng));
        const double t = 6.283185307179586 * u(eng);
        z = Cx(r * std::cos(t), r * std::sin(t));
    }
    return p;
}

} // namespace

static void BM_elem_sym(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    const RootSet p(disk_points(n, 1));
    const Cx z(1.7, 0.4);
    for (auto _ : state) benchmark::DoNotOptimize(lnk(z, p, k));
    state.SetItemsProcessed(state.iterations() * n * k);
}
BENCHMARK(BM_elem_sym)->Args({1000, 1})->Args({1000, 4})->Args({100000, 4})->Args({100000, 16});

static void BM_kth_derivative_roots(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int k = static_cast<int>(state.range(1));
    const RootSet p(disk_points(n, 2));
    for (auto _ : state) benchmark::DoNotOptimize(kth_derivative_roots(p, k));
}
BENCHMARK(BM_kth_derivative_roots)->Args({256, 1})->Args({1024, 1})->Args({1024, 3})->Unit(benchmark::kMillisecond);

static void BM_w1_exact_assignment(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const EmpiricalMeasure a = EmpiricalMeasure::uniform(disk_points(n, 3));
    const EmpiricalMeasure b = EmpiricalMeasure::uniform(disk_points(n, 4));
    for (auto _ : state) benchmark::DoNotOptimize(wasserstein1_exact(a, b));
    state.SetLabel("uniform equal sizes (assignment path)");
}
BENCHMARK(BM_w1_exact_assignment)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_w1_exact_flow(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const EmpiricalMeasure a = EmpiricalMeasure::uniform(disk_points(n, 5));
    const EmpiricalMeasure b = EmpiricalMeasure::uniform(disk_points(n - 3, 6));
    for (auto _ : state) benchmark::DoNotOptimize(wasserstein1_exact(a, b));
    state.SetLabel("uniform unequal sizes (flow path)");
}
BENCHMARK(BM_w1_exact_flow)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_coulomb_sweep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<Cx> pts = disk_points(n, 7);
    const RadialPotential q;
    Rng rng(8);
    for (auto _ : state) benchmark::DoNotOptimize(coulomb_sweep(pts, q, 1.0, n, 0.15, rng));
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_coulomb_sweep)->Arg(64)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
