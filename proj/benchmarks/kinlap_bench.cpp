#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "kinlap/degiorgi.hpp"
#include "kinlap/exponents.hpp"
#include "kinlap/mollification.hpp"
#include "kinlap/solver.hpp"
#include "kinlap/verify.hpp"

using namespace kinlap;

namespace {

void BM_ExponentTable(benchmark::State& state) {
    const ProblemParams pp{1, Rational(9, 5), Rational(9, 4)};
    for (auto _ : state) benchmark::DoNotOptimize(compute_exponents(pp));
}
BENCHMARK(BM_ExponentTable);

void BM_KernelEval(benchmark::State& state) {
    const KernelFamily fam(1.5);
    const auto sc = fam.scale(0.5);
    const auto box = fam.support(0.5);
    const auto kind = static_cast<KernelKind>(state.range(0));
    double s = box.s_lo, acc = 0.0;
    const double ds = (box.s_hi - box.s_lo) / 1024.0;
    for (auto _ : state) {
        acc += fam.eval(kind, sc, s, 0.1 * box.y_bound, -0.2 * box.w_bound);
        s += ds;
        if (s > box.s_hi) s = box.s_lo;
    }
    benchmark::DoNotOptimize(acc);
    state.SetLabel(kernel_name(kind));
}
BENCHMARK(BM_KernelEval)->DenseRange(0, 3);

void BM_TKmspace(benchmark::State& state) {
    const KernelFamily fam(1.5, 0.5);
    const ScalarFn g = [](double t, double x, double v) { return std::exp(-(t * t + x * x + v * v)); };
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(apply_TK_mspace(fam, g, PhasePoint(0.3, 0.2, -0.1), n));
    state.SetComplexityN(static_cast<long>(n) * n * n);
}
BENCHMARK(BM_TKmspace)->RangeMultiplier(2)->Range(8, 32)->Complexity(benchmark::oN);

void BM_WeakNorm(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::exponential_distribution<double> E(1.0);
    std::vector<double> values(static_cast<std::size_t>(state.range(0)));
    for (double& x : values) x = E(rng);
    for (auto _ : state) benchmark::DoNotOptimize(weak_lp_norm(values, 1e-3, 1.2));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WeakNorm)->RangeMultiplier(8)->Range(1 << 12, 1 << 21)->Complexity(benchmark::oNLogN);

void BM_SolverStep(benchmark::State& state) {
    SolverConfig c;
    c.nx = c.nv = static_cast<int>(state.range(0));
    const double p = static_cast<double>(state.range(1)) / 10.0;
    const Field f0 = initial_slice(c, [](double x, double v) { return 1.0 + std::cos(3.0 * x) * std::exp(-v * v); });
    const auto nl = p_laplace(p);
    const double dt = stable_dt(f0, nl, c);
    for (auto _ : state) benchmark::DoNotOptimize(step(f0, nl, c, 0.0, dt));
    state.SetItemsProcessed(state.iterations() * c.nx * c.nv);
}
BENCHMARK(BM_SolverStep)->ArgsProduct({{32, 64, 128}, {18, 20, 30}});

void BM_GNExperiment(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const GridSpec g{Box{-10, 10, -20, 20, -10, 10}, n, 2 * n, n};
    const auto pair = gaussian_gn_pair();
    for (auto _ : state)
        benchmark::DoNotOptimize(gn_experiment(pair, g, ProblemParams{1, Rational(2), Rational(2)}, {1.0}));
}
BENCHMARK(BM_GNExperiment)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_DeGiorgiRun(benchmark::State& state) {
    const double p = 3.0, tp = std::pow(2.0, p);
    const int n = static_cast<int>(state.range(0));
    const Field u = Field::from_function(Box{-tp, 0.0, -2 * tp, 2 * tp, -2.0, 2.0}, n, n, n,
                                         [](double t, double x, double v) {
                                             return 0.5 * std::exp(t / 8.0 - x * x / 64.0 - v * v);
                                         });
    for (auto _ : state) benchmark::DoNotOptimize(degiorgi_run(u, Rational(3), DGMode::PGe2, 12));
}
BENCHMARK(BM_DeGiorgiRun)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_FastLemma(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(fast_convergence_lemma(10.0, 4.0, 1.0 / 3.0, 1e-30));
}
BENCHMARK(BM_FastLemma);

}  // namespace

BENCHMARK_MAIN();
