// Microbenchmarks for the adaptive QR elimination and the tensor-equation
// column recursion.

#include <benchmark/benchmark.h>

#include "specband/problems.hpp"

namespace sb = specband;

static void BM_GivensElimination(benchmark::State& state) {
    const sb::Index n = state.range(0);
    for (auto _ : state) {
        sb::OdeProblem p = sb::oscillatory_ode_problem(10.0);
        sb::MutableAlmostBandedOperator<double> w(p.system.functionals, p.system.op);
        std::vector<double> rhs{1.0, 1.0};
        w.eliminate_through(n, rhs);
        benchmark::DoNotOptimize(w.stats().rotations);
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_GivensElimination)->RangeMultiplier(2)->Range(256, 4096)->Complexity(benchmark::oN);

static void BM_AdaptiveSolveOscillatory(benchmark::State& state) {
    const double k = static_cast<double>(state.range(0));
    sb::OdeProblem p = sb::oscillatory_ode_problem(k);
    for (auto _ : state) {
        sb::AdaptiveQRResult<double> r = sb::adaptive_qr_solve(p.system, {1e-14, 100000});
        benchmark::DoNotOptimize(r.n_opt);
    }
}
BENCHMARK(BM_AdaptiveSolveOscillatory)->Arg(10)->Arg(20)->Arg(40)->Arg(80);

static void BM_HelmholtzColumns(benchmark::State& state) {
    const sb::Index nx = state.range(0);
    for (auto _ : state) {
        sb::HelmholtzRun run = sb::solve_helmholtz(nx, 50, 100.0, 1e-14, 50);
        benchmark::DoNotOptimize(run.solution.stats.nopt_max);
    }
    state.SetComplexityN(nx);
}
BENCHMARK(BM_HelmholtzColumns)->Arg(250)->Arg(500)->Arg(1000)->Complexity(benchmark::oN);

BENCHMARK_MAIN();
