#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "durlab/affine.hpp"

using namespace durlab;

static void BM_StripRecursion(benchmark::State& state) {
    const ModelParams params = bench::economy().to_general();
    const int n_max = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto coeffs = solve_strip_coefficients(params, n_max);
        benchmark::DoNotOptimize(coeffs.A.back());
    }
}
BENCHMARK(BM_StripRecursion)->Arg(24)->Arg(240)->Arg(2400);

static void BM_Solve2D(benchmark::State& state) {
    const ModelParams2D params = bench::economy();
    for (auto _ : state) {
        auto cf = solve_2d(params, 3.9);
        benchmark::DoNotOptimize(cf.B_pd);
    }
}
BENCHMARK(BM_Solve2D);

static void BM_StateRecovery(benchmark::State& state) {
    const ModelParams params = bench::economy().to_general();
    const StripCoefficients coeffs = solve_strip_coefficients(params, 6);
    Eigen::Vector2d x{0.05, -0.3};
    const std::vector<std::pair<int, double>> obs = {
        {1, valuation_ratio(coeffs, 1, x)}, {4, valuation_ratio(coeffs, 4, x)}};
    for (auto _ : state) {
        auto back = recover_states(obs, coeffs);
        benchmark::DoNotOptimize(back[0]);
    }
}
BENCHMARK(BM_StateRecovery);
