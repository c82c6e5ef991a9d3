#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "durlab/simulate.hpp"
#include "durlab/strips.hpp"

using namespace durlab;

static void BM_Pchip(benchmark::State& state) {
    const std::vector<std::pair<double, double>> curve = {
        {0.25, 101.0}, {0.5, 102.4}, {1.0, 104.8}, {1.5, 107.0}, {2.0, 109.5}};
    double target = 0.3;
    for (auto _ : state) {
        const double v = interpolate_futures(curve, target);
        benchmark::DoNotOptimize(v);
        target += 0.01;
        if (target > 1.9) target = 0.3;
    }
}
BENCHMARK(BM_Pchip);

static void BM_ValuationSeries(benchmark::State& state) {
    const ModelParams2D params = bench::economy();
    const SimPath path = simulate(params, 3.9, 600, 5);
    const auto snaps = synthesize_snapshots(path, params, {0.25, 0.5, 1.0, 1.5, 2.0});
    for (auto _ : state) {
        const ValuationSeries vs = valuation_series(snaps);
        benchmark::DoNotOptimize(vs.dr[0]);
    }
    state.SetItemsProcessed(state.iterations() * snaps.size());
}
BENCHMARK(BM_ValuationSeries);
