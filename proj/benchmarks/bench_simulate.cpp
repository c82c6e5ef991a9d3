#include <benchmark/benchmark.h>

#include "bench_common.hpp"
#include "durlab/simulate.hpp"

using namespace durlab;

static void BM_Simulate(benchmark::State& state) {
    const ModelParams2D params = bench::economy();
    const int T = static_cast<int>(state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        auto path = simulate(params, 3.9, T, seed++);
        benchmark::DoNotOptimize(path.dr.back());
    }
    state.SetItemsProcessed(state.iterations() * T);
}
BENCHMARK(BM_Simulate)->Arg(600)->Arg(10000)->Arg(100000);

static void BM_SynthesizeSnapshots(benchmark::State& state) {
    const ModelParams2D params = bench::economy();
    const SimPath path = simulate(params, 3.9, 600, 7);
    for (auto _ : state) {
        auto snaps = synthesize_snapshots(path, params, {0.25, 0.5, 1.0, 1.5, 2.0});
        benchmark::DoNotOptimize(snaps.back().index_level);
    }
}
BENCHMARK(BM_SynthesizeSnapshots);
