#include <benchmark/benchmark.h>

#include "durlab/latent.hpp"
#include "durlab/rng.hpp"

using namespace durlab;

namespace {

std::vector<double> growth_sample(int n) {
    Rng rng(5);
    std::vector<double> dg(n);
    double z = 0;
    for (int t = 0; t < n; ++t) {
        dg[t] = 0.06 + z + 0.05 * rng.normal();
        z = 0.26 * z + 0.11 * rng.normal();
    }
    return dg;
}

}  // namespace

static void BM_KalmanLoglik(benchmark::State& state) {
    const std::vector<double> dg = growth_sample(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        const double ll = kalman_loglik(0.06, 0.26, 0.05, 0.11, 0.0, dg);
        benchmark::DoNotOptimize(ll);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KalmanLoglik)->Arg(94)->Arg(940);

static void BM_FitStateSpace(benchmark::State& state) {
    const std::vector<double> dg = growth_sample(94);
    for (auto _ : state) {
        const auto fits = fit_state_space(dg, false, {0.0});
        benchmark::DoNotOptimize(fits.front().loglik);
    }
}
BENCHMARK(BM_FitStateSpace);
