#include <benchmark/benchmark.h>

#include "durlab/regress.hpp"
#include "durlab/rng.hpp"

using namespace durlab;

namespace {

struct Sample {
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
};

Sample make_sample(int n, int k) {
    Rng rng(11);
    Sample s;
    s.X.resize(n, k);
    s.y.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < k; ++j) s.X(i, j) = rng.normal();
        s.y[i] = s.X(i, 0) * 0.3 + rng.normal();
    }
    return s;
}

}  // namespace

static void BM_OlsWithNeweyWest(benchmark::State& state) {
    const Sample s = make_sample(static_cast<int>(state.range(0)), 2);
    for (auto _ : state) {
        const OlsFit fit = ols(s.X, s.y, true);
        const HacCovariance cov = newey_west(fit.residuals, fit.design, 18);
        benchmark::DoNotOptimize(cov.cov(1, 1));
    }
}
BENCHMARK(BM_OlsWithNeweyWest)->Arg(384)->Arg(4000);

static void BM_HodrickCovariance(benchmark::State& state) {
    const Sample s = make_sample(384, 1);
    const OlsFit fit = ols(s.X, s.y, true);
    for (auto _ : state) {
        const HacCovariance cov = hodrick_covariance(fit, 12);
        benchmark::DoNotOptimize(cov.cov(1, 1));
    }
}
BENCHMARK(BM_HodrickCovariance);

static void BM_ExpandingOos(benchmark::State& state) {
    Rng rng(12);
    const int n = 384;
    Panel panel(
        [&] {
            std::vector<Date> d;
            for (int i = 0; i < n; ++i) d.push_back(add_months_eom({1988, 1, 31}, i));
            return d;
        }(),
        Frequency::monthly);
    std::vector<double> y(n), x(n);
    double xs = 0;
    for (int i = 0; i < n; ++i) {
        xs = 0.95 * xs + rng.normal();
        x[i] = xs;
        y[i] = 0.1 * xs + rng.normal();
    }
    panel.add_column("y", y);
    panel.add_column("x", x);
    RegressionSpec spec;
    spec.target = "y";
    spec.predictors = {"x"};
    const Date start = panel.dates()[120];
    for (auto _ : state) {
        const OosResult oos = oos_evaluate(panel, spec, start);
        benchmark::DoNotOptimize(oos.r2_oos);
    }
}
BENCHMARK(BM_ExpandingOos);
