#include "durlab/timing.hpp"

#include <cmath>

#include "durlab/errors.hpp"

namespace durlab {

DatedSeries timing_weights(double mu, const DatedSeries& x, double sigma_eps,
                           double risk_aversion) {
    if (sigma_eps <= 0) throw ValidationError("sigma_eps must be positive");
    if (risk_aversion <= 0) throw ValidationError("risk aversion must be positive");
    std::vector<double> w(x.size());
    const double var = sigma_eps * sigma_eps;
    for (std::size_t i = 0; i < x.size(); ++i) w[i] = (mu + x[i]) / (risk_aversion * var);
    return DatedSeries(x.dates(), std::move(w), x.frequency());
}

double timing_sharpe(double s0, double r2) {
    if (s0 < 0) throw ValidationError("s0 must be >= 0");
    if (r2 < 0 || r2 >= 1.0) throw ValidationError("r2 must lie in [0, 1)");
    return std::sqrt((s0 * s0 + r2) / (1.0 - r2));
}

KvFile TimingResult::to_kv() const {
    KvFile kv;
    kv.set("sharpe_annualized", sharpe_annualized);
    kv.set("s0", s0);
    kv.set("improvement_pct", improvement_pct);
    kv.set("n_traded", static_cast<double>(strategy_returns.size()));
    kv.set("skipped_warmup", static_cast<double>(skipped_warmup));
    return kv;
}

namespace {

double sharpe_of(const std::vector<double>& returns, double periods_per_year) {
    if (returns.size() < 2) throw ValidationError("too few returns for a Sharpe ratio");
    double mean = 0;
    for (double r : returns) mean += r;
    mean /= returns.size();
    double var = 0;
    for (double r : returns) var += (r - mean) * (r - mean);
    var /= (returns.size() - 1);
    if (var <= 0) throw ValidationError("zero return variance");
    return mean / std::sqrt(var) * std::sqrt(periods_per_year);
}

}  // namespace

TimingResult backtest(const DatedSeries& forecasts, const DatedSeries& realized,
                      const BacktestOptions& options) {
    if (options.sigma_window < 2) throw ValidationError("sigma_window must be >= 2");
    Panel joined = align(forecasts, realized, "f", "r");
    const auto& f = joined.column("f");
    const auto& r = joined.column("r");
    const std::size_t n = joined.rows();
    if (n <= static_cast<std::size_t>(options.sigma_window))
        throw ValidationError("history shorter than the warm-up window");

    std::vector<Date> traded_dates;
    std::vector<double> weights, strat;
    double sq_err = 0.0;  // running sum of squared forecast errors
    int warm = 0;
    for (std::size_t t = 0; t < n; ++t) {
        if (t >= 1) {
            const double e = r[t - 1] - f[t - 1];
            sq_err += e * e;
        }
        if (t < static_cast<std::size_t>(options.sigma_window)) {
            ++warm;
            continue;
        }
        const double sigma2 = sq_err / static_cast<double>(t);
        if (sigma2 <= 0) {
            ++warm;
            continue;
        }
        double alpha = f[t] / (options.risk_aversion * sigma2);
        if (options.weight_clamp > 0)
            alpha = std::clamp(alpha, -options.weight_clamp, options.weight_clamp);
        traded_dates.push_back(joined.dates()[t]);
        weights.push_back(alpha);
        strat.push_back(alpha * r[t]);
    }
    if (strat.size() < 2) throw ValidationError("not enough post-warm-up observations");

    TimingResult out;
    out.skipped_warmup = warm;
    out.weights = DatedSeries(traded_dates, weights, joined.frequency());
    out.strategy_returns = DatedSeries(std::move(traded_dates), strat, joined.frequency());
    out.sharpe_annualized = sharpe_of(strat, options.periods_per_year);
    std::vector<double> bench(r.begin() + (n - strat.size()), r.end());
    out.s0 = sharpe_of(bench, options.periods_per_year);
    out.improvement_pct = out.s0 > 0 ? 100.0 * (out.sharpe_annualized / out.s0 - 1.0) : 0.0;
    return out;
}

}  // namespace durlab
