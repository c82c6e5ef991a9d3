#pragma once

#include "durlab/kv.hpp"
#include "durlab/series.hpp"

namespace durlab {

/// Mean-variance weight on the risky asset for a unit-risk-aversion
/// investor: alpha_t = (mu + x_t) / sigma_eps^2.
DatedSeries timing_weights(double mu, const DatedSeries& x, double sigma_eps,
                           double risk_aversion = 1.0);

/// Maps a buy-and-hold Sharpe ratio and a predictive R^2 into the
/// market-timing Sharpe ratio: s1 = sqrt((s0^2 + r2) / (1 - r2)).
double timing_sharpe(double s0, double r2);

struct TimingResult {
    DatedSeries weights;
    DatedSeries strategy_returns;
    double sharpe_annualized = 0.0;
    double s0 = 0.0;               // buy-and-hold Sharpe, annualized
    double improvement_pct = 0.0;  // 100 (sharpe/s0 - 1)
    int skipped_warmup = 0;

    KvFile to_kv() const;
};

struct BacktestOptions {
    int sigma_window = 12;          // minimum history before trading starts
    double periods_per_year = 12.0; // annualization: sqrt of this
    double risk_aversion = 1.0;
    double weight_clamp = 0.0;      // 0 = unclamped; otherwise |alpha| cap
};

/// Trades the forecasts against realized returns. sigma_eps is estimated on
/// an expanding window of past forecast errors only, so there is no
/// look-ahead; dates before the warm-up are skipped and counted.
TimingResult backtest(const DatedSeries& forecasts, const DatedSeries& realized,
                      const BacktestOptions& options = {});

}  // namespace durlab
