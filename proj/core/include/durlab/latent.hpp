#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "durlab/kv.hpp"
#include "durlab/series.hpp"

namespace durlab {

enum class SystemVariant { Y1Y3, Y1Y2 };

/// Pooled regression estimate of the persistence of expected cash-flow
/// growth from analyst forecast revisions: y = (1 - rho_z) g + rho_z x.
/// Y1Y3 stacks (e2 on e1) and (e3 on e2); Y1Y2 uses only the first pair.
struct RhoZSystemFit {
    double rho_z_hat = 0.0;
    double intercept_hat = 0.0;  // (1 - rho_z) g
    double se_rho_z = 0.0;
    double t_rho_z = 0.0;
    int n = 0;  // stacked observations
    double r2 = 0.0;
    SystemVariant variant = SystemVariant::Y1Y3;

    KvFile to_kv() const;
};

/// SEs are cross-equation-robust HAC: moment conditions are summed across
/// equations per date, then Newey-West smoothed over dates with hac_lags.
RhoZSystemFit estimate_rhoz_system(const Panel& forecast_panel, SystemVariant variant,
                                   int hac_lags);

/// OLS of ln(1 + LTG) on the one-year growth forecast with NW errors.
struct LtgFit {
    double slope = 0.0;  // rho_z^{LT}
    double intercept = 0.0;
    double t_slope = 0.0;
    double se_slope = 0.0;
    int n = 0;
    double r2 = 0.0;
};
LtgFit estimate_rhoz_ltg(const DatedSeries& ltg, const DatedSeries& e1, int hac_lags);

/// Exact Gaussian log-likelihood of
///   dd_{t+1} = g + z_t + sigma_d eps^d_{t+1},
///   z_{t+1}  = rho_z z_t + sigma_z eps^z_{t+1},
/// with corr(eps^d, eps^z) fixed at `corr` and z initialized at its
/// stationary law.
double kalman_loglik(double g, double rho_z, double sigma_d, double sigma_z, double corr,
                     const std::vector<double>& dg);

/// Profile log-likelihood at a pinned rho_z: the maximum of kalman_loglik
/// over (g, sigma_d, sigma_z). Interval statements about rho_z use the
/// likelihood-ratio inversion of this profile; the Wald SEs in StateSpaceFit
/// sit next to the point estimates in the printed fit tables.
double kalman_profile_loglik(const std::vector<double>& dg, double rho_z, double corr);

struct StateSpaceFit {
    double rho_z_hat = 0, g_hat = 0, sigma_d_hat = 0, sigma_z_hat = 0;
    double se_rho_z = 0, se_g = 0, se_sigma_d = 0, se_sigma_z = 0;
    double loglik = 0, aic = 0, bic = 0;
    bool restricted = false;  // rho_z pinned at 0
    double shock_correlation = 0.0;
    bool converged = false;

    KvFile to_kv() const;
};

/// Maximum likelihood via derivative-free local search with 10 multistarts;
/// SEs from the numerical Hessian at the optimum. One fit per entry of
/// corr_grid (shock correlation is fixed, not estimated).
std::vector<StateSpaceFit> fit_state_space(const std::vector<double>& dg, bool restricted,
                                           const std::vector<double>& corr_grid = {0.0});

enum class ArmaModel { AR1, MA1 };

struct ArmaFit {
    ArmaModel model = ArmaModel::AR1;
    double coef = 0.0;  // gamma (AR1) or chi (MA1)
    double g = 0.0;
    double sigma_d = 0.0;
    double se_coef = 0.0, se_g = 0.0;
    double loglik = 0, aic = 0, bic = 0;
    bool converged = false;

    KvFile to_kv() const;
};

/// Exact Gaussian MLE of the AR(1) (stationary initial condition) or MA(1)
/// (state-space form) model of dividend growth.
ArmaFit fit_arma(const std::vector<double>& dg, ArmaModel model);

/// estimate_rhoz_system per rolling window; degenerate windows yield NaN
/// plus a log line.
struct RollingRhoZ {
    DatedSeries series;  // rho_z_hat at window-end dates (NaNs excluded)
    std::vector<Date> all_dates;
    std::vector<double> all_values;  // NaN on degenerate windows
    std::vector<std::string> log;
};
RollingRhoZ rolling_rhoz(const Panel& forecast_panel, int window, SystemVariant variant,
                         int hac_lags = 18);

/// Text table with the unrestricted/restricted state-space fits next to the
/// MA(1) and AR(1) baselines: coefficient rows with t-statistics in square
/// brackets, then LogL / AIC / BIC.
std::string growth_persistence_table(const StateSpaceFit& unrestricted,
                                     const StateSpaceFit& restricted, const ArmaFit& ma1,
                                     const ArmaFit& ar1);

/// Pearson correlation plus NW-robust OLS of prediction errors on the
/// rolling rho_z estimates.
struct ErrorLinkResult {
    double correlation = 0.0;
    double slope = 0.0;
    double intercept = 0.0;
    double t_slope = 0.0;
    int n = 0;
};
ErrorLinkResult error_link(const DatedSeries& rhoz_series, const DatedSeries& prediction_errors,
                           int hac_lags);

}  // namespace durlab
