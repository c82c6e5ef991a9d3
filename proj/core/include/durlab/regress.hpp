#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "durlab/kv.hpp"
#include "durlab/series.hpp"

namespace durlab {

/// One predictive regression. The target column holds the outcome over the
/// `horizon` grid periods following each row's date (forward-looking, as
/// produced by annual_log_return), so rows pair directly; horizon drives
/// the overlap corrections and out-of-sample information sets.
struct RegressionSpec {
    std::string target;
    std::vector<std::string> predictors;
    int horizon = 1;
    bool intercept = true;

    void validate() const;
};

struct OlsFit {
    std::vector<std::string> names;  // coefficient order: intercept first when present
    Eigen::VectorXd beta;
    Eigen::VectorXd residuals;
    Eigen::VectorXd fitted;
    Eigen::MatrixXd design;
    double r2 = 0.0;
    double r2_adjusted = 0.0;
    int n_obs = 0;
    int n_predictors = 0;  // excluding intercept
};

/// Least squares through a rank-revealing QR; throws DegeneracyError on a
/// rank-deficient design.
OlsFit ols(const Eigen::MatrixXd& predictors, const Eigen::VectorXd& target,
           bool intercept = true, const std::vector<std::string>& names = {});
OlsFit ols(const Panel& panel, const RegressionSpec& spec);

struct HacCovariance {
    Eigen::MatrixXd cov;
    bool floored = false;  // true when a negative eigenvalue was clipped to zero
};

/// Newey-West HAC covariance of beta with Bartlett weights w_j = 1 - j/(L+1).
/// lags = 0 collapses to the White heteroskedasticity-robust covariance.
HacCovariance newey_west(const Eigen::VectorXd& residuals, const Eigen::MatrixXd& design,
                         int lags);

/// Hodrick's 1B-style covariance for h-period overlapping regressions: the
/// h-period backward sum of regressors replaces residual autocovariance
/// summation, with per-period error variance proxied by u^2/h. Reduces to
/// White at horizon 1.
HacCovariance hodrick_covariance(const OlsFit& fit, int horizon);

/// First-order Stambaugh correction for a univariate predictive slope:
/// beta_adj = beta - (cov(eps, u)/var(u)) * (-(1 + 3 rho)/n), with u and rho
/// from the predictor's AR(1) fit.
double stambaugh_adjust(const Panel& panel, const RegressionSpec& spec);

/// Long-run variance of a scalar series with Bartlett weights (used by the
/// Clark-West statistic).
double bartlett_lrv(const Eigen::VectorXd& x, int lags);

/// Expanding-window out-of-sample evaluation. At each forecast row i the
/// regression and the historical-mean benchmark use only rows whose targets
/// are fully realized (index <= i - horizon).
struct OosResult {
    std::vector<Date> dates;
    Eigen::VectorXd realized;
    Eigen::VectorXd forecast;        // model
    Eigen::VectorXd benchmark;       // expanding historical mean
    double r2_oos = 0.0;
    int n_estimation_start = 0;      // R, in-sample size at the first forecast
    double pi() const { return static_cast<double>(realized.size()) / n_estimation_start; }
};
OosResult oos_evaluate(const Panel& panel, const RegressionSpec& spec, const Date& start);

/// Clark-McCracken encompassing test against the nested benchmark. p-values
/// come from an embedded critical-value table on a (pi = P/R, k) grid with
/// nearest-neighbor lookup and are reported as a range, e.g. "<0.05".
struct EncResult {
    double stat = 0.0;
    std::string pvalue_range;
};
EncResult enc_test(const Eigen::VectorXd& errors_model, const Eigen::VectorXd& errors_benchmark,
                   int k_extra, double pi);

/// Clark-West adjusted-MSPE test; one-sided normal p-value, NW-robust
/// variance of the adjusted loss differential.
struct CwResult {
    double stat = 0.0;
    double pvalue = 0.5;
};
CwResult cw_test(const Eigen::VectorXd& errors_model, const Eigen::VectorXd& errors_benchmark,
                 const Eigen::VectorXd& forecast_diff, int lags);
/// Overload using forecast_benchmark - forecast_model = errors_model - errors_benchmark.
CwResult cw_test(const Eigen::VectorXd& errors_model, const Eigen::VectorXd& errors_benchmark,
                 int lags);

/// Circular block bootstrap 95% interval for the adjusted R^2. Replications
/// draw from per-replication seed splits, so the result is identical for
/// any worker count (n_jobs <= 0 picks the hardware concurrency).
struct BootstrapCi {
    double r2_point = 0.0;
    double lo = 0.0;
    double hi = 0.0;
};
BootstrapCi bootstrap_r2_ci(const Panel& panel, const RegressionSpec& spec, int n_boot,
                            int block_len, std::uint64_t seed, int n_jobs = 1);

/// One regression per window of `window` consecutive rows; windows advance
/// one observation at a time. Degenerate windows produce NaN rows and a log
/// entry instead of failing the whole scan.
struct RollingResult {
    Panel table;  // beta_*, r2_adjusted, resid_std columns indexed by window-end date
    std::vector<std::string> log;
};
RollingResult rolling_regression(const Panel& panel, const RegressionSpec& spec, int window);

/// R^2 of the target against each candidate predictor subset, sorted by
/// unadjusted R^2 descending.
struct ScanRow {
    std::vector<std::string> predictors;
    double r2 = 0.0;
    double r2_adjusted = 0.0;
};
std::vector<ScanRow> predictor_scan(const Panel& panel, const std::string& target,
                                    const std::vector<std::vector<std::string>>& candidate_sets,
                                    int horizon = 1);

/// Full diagnostic set for one spec: coefficients with both SE families,
/// bias-adjusted slope, in/out-of-sample fit and the forecast comparison
/// tests.
struct ReportOptions {
    int nw_lags = 18;
    std::optional<Date> oos_start;
    int cw_lags = -1;  // -1: horizon - 1
};
struct RegressionReport {
    std::vector<std::string> coef_names;
    Eigen::VectorXd beta, se_nw, t_nw, se_hodrick, t_hodrick;
    bool has_stambaugh = false;
    double beta_stambaugh = 0.0;
    double r2 = 0.0, r2_adjusted = 0.0;
    int n_obs = 0;
    bool has_oos = false;
    double r2_oos = 0.0;
    double enc_stat = 0.0;
    std::string enc_pvalue_range;
    double cw_stat = 0.0, cw_pvalue = 0.5;

    KvFile to_kv() const;
};
RegressionReport run_report(const Panel& panel, const RegressionSpec& spec,
                            const ReportOptions& options);

}  // namespace durlab
