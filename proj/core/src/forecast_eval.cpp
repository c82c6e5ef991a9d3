#include <algorithm>
#include <cmath>

#include "durlab/csv.hpp"
#include "durlab/errors.hpp"
#include "durlab/regress.hpp"

namespace durlab {

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

Eigen::MatrixXd predictors_matrix(const Panel& panel, const std::vector<std::string>& cols) {
    Eigen::MatrixXd m(panel.rows(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const auto& v = panel.column(cols[c]);
        for (std::size_t r = 0; r < v.size(); ++r) m(r, c) = v[r];
    }
    return m;
}

}  // namespace

OosResult oos_evaluate(const Panel& panel, const RegressionSpec& spec, const Date& start) {
    spec.validate();
    const Eigen::Index n = panel.rows();
    const Eigen::MatrixXd X = predictors_matrix(panel, spec.predictors);
    Eigen::VectorXd y(n);
    const auto& tv = panel.column(spec.target);
    for (Eigen::Index i = 0; i < n; ++i) y[i] = tv[i];

    Eigen::Index first = 0;
    while (first < n && panel.dates()[first] < start) ++first;
    if (first >= n) throw ValidationError("start date is past the sample end");
    const Eigen::Index usable = first - spec.horizon;
    if (usable < 24)
        throw ValidationError("need at least 24 realized observations before the start date, have " +
                              std::to_string(std::max<Eigen::Index>(usable, 0)));

    OosResult out;
    out.n_estimation_start = static_cast<int>(usable);
    std::vector<double> realized, forecast, benchmark;
    for (Eigen::Index i = first; i < n; ++i) {
        const Eigen::Index m = i - spec.horizon + 1;  // rows with realized targets
        const OlsFit fit = ols(X.topRows(m), y.head(m), spec.intercept);
        Eigen::VectorXd xrow(X.cols() + (spec.intercept ? 1 : 0));
        if (spec.intercept) {
            xrow[0] = 1.0;
            xrow.tail(X.cols()) = X.row(i);
        } else {
            xrow = X.row(i);
        }
        realized.push_back(y[i]);
        forecast.push_back(fit.beta.dot(xrow));
        benchmark.push_back(y.head(m).mean());
        out.dates.push_back(panel.dates()[i]);
    }

    const Eigen::Index P = static_cast<Eigen::Index>(realized.size());
    out.realized = Eigen::Map<Eigen::VectorXd>(realized.data(), P);
    out.forecast = Eigen::Map<Eigen::VectorXd>(forecast.data(), P);
    out.benchmark = Eigen::Map<Eigen::VectorXd>(benchmark.data(), P);

    const double sse_model = (out.realized - out.forecast).squaredNorm();
    const double sse_bench = (out.realized - out.benchmark).squaredNorm();
    if (sse_bench <= 0) throw ValidationError("benchmark squared error is zero");
    out.r2_oos = 1.0 - sse_model / sse_bench;
    return out;
}

namespace {

// Critical values of the encompassing statistic under the nested null,
// recursive scheme, on a grid of pi = P/R and k extra regressors.
// Frozen from a 40000-replication Monte Carlo of the null design
// (tools/make_enc_table.cpp regenerates them).
struct EncTable {
    static constexpr int n_pi = 5;
    static constexpr int n_k = 3;
    static constexpr double pi_grid[n_pi] = {0.2, 0.5, 1.0, 2.0, 4.0};
    // [k-1][pi] at the 10%, 5%, 1% levels
    static constexpr double cv10[n_k][n_pi] = {
        {0.526, 0.834, 1.081, 1.370, 1.659},
        {0.852, 1.334, 1.743, 2.178, 2.612},
        {1.126, 1.675, 2.201, 2.734, 3.225},
    };
    static constexpr double cv05[n_k][n_pi] = {
        {0.907, 1.391, 1.825, 2.260, 2.765},
        {1.363, 2.093, 2.663, 3.285, 3.918},
        {1.764, 2.560, 3.264, 4.008, 4.724},
    };
    static constexpr double cv01[n_k][n_pi] = {
        {2.103, 2.988, 3.718, 4.626, 5.429},
        {2.889, 4.081, 4.786, 6.010, 7.206},
        {3.558, 4.669, 5.826, 7.173, 8.312},
    };
};
constexpr double EncTable::pi_grid[];
constexpr double EncTable::cv10[][EncTable::n_pi];
constexpr double EncTable::cv05[][EncTable::n_pi];
constexpr double EncTable::cv01[][EncTable::n_pi];

int nearest_pi_index(double pi) {
    int best = 0;
    double best_d = std::abs(std::log(std::max(pi, 1e-6)) - std::log(EncTable::pi_grid[0]));
    for (int i = 1; i < EncTable::n_pi; ++i) {
        const double d = std::abs(std::log(std::max(pi, 1e-6)) - std::log(EncTable::pi_grid[i]));
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

}  // namespace

EncResult enc_test(const Eigen::VectorXd& errors_model, const Eigen::VectorXd& errors_benchmark,
                   int k_extra, double pi) {
    if (errors_model.size() != errors_benchmark.size())
        throw ValidationError("error series must have equal length");
    const Eigen::Index P = errors_model.size();
    if (P < 2) throw ValidationError("too few forecasts");
    if (k_extra < 1) throw ValidationError("k_extra must be >= 1");

    const double mse_model = errors_model.squaredNorm() / P;
    const double mse_bench = errors_benchmark.squaredNorm() / P;
    if (mse_bench <= 0 || mse_model <= 0) throw ValidationError("zero mean squared error");

    const double cbar =
        (errors_benchmark.squaredNorm() - errors_benchmark.dot(errors_model)) / P;
    EncResult out;
    out.stat = static_cast<double>(P) * cbar / mse_model;

    const int ki = std::clamp(k_extra, 1, EncTable::n_k) - 1;
    const int pi_i = nearest_pi_index(pi);
    if (out.stat >= EncTable::cv01[ki][pi_i])
        out.pvalue_range = "<0.01";
    else if (out.stat >= EncTable::cv05[ki][pi_i])
        out.pvalue_range = "<0.05";
    else if (out.stat >= EncTable::cv10[ki][pi_i])
        out.pvalue_range = "<0.10";
    else
        out.pvalue_range = ">0.10";
    return out;
}

CwResult cw_test(const Eigen::VectorXd& errors_model, const Eigen::VectorXd& errors_benchmark,
                 const Eigen::VectorXd& forecast_diff, int lags) {
    if (errors_model.size() != errors_benchmark.size() ||
        errors_model.size() != forecast_diff.size())
        throw ValidationError("series must have equal length");
    const Eigen::Index P = errors_model.size();
    if (P < 2) throw ValidationError("too few forecasts");
    if (errors_benchmark.squaredNorm() <= 0) throw ValidationError("zero benchmark MSE");

    Eigen::VectorXd f(P);
    for (Eigen::Index t = 0; t < P; ++t)
        f[t] = errors_benchmark[t] * errors_benchmark[t] - errors_model[t] * errors_model[t] +
               forecast_diff[t] * forecast_diff[t];

    const double fbar = f.mean();
    const double lrv = bartlett_lrv(f, std::max(0, lags));
    CwResult out;
    if (lrv <= 0) {
        out.stat = 0.0;
        out.pvalue = 0.5;
        return out;
    }
    out.stat = fbar / std::sqrt(lrv / P);
    out.pvalue = 1.0 - normal_cdf(out.stat);
    return out;
}

CwResult cw_test(const Eigen::VectorXd& errors_model, const Eigen::VectorXd& errors_benchmark,
                 int lags) {
    if (errors_model.size() != errors_benchmark.size())
        throw ValidationError("series must have equal length");
    // benchmark forecast - model forecast = model error - benchmark error
    return cw_test(errors_model, errors_benchmark,
                   (errors_model - errors_benchmark).eval(), lags);
}

KvFile RegressionReport::to_kv() const {
    KvFile kv;
    kv.set("n_obs", static_cast<double>(n_obs));
    for (std::size_t i = 0; i < coef_names.size(); ++i) {
        kv.set("beta_" + coef_names[i], beta[i]);
        kv.set("se_nw_" + coef_names[i], se_nw[i]);
        kv.set("t_nw_" + coef_names[i], t_nw[i]);
        kv.set("se_hodrick_" + coef_names[i], se_hodrick[i]);
        kv.set("t_hodrick_" + coef_names[i], t_hodrick[i]);
    }
    if (has_stambaugh) kv.set("beta_stambaugh", beta_stambaugh);
    kv.set("r2", r2);
    kv.set("r2_adjusted", r2_adjusted);
    if (has_oos) {
        kv.set("r2_oos", r2_oos);
        kv.set("enc_stat", enc_stat);
        kv.set("p_enc", enc_pvalue_range);
        kv.set("cw_stat", cw_stat);
        kv.set("p_cw", cw_pvalue);
    }
    return kv;
}

RegressionReport run_report(const Panel& panel, const RegressionSpec& spec,
                            const ReportOptions& options) {
    const OlsFit fit = ols(panel, spec);

    RegressionReport rep;
    rep.coef_names = fit.names;
    rep.beta = fit.beta;
    rep.r2 = fit.r2;
    rep.r2_adjusted = fit.r2_adjusted;
    rep.n_obs = fit.n_obs;

    const HacCovariance nw = newey_west(fit.residuals, fit.design, options.nw_lags);
    const HacCovariance hod = hodrick_covariance(fit, spec.horizon);
    const Eigen::Index k = fit.beta.size();
    rep.se_nw.resize(k);
    rep.t_nw.resize(k);
    rep.se_hodrick.resize(k);
    rep.t_hodrick.resize(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        rep.se_nw[i] = std::sqrt(std::max(0.0, nw.cov(i, i)));
        rep.se_hodrick[i] = std::sqrt(std::max(0.0, hod.cov(i, i)));
        rep.t_nw[i] = rep.se_nw[i] > 0 ? fit.beta[i] / rep.se_nw[i] : 0.0;
        rep.t_hodrick[i] = rep.se_hodrick[i] > 0 ? fit.beta[i] / rep.se_hodrick[i] : 0.0;
    }

    if (spec.predictors.size() == 1) {
        try {
            rep.beta_stambaugh = stambaugh_adjust(panel, spec);
            rep.has_stambaugh = true;
        } catch (const Error&) {
            rep.has_stambaugh = false;
        }
    }

    if (options.oos_start) {
        const OosResult oos = oos_evaluate(panel, spec, *options.oos_start);
        rep.has_oos = true;
        rep.r2_oos = oos.r2_oos;
        const Eigen::VectorXd em = oos.realized - oos.forecast;
        const Eigen::VectorXd eb = oos.realized - oos.benchmark;
        const EncResult enc =
            enc_test(em, eb, static_cast<int>(spec.predictors.size()), oos.pi());
        rep.enc_stat = enc.stat;
        rep.enc_pvalue_range = enc.pvalue_range;
        const int cw_lags = options.cw_lags >= 0 ? options.cw_lags : spec.horizon - 1;
        const CwResult cw = cw_test(em, eb, cw_lags);
        rep.cw_stat = cw.stat;
        rep.cw_pvalue = cw.pvalue;
    }
    return rep;
}

}  // namespace durlab
