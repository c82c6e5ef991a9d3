#include "durlab/regress.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <set>
#include <thread>

#include "durlab/errors.hpp"
#include "durlab/rng.hpp"

namespace durlab {

void RegressionSpec::validate() const {
    if (target.empty()) throw ValidationError("spec needs a target column");
    if (predictors.empty()) throw ValidationError("spec needs at least one predictor");
    std::set<std::string> uniq(predictors.begin(), predictors.end());
    if (uniq.size() != predictors.size()) throw ValidationError("duplicate predictor");
    if (horizon < 1) throw ValidationError("horizon must be >= 1");
}

namespace {

Eigen::MatrixXd build_design(const Eigen::MatrixXd& predictors, bool intercept) {
    if (!intercept) return predictors;
    Eigen::MatrixXd X(predictors.rows(), predictors.cols() + 1);
    X.col(0).setOnes();
    X.rightCols(predictors.cols()) = predictors;
    return X;
}

Eigen::MatrixXd panel_matrix(const Panel& panel, const std::vector<std::string>& cols) {
    Eigen::MatrixXd m(panel.rows(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        const auto& v = panel.column(cols[c]);
        for (std::size_t r = 0; r < v.size(); ++r) m(r, c) = v[r];
    }
    return m;
}

}  // namespace

OlsFit ols(const Eigen::MatrixXd& predictors, const Eigen::VectorXd& target, bool intercept,
           const std::vector<std::string>& names) {
    if (predictors.rows() != target.size()) throw ValidationError("design/target size mismatch");
    const Eigen::MatrixXd X = build_design(predictors, intercept);
    const Eigen::Index n = X.rows(), k = X.cols();
    if (n < k + 1) throw ValidationError("not enough rows for the requested design");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < k)
        throw DegeneracyError("design matrix rank " + std::to_string(qr.rank()) + " < " +
                                  std::to_string(k),
                              static_cast<int>(qr.rank()));

    OlsFit fit;
    fit.beta = qr.solve(target);
    fit.fitted = X * fit.beta;
    fit.residuals = target - fit.fitted;
    fit.design = X;
    fit.n_obs = static_cast<int>(n);
    fit.n_predictors = static_cast<int>(predictors.cols());

    const double mean_y = target.mean();
    const double tss = (target.array() - mean_y).matrix().squaredNorm();
    const double rss = fit.residuals.squaredNorm();
    fit.r2 = tss > 0 ? 1.0 - rss / tss : 1.0;
    const double dof = static_cast<double>(n - fit.n_predictors - (intercept ? 1 : 0));
    fit.r2_adjusted =
        dof > 0 ? 1.0 - (1.0 - fit.r2) * (static_cast<double>(n) - 1.0) / dof : fit.r2;
    fit.r2_adjusted = std::max(fit.r2_adjusted, -1.0);  // floor the reported value

    fit.names.clear();
    if (intercept) fit.names.push_back("alpha");
    for (Eigen::Index i = 0; i < predictors.cols(); ++i)
        fit.names.push_back(i < static_cast<Eigen::Index>(names.size())
                                ? names[i]
                                : "x" + std::to_string(i + 1));
    return fit;
}

OlsFit ols(const Panel& panel, const RegressionSpec& spec) {
    spec.validate();
    const Eigen::MatrixXd X = panel_matrix(panel, spec.predictors);
    Eigen::VectorXd y(panel.rows());
    const auto& tv = panel.column(spec.target);
    for (std::size_t i = 0; i < tv.size(); ++i) y[i] = tv[i];
    if (static_cast<int>(panel.rows()) < static_cast<int>(spec.predictors.size()) + 2)
        throw ValidationError("too few aligned rows for regression");
    return ols(X, y, spec.intercept, spec.predictors);
}

namespace {

HacCovariance sandwich(const Eigen::MatrixXd& design, const Eigen::MatrixXd& meat) {
    const Eigen::MatrixXd bread = (design.transpose() * design).inverse();
    Eigen::MatrixXd cov = bread * meat * bread;
    cov = 0.5 * (cov + cov.transpose()).eval();

    HacCovariance out;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    if (es.eigenvalues().minCoeff() < 0) {
        Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
        cov = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
        out.floored = true;
    }
    out.cov = cov;
    return out;
}

}  // namespace

HacCovariance newey_west(const Eigen::VectorXd& residuals, const Eigen::MatrixXd& design,
                         int lags) {
    const Eigen::Index n = design.rows(), k = design.cols();
    if (lags < 0) throw ValidationError("lags must be >= 0");
    if (lags >= n) throw ValidationError("lags must be < n");

    Eigen::MatrixXd scores(n, k);
    for (Eigen::Index t = 0; t < n; ++t) scores.row(t) = residuals[t] * design.row(t);

    Eigen::MatrixXd S = scores.transpose() * scores;  // j = 0 term
    for (int j = 1; j <= lags; ++j) {
        const double w = 1.0 - static_cast<double>(j) / (lags + 1);
        Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(k, k);
        for (Eigen::Index t = j; t < n; ++t)
            gamma += scores.row(t).transpose() * scores.row(t - j);
        S += w * (gamma + gamma.transpose());
    }
    return sandwich(design, S);
}

HacCovariance hodrick_covariance(const OlsFit& fit, int horizon) {
    if (horizon < 1) throw ValidationError("horizon must be >= 1");
    const Eigen::Index n = fit.design.rows(), k = fit.design.cols();
    if (n <= horizon) throw ValidationError("insufficient pre-sample for the h-period regressor sum");

    const Eigen::Index n_eff = n - horizon + 1;
    Eigen::MatrixXd S = Eigen::MatrixXd::Zero(k, k);
    for (Eigen::Index t = horizon - 1; t < n; ++t) {
        Eigen::RowVectorXd q = Eigen::RowVectorXd::Zero(k);
        for (int j = 0; j < horizon; ++j) q += fit.design.row(t - j);
        const double e2 = fit.residuals[t] * fit.residuals[t] / horizon;
        S += e2 * q.transpose() * q;
    }

    // Var(beta) = Z^{-1} (S / n_eff) Z^{-1} / n with Z = X'X / n; at h = 1
    // this is exactly the White sandwich
    const Eigen::MatrixXd Z = fit.design.transpose() * fit.design / static_cast<double>(n);
    const Eigen::MatrixXd Zinv = Z.inverse();
    Eigen::MatrixXd cov =
        Zinv * (S / static_cast<double>(n_eff)) * Zinv / static_cast<double>(n);
    cov = 0.5 * (cov + cov.transpose()).eval();

    HacCovariance out;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
    if (es.eigenvalues().minCoeff() < 0) {
        Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
        cov = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
        out.floored = true;
    }
    out.cov = cov;
    return out;
}

double stambaugh_adjust(const Panel& panel, const RegressionSpec& spec) {
    spec.validate();
    if (spec.predictors.size() != 1)
        throw ValidationError("Stambaugh adjustment is defined for a single predictor");

    const auto& xv = panel.column(spec.predictors.front());
    const Eigen::Index n = static_cast<Eigen::Index>(xv.size());
    {
        double mean = 0, var = 0;
        for (double v : xv) mean += v;
        mean /= n;
        for (double v : xv) var += (v - mean) * (v - mean);
        if (var <= 0) throw ValidationError("predictor AR(1) fit failed (constant series)");
    }
    const OlsFit main = ols(panel, spec);

    // AR(1) of the predictor
    Eigen::MatrixXd xlag(n - 1, 1);
    Eigen::VectorXd xnow(n - 1);
    for (Eigen::Index t = 1; t < n; ++t) {
        xlag(t - 1, 0) = xv[t - 1];
        xnow[t - 1] = xv[t];
    }
    OlsFit ar;
    try {
        ar = ols(xlag, xnow, true);
    } catch (const DegeneracyError&) {
        throw ValidationError("predictor AR(1) fit failed (constant series?)");
    }
    const double rho = ar.beta[1];
    const Eigen::VectorXd& u = ar.residuals;  // innovations at t = 1..n-1

    // pair the h-period residual at t with the first innovation inside the
    // window, u_{t+1}
    const Eigen::Index m = std::min<Eigen::Index>(main.residuals.size(), u.size());
    double cov = 0, var = 0, mu_e = 0, mu_u = 0;
    for (Eigen::Index t = 0; t < m; ++t) {
        mu_e += main.residuals[t];
        mu_u += u[t];
    }
    mu_e /= m;
    mu_u /= m;
    for (Eigen::Index t = 0; t < m; ++t) {
        cov += (main.residuals[t] - mu_e) * (u[t] - mu_u);
        var += (u[t] - mu_u) * (u[t] - mu_u);
    }
    if (var <= 0) throw ValidationError("predictor innovations are degenerate");
    const double gamma = cov / var;

    const double slope = main.beta[spec.intercept ? 1 : 0];
    return slope - gamma * (-(1.0 + 3.0 * rho) / static_cast<double>(main.n_obs));
}

double bartlett_lrv(const Eigen::VectorXd& x, int lags) {
    const Eigen::Index n = x.size();
    if (n < 2) throw ValidationError("series too short");
    const double mean = x.mean();
    double lrv = 0;
    for (Eigen::Index t = 0; t < n; ++t) lrv += (x[t] - mean) * (x[t] - mean);
    for (int j = 1; j <= std::min<int>(lags, static_cast<int>(n) - 1); ++j) {
        const double w = 1.0 - static_cast<double>(j) / (lags + 1);
        double gamma = 0;
        for (Eigen::Index t = j; t < n; ++t) gamma += (x[t] - mean) * (x[t - j] - mean);
        lrv += 2.0 * w * gamma;
    }
    return lrv / n;
}

BootstrapCi bootstrap_r2_ci(const Panel& panel, const RegressionSpec& spec, int n_boot,
                            int block_len, std::uint64_t seed, int n_jobs) {
    spec.validate();
    if (n_boot < 200) throw ValidationError("n_boot must be >= 200");
    const Eigen::Index n = panel.rows();
    if (block_len < 1 || block_len >= static_cast<int>(n))
        throw ValidationError("block length must be in [1, n)");

    const Eigen::MatrixXd X = panel_matrix(panel, spec.predictors);
    Eigen::VectorXd y(n);
    const auto& tv = panel.column(spec.target);
    for (Eigen::Index i = 0; i < n; ++i) y[i] = tv[i];

    const OlsFit full = ols(X, y, spec.intercept);

    std::vector<double> draws(n_boot);
    auto run_rep = [&](int b, Eigen::MatrixXd& Xb, Eigen::VectorXd& yb) {
        Rng rng(Rng::split_seed(seed, static_cast<std::uint64_t>(b)));
        Eigen::Index filled = 0;
        while (filled < n) {
            const Eigen::Index start = static_cast<Eigen::Index>(rng.uniform() * n);
            for (int j = 0; j < block_len && filled < n; ++j, ++filled) {
                const Eigen::Index src = (start + j) % n;
                Xb.row(filled) = X.row(src);
                yb[filled] = y[src];
            }
        }
        try {
            return ols(Xb, yb, spec.intercept).r2_adjusted;
        } catch (const DegeneracyError&) {
            return full.r2_adjusted;  // degenerate resample, keep the point value
        }
    };

    int jobs = n_jobs > 0 ? n_jobs
                          : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<int>(jobs, n_boot);
    if (jobs <= 1) {
        Eigen::MatrixXd Xb(n, X.cols());
        Eigen::VectorXd yb(n);
        for (int b = 0; b < n_boot; ++b) draws[b] = run_rep(b, Xb, yb);
    } else {
        std::vector<std::thread> workers;
        std::atomic<int> next{0};
        for (int w = 0; w < jobs; ++w) {
            workers.emplace_back([&] {
                Eigen::MatrixXd Xb(n, X.cols());
                Eigen::VectorXd yb(n);
                for (int b = next.fetch_add(1); b < n_boot; b = next.fetch_add(1))
                    draws[b] = run_rep(b, Xb, yb);
            });
        }
        for (auto& t : workers) t.join();
    }
    std::sort(draws.begin(), draws.end());
    auto pct = [&](double q) {
        const double pos = q * (draws.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, draws.size() - 1);
        return draws[lo] * (1 - (pos - lo)) + draws[hi] * (pos - lo);
    };
    return {full.r2_adjusted, pct(0.025), pct(0.975)};
}

RollingResult rolling_regression(const Panel& panel, const RegressionSpec& spec, int window) {
    spec.validate();
    const int n = static_cast<int>(panel.rows());
    if (window < static_cast<int>(spec.predictors.size()) + 2 || window > n)
        throw ValidationError("window must be within [k+2, n]");

    const int n_out = n - window + 1;
    std::vector<Date> dates(panel.dates().end() - n_out, panel.dates().end());
    RollingResult out;
    Panel table(std::move(dates), panel.frequency());

    const std::size_t n_coef = spec.predictors.size() + (spec.intercept ? 1 : 0);
    std::vector<std::vector<double>> betas(n_coef, std::vector<double>(n_out));
    std::vector<double> r2(n_out), resid_std(n_out);
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (int w = 0; w < n_out; ++w) {
        const Panel win = panel.slice(w, w + window);
        try {
            const OlsFit fit = ols(win, spec);
            for (std::size_t c = 0; c < n_coef; ++c) betas[c][w] = fit.beta[c];
            r2[w] = fit.r2_adjusted;
            resid_std[w] =
                std::sqrt(fit.residuals.squaredNorm() / std::max(1, fit.n_obs - (int)n_coef));
        } catch (const Error& e) {
            for (std::size_t c = 0; c < n_coef; ++c) betas[c][w] = nan;
            r2[w] = nan;
            resid_std[w] = nan;
            out.log.push_back(table.dates()[w].to_string() + ": " + e.what());
        }
    }

    std::vector<std::string> coef_names;
    if (spec.intercept) coef_names.push_back("alpha");
    for (const auto& p : spec.predictors) coef_names.push_back(p);
    for (std::size_t c = 0; c < n_coef; ++c)
        table.add_column("beta_" + coef_names[c], std::move(betas[c]));
    table.add_column("r2_adjusted", std::move(r2));
    table.add_column("resid_std", std::move(resid_std));
    out.table = std::move(table);
    return out;
}

std::vector<ScanRow> predictor_scan(const Panel& panel, const std::string& target,
                                    const std::vector<std::vector<std::string>>& candidate_sets,
                                    int horizon) {
    std::vector<ScanRow> rows;
    for (const auto& preds : candidate_sets) {
        RegressionSpec spec;
        spec.target = target;
        spec.predictors = preds;
        spec.horizon = horizon;
        const OlsFit fit = ols(panel, spec);
        rows.push_back({preds, fit.r2, fit.r2_adjusted});
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const ScanRow& a, const ScanRow& b) { return a.r2 > b.r2; });
    return rows;
}

}  // namespace durlab
