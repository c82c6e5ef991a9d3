#include "durlab/latent.hpp"

#include <cmath>

#include "durlab/errors.hpp"
#include "durlab/optim.hpp"
#include "durlab/regress.hpp"
#include "durlab/rng.hpp"

namespace durlab {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

struct StackedSystem {
    Eigen::VectorXd y, x;
    std::vector<int> date_of_row;  // row -> date index
    int n_dates = 0;
};

StackedSystem stack_system(const Panel& panel, SystemVariant variant) {
    for (const char* col : {"e1", "e2", "e3"})
        if (!panel.has_column(col) && !(variant == SystemVariant::Y1Y2 && std::string(col) == "e3"))
            throw ValidationError("forecast panel missing column '" + std::string(col) + "'");
    const int n = static_cast<int>(panel.rows());
    if (n < 30) throw ValidationError("need at least 30 dates");

    const auto& e1 = panel.column("e1");
    const auto& e2 = panel.column("e2");
    const int eqs = variant == SystemVariant::Y1Y3 ? 2 : 1;

    StackedSystem s;
    s.n_dates = n;
    s.y.resize(n * eqs);
    s.x.resize(n * eqs);
    s.date_of_row.resize(n * eqs);
    for (int t = 0; t < n; ++t) {
        s.y[t] = e2[t];
        s.x[t] = e1[t];
        s.date_of_row[t] = t;
    }
    if (eqs == 2) {
        const auto& e3 = panel.column("e3");
        for (int t = 0; t < n; ++t) {
            s.y[n + t] = e3[t];
            s.x[n + t] = e2[t];
            s.date_of_row[n + t] = t;
        }
    }
    return s;
}

}  // namespace

KvFile RhoZSystemFit::to_kv() const {
    KvFile kv;
    kv.set("rho_z", rho_z_hat);
    kv.set("intercept", intercept_hat);
    kv.set("se_rho_z", se_rho_z);
    kv.set("t_rho_z", t_rho_z);
    kv.set("n", static_cast<double>(n));
    kv.set("r2", r2);
    kv.set("variant", variant == SystemVariant::Y1Y3 ? "Y1Y3" : "Y1Y2");
    return kv;
}

RhoZSystemFit estimate_rhoz_system(const Panel& forecast_panel, SystemVariant variant,
                                   int hac_lags) {
    const StackedSystem s = stack_system(forecast_panel, variant);
    const Eigen::Index rows = s.y.size();

    Eigen::MatrixXd X(rows, 1);
    X.col(0) = s.x;
    const OlsFit fit = ols(X, s.y, true);

    // Driscoll-Kraay: sum scores within each date, Newey-West across dates
    const Eigen::Index k = fit.design.cols();
    Eigen::MatrixXd date_scores = Eigen::MatrixXd::Zero(s.n_dates, k);
    for (Eigen::Index r = 0; r < rows; ++r)
        date_scores.row(s.date_of_row[r]) += fit.residuals[r] * fit.design.row(r);

    Eigen::MatrixXd S = date_scores.transpose() * date_scores;
    const int lags = std::min(hac_lags, s.n_dates - 1);
    for (int j = 1; j <= lags; ++j) {
        const double w = 1.0 - static_cast<double>(j) / (lags + 1);
        Eigen::MatrixXd gamma = Eigen::MatrixXd::Zero(k, k);
        for (int t = j; t < s.n_dates; ++t)
            gamma += date_scores.row(t).transpose() * date_scores.row(t - j);
        S += w * (gamma + gamma.transpose());
    }
    const Eigen::MatrixXd bread = (fit.design.transpose() * fit.design).inverse();
    const Eigen::MatrixXd cov = bread * S * bread;

    RhoZSystemFit out;
    out.variant = variant;
    out.intercept_hat = fit.beta[0];
    out.rho_z_hat = fit.beta[1];
    out.se_rho_z = std::sqrt(std::max(0.0, cov(1, 1)));
    out.t_rho_z = out.se_rho_z > 0 ? out.rho_z_hat / out.se_rho_z : 0.0;
    out.n = static_cast<int>(rows);
    out.r2 = fit.r2;
    return out;
}

LtgFit estimate_rhoz_ltg(const DatedSeries& ltg, const DatedSeries& e1, int hac_lags) {
    Panel joined = align(ltg, e1, "ltg", "e1");
    if (joined.rows() < 10) throw ValidationError("too few aligned observations");
    const auto& lv = joined.column("ltg");
    const auto& ev = joined.column("e1");
    Eigen::MatrixXd X(joined.rows(), 1);
    Eigen::VectorXd y(joined.rows());
    for (std::size_t i = 0; i < joined.rows(); ++i) {
        X(i, 0) = ev[i];
        y[i] = std::log1p(lv[i]);
    }
    const OlsFit fit = ols(X, y, true);
    const HacCovariance nw = newey_west(fit.residuals, fit.design, hac_lags);

    LtgFit out;
    out.intercept = fit.beta[0];
    out.slope = fit.beta[1];
    out.se_slope = std::sqrt(std::max(0.0, nw.cov(1, 1)));
    out.t_slope = out.se_slope > 0 ? out.slope / out.se_slope : 0.0;
    out.n = fit.n_obs;
    out.r2 = fit.r2;
    return out;
}

double kalman_loglik(double g, double rho_z, double sigma_d, double sigma_z, double corr,
                     const std::vector<double>& dg) {
    if (sigma_d < 0 || sigma_z < 0) throw ValidationError("volatilities must be >= 0");
    if (std::abs(rho_z) >= 1.0) throw ValidationError("|rho_z| must be < 1");
    if (std::abs(corr) > 0.9) throw ValidationError("|corr| must be <= 0.9");
    if (dg.size() < 2) throw ValidationError("need at least 2 observations");

    // filter with contemporaneously correlated measurement/transition noise:
    //   obs_t = g + a_{t-1-state} + h_t,  Var h = sigma_d^2
    //   state propagates z_t = rho z_{t-1} + q_t, Var q = sigma_z^2,
    //   Cov(h_t, q_t) = corr sigma_d sigma_z
    const double var_h = sigma_d * sigma_d;
    const double var_q = sigma_z * sigma_z;
    const double cov_hq = corr * sigma_d * sigma_z;

    double a = 0.0;                                       // E[z_{t-1} | data]
    double P = var_q / (1.0 - rho_z * rho_z);             // stationary variance of z
    double loglik = 0.0;
    for (double obs : dg) {
        const double F = P + var_h;
        if (!(F > 0)) {
            // degenerate one-step variance: likelihood defined only when the
            // innovation is exactly zero
            const double v = obs - (g + a);
            if (std::abs(v) > 1e-12) return -std::numeric_limits<double>::infinity();
            a = rho_z * a;
            P = rho_z * rho_z * P + var_q;
            continue;
        }
        const double v = obs - (g + a);
        loglik += -0.5 * (kLog2Pi + std::log(F) + v * v / F);
        const double gain = (rho_z * P + cov_hq) / F;
        a = rho_z * a + gain * v;
        P = rho_z * rho_z * P + var_q - gain * gain * F;
    }
    if (!std::isfinite(loglik)) throw NumericalError("non-finite likelihood");
    return loglik;
}

double kalman_profile_loglik(const std::vector<double>& dg, double rho_z, double corr) {
    if (dg.size() < 4) throw ValidationError("too few observations");
    double mean = 0;
    for (double v : dg) mean += v;
    mean /= dg.size();
    double sd = 0;
    for (double v : dg) sd += (v - mean) * (v - mean);
    sd = std::sqrt(sd / (dg.size() - 1));
    if (sd <= 0) throw EstimationError("constant growth series");

    auto objective = [&](const Eigen::VectorXd& x) {
        try {
            return -kalman_loglik(x[0], rho_z, std::exp(x[1]), std::exp(x[2]), corr, dg);
        } catch (const Error&) {
            return std::numeric_limits<double>::max();
        }
    };
    NelderMeadOptions opt;
    opt.max_iterations = 3000;
    opt.f_tolerance = 1e-11;
    opt.x_tolerance = 1e-8;
    double best = std::numeric_limits<double>::max();
    for (double split : {0.1, 0.5, 0.9}) {
        Eigen::VectorXd x0(3);
        x0 << mean, std::log(std::max(sd * std::sqrt(1.0 - split), 1e-4)),
            std::log(std::max(sd * std::sqrt(split), 1e-4));
        best = std::min(best, nelder_mead(objective, x0, opt).fval);
    }
    if (best >= std::numeric_limits<double>::max())
        throw EstimationError("profile likelihood maximization failed");
    return -best;
}

namespace {

// unconstrained parameterization: variances in log space, rho via tanh
struct SsmTransform {
    bool restricted;
    Eigen::VectorXd pack(double g, double rho, double sd, double sz) const {
        Eigen::VectorXd x(restricted ? 3 : 4);
        int i = 0;
        x[i++] = g;
        if (!restricted) x[i++] = std::atanh(std::clamp(rho, -0.995, 0.995));
        x[i++] = std::log(std::max(sd, 1e-8));
        x[i++] = std::log(std::max(sz, 1e-8));
        return x;
    }
    void unpack(const Eigen::VectorXd& x, double& g, double& rho, double& sd, double& sz) const {
        int i = 0;
        g = x[i++];
        rho = restricted ? 0.0 : std::tanh(x[i++]);
        sd = std::exp(x[i++]);
        sz = std::exp(x[i++]);
    }
};

}  // namespace

KvFile StateSpaceFit::to_kv() const {
    KvFile kv;
    kv.set("rho_z", rho_z_hat);
    kv.set("g", g_hat);
    kv.set("sigma_d", sigma_d_hat);
    kv.set("sigma_z", sigma_z_hat);
    kv.set("se_rho_z", se_rho_z);
    kv.set("se_g", se_g);
    kv.set("se_sigma_d", se_sigma_d);
    kv.set("se_sigma_z", se_sigma_z);
    kv.set("loglik", loglik);
    kv.set("aic", aic);
    kv.set("bic", bic);
    kv.set("restricted", restricted ? 1.0 : 0.0);
    kv.set("shock_correlation", shock_correlation);
    return kv;
}

std::vector<StateSpaceFit> fit_state_space(const std::vector<double>& dg, bool restricted,
                                           const std::vector<double>& corr_grid) {
    if (dg.size() < 20) throw ValidationError("need at least 20 annual observations");
    const std::size_t n = dg.size();

    double mean = 0;
    for (double v : dg) mean += v;
    mean /= n;
    double sd = 0;
    for (double v : dg) sd += (v - mean) * (v - mean);
    sd = std::sqrt(sd / (n - 1));
    if (sd <= 0) throw EstimationError("constant growth series");

    const SsmTransform tf{restricted};
    std::vector<StateSpaceFit> fits;
    for (double corr : corr_grid) {
        auto objective = [&](const Eigen::VectorXd& x) {
            double g, rho, sdv, sz;
            tf.unpack(x, g, rho, sdv, sz);
            try {
                return -kalman_loglik(g, rho, sdv, sz, corr, dg);
            } catch (const Error&) {
                return std::numeric_limits<double>::max();
            }
        };

        // ten starts: the moment-matched point, a persistence scan, and a
        // scan over how the total variance splits between the two shocks
        std::vector<Eigen::VectorXd> starts;
        starts.push_back(tf.pack(mean, 0.0, sd * 0.7, sd * 0.7));
        if (!restricted)
            for (double rho0 : {0.3, -0.3, 0.6})
                starts.push_back(tf.pack(mean, rho0, sd * 0.7, sd * 0.7));
        for (double split : {0.1, 0.25, 0.5, 0.75, 0.9})
            starts.push_back(
                tf.pack(mean, 0.0, sd * std::sqrt(1.0 - split), sd * std::sqrt(split)));
        for (double scale : {0.5, 1.5, 2.0, 3.0}) {
            if (starts.size() >= 10) break;
            starts.push_back(tf.pack(mean, restricted ? 0.0 : 0.1, sd * 0.7 * scale,
                                     sd * 0.7 / scale));
        }
        starts.resize(10, starts.front());

        NelderMeadOptions opt;
        opt.max_iterations = 4000;
        opt.f_tolerance = 1e-11;
        opt.x_tolerance = 1e-8;

        NelderMeadResult best;
        best.fval = std::numeric_limits<double>::max();
        bool any = false;
        for (const auto& s0 : starts) {
            const NelderMeadResult r = nelder_mead(objective, s0, opt);
            if (r.fval < best.fval) {
                best = r;
                any = true;
            }
        }
        if (!any || best.fval >= std::numeric_limits<double>::max())
            throw EstimationError("state-space likelihood maximization failed on all starts");

        StateSpaceFit fit;
        fit.restricted = restricted;
        fit.shock_correlation = corr;
        fit.converged = best.converged;
        tf.unpack(best.x, fit.g_hat, fit.rho_z_hat, fit.sigma_d_hat, fit.sigma_z_hat);
        fit.loglik = -best.fval;
        const int k = restricted ? 3 : 4;
        fit.aic = 2.0 * k - 2.0 * fit.loglik;
        fit.bic = k * std::log(static_cast<double>(n)) - 2.0 * fit.loglik;

        // delta-method SEs through the transform Jacobian
        const Eigen::MatrixXd H = numerical_hessian(objective, best.x, 1e-4);
        Eigen::MatrixXd cov;
        {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
            Eigen::VectorXd ev = es.eigenvalues();
            Eigen::VectorXd inv = ev;
            for (Eigen::Index i = 0; i < ev.size(); ++i)
                inv[i] = ev[i] > 1e-10 ? 1.0 / ev[i] : 0.0;  // pseudo-inverse on flat directions
            cov = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
        }
        Eigen::VectorXd jac(best.x.size());
        int i = 0;
        jac[i++] = 1.0;  // g
        if (!restricted) {
            const double t = best.x[1];
            jac[i++] = 1.0 - std::tanh(t) * std::tanh(t);  // d rho / d atanh-rho
        }
        jac[i++] = fit.sigma_d_hat;  // d sigma / d log-sigma
        jac[i++] = fit.sigma_z_hat;
        Eigen::VectorXd se(best.x.size());
        for (Eigen::Index j = 0; j < best.x.size(); ++j)
            se[j] = std::sqrt(std::max(0.0, cov(j, j))) * std::abs(jac[j]);
        int idx = 0;
        fit.se_g = se[idx++];
        fit.se_rho_z = restricted ? 0.0 : se[idx++];
        fit.se_sigma_d = se[idx++];
        fit.se_sigma_z = se[idx++];
        fits.push_back(fit);
    }
    return fits;
}

KvFile ArmaFit::to_kv() const {
    KvFile kv;
    kv.set("model", model == ArmaModel::AR1 ? "AR1" : "MA1");
    kv.set(model == ArmaModel::AR1 ? "gamma" : "chi", coef);
    kv.set("g", g);
    kv.set("sigma_d", sigma_d);
    kv.set("se_coef", se_coef);
    kv.set("se_g", se_g);
    kv.set("loglik", loglik);
    kv.set("aic", aic);
    kv.set("bic", bic);
    return kv;
}

namespace {

double ar1_loglik(double g, double gamma, double sigma, const std::vector<double>& x) {
    if (std::abs(gamma) >= 1.0 || sigma <= 0) return -std::numeric_limits<double>::infinity();
    const std::size_t n = x.size();
    const double mu = g / (1.0 - gamma);
    const double var0 = sigma * sigma / (1.0 - gamma * gamma);
    double ll = -0.5 * (kLog2Pi + std::log(var0) + (x[0] - mu) * (x[0] - mu) / var0);
    for (std::size_t t = 1; t < n; ++t) {
        const double m = g + gamma * x[t - 1];
        ll += -0.5 * (kLog2Pi + std::log(sigma * sigma) +
                      (x[t] - m) * (x[t] - m) / (sigma * sigma));
    }
    return ll;
}

// MA(1) dd_t = g + sigma eps_t + chi sigma eps_{t-1}: same correlated-noise
// filter with state = eps_{t-1}
double ma1_loglik(double g, double chi, double sigma, const std::vector<double>& x) {
    if (sigma <= 0) return -std::numeric_limits<double>::infinity();
    double a = 0.0;   // E[eps_{t-1}]
    double P = 1.0;   // Var[eps_{t-1}]
    double ll = 0.0;
    const double cs = chi * sigma;
    for (double obs : x) {
        const double F = cs * cs * P + sigma * sigma;
        const double v = obs - (g + cs * a);
        ll += -0.5 * (kLog2Pi + std::log(F) + v * v / F);
        // state_t = eps_t; Cov(state_t, obs_t) = sigma
        const double gain = sigma / F;
        a = gain * v;
        P = 1.0 - gain * sigma;
    }
    return ll;
}

}  // namespace

ArmaFit fit_arma(const std::vector<double>& dg, ArmaModel model) {
    if (dg.size() < 10) throw ValidationError("need at least 10 observations");
    const std::size_t n = dg.size();

    double mean = 0;
    for (double v : dg) mean += v;
    mean /= n;
    double sd = 0;
    for (double v : dg) sd += (v - mean) * (v - mean);
    sd = std::sqrt(sd / (n - 1));
    if (sd <= 0) throw EstimationError("constant growth series");

    auto objective = [&](const Eigen::VectorXd& x) {
        const double g = x[0];
        const double coef = std::tanh(x[1]);
        const double sigma = std::exp(x[2]);
        const double ll = model == ArmaModel::AR1 ? ar1_loglik(g, coef, sigma, dg)
                                                  : ma1_loglik(g, coef, sigma, dg);
        return std::isfinite(ll) ? -ll : std::numeric_limits<double>::max();
    };

    NelderMeadOptions opt;
    opt.max_iterations = 4000;
    opt.f_tolerance = 1e-11;
    opt.x_tolerance = 1e-8;
    NelderMeadResult best;
    best.fval = std::numeric_limits<double>::max();
    for (double c0 : {0.0, 0.3, -0.3}) {
        Eigen::VectorXd x0(3);
        x0 << (model == ArmaModel::AR1 ? mean * (1.0 - c0) : mean), std::atanh(c0), std::log(sd);
        const NelderMeadResult r = nelder_mead(objective, x0, opt);
        if (r.fval < best.fval) best = r;
    }
    if (best.fval >= std::numeric_limits<double>::max())
        throw EstimationError("ARMA likelihood maximization failed");

    ArmaFit fit;
    fit.model = model;
    fit.g = best.x[0];
    fit.coef = std::tanh(best.x[1]);
    fit.sigma_d = std::exp(best.x[2]);
    fit.loglik = -best.fval;
    fit.converged = best.converged;
    const int k = 3;
    fit.aic = 2.0 * k - 2.0 * fit.loglik;
    fit.bic = k * std::log(static_cast<double>(n)) - 2.0 * fit.loglik;

    const Eigen::MatrixXd H = numerical_hessian(objective, best.x, 1e-4);
    Eigen::MatrixXd cov;
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
        Eigen::VectorXd inv = es.eigenvalues();
        for (Eigen::Index i = 0; i < inv.size(); ++i)
            inv[i] = inv[i] > 1e-10 ? 1.0 / inv[i] : 0.0;
        cov = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
    }
    const double jac_coef = 1.0 - fit.coef * fit.coef;
    fit.se_g = std::sqrt(std::max(0.0, cov(0, 0)));
    fit.se_coef = std::sqrt(std::max(0.0, cov(1, 1))) * std::abs(jac_coef);
    return fit;
}

namespace {

std::string cell(double v, bool present = true) {
    if (!present) return "";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string bracket(double coef, double se) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "[%.2f]", se > 0 ? coef / se : 0.0);
    return buf;
}

}  // namespace

std::string growth_persistence_table(const StateSpaceFit& unrestricted,
                                     const StateSpaceFit& restricted, const ArmaFit& ma1,
                                     const ArmaFit& ar1) {
    std::string out;
    auto row = [&](const std::string& name, const std::vector<std::string>& cells) {
        out += name;
        for (const auto& c : cells) out += "," + c;
        out += "\n";
    };
    row("model", {"rho_z", "g", "sigma_d", "sigma_z", "chi", "gamma", "LogL", "AIC", "BIC"});
    row("Unrestricted",
        {cell(unrestricted.rho_z_hat), cell(unrestricted.g_hat), cell(unrestricted.sigma_d_hat),
         cell(unrestricted.sigma_z_hat), "", "", cell(unrestricted.loglik),
         cell(unrestricted.aic), cell(unrestricted.bic)});
    row("", {bracket(unrestricted.rho_z_hat, unrestricted.se_rho_z),
             bracket(unrestricted.g_hat, unrestricted.se_g),
             bracket(unrestricted.sigma_d_hat, unrestricted.se_sigma_d),
             bracket(unrestricted.sigma_z_hat, unrestricted.se_sigma_z), "", "", "", "", ""});
    row("Restricted",
        {"", cell(restricted.g_hat), cell(restricted.sigma_d_hat), cell(restricted.sigma_z_hat),
         "", "", cell(restricted.loglik), cell(restricted.aic), cell(restricted.bic)});
    row("", {"", bracket(restricted.g_hat, restricted.se_g),
             bracket(restricted.sigma_d_hat, restricted.se_sigma_d),
             bracket(restricted.sigma_z_hat, restricted.se_sigma_z), "", "", "", "", ""});
    row("MA(1)", {"", cell(ma1.g), cell(ma1.sigma_d), "", cell(ma1.coef), "", cell(ma1.loglik),
                  cell(ma1.aic), cell(ma1.bic)});
    row("", {"", bracket(ma1.g, ma1.se_g), "", "", bracket(ma1.coef, ma1.se_coef), "", "", "",
             ""});
    row("AR(1)", {"", cell(ar1.g), cell(ar1.sigma_d), "", "", cell(ar1.coef), cell(ar1.loglik),
                  cell(ar1.aic), cell(ar1.bic)});
    row("", {"", bracket(ar1.g, ar1.se_g), "", "", "", bracket(ar1.coef, ar1.se_coef), "", "",
             ""});
    return out;
}

RollingRhoZ rolling_rhoz(const Panel& forecast_panel, int window, SystemVariant variant,
                         int hac_lags) {
    const int n = static_cast<int>(forecast_panel.rows());
    if (window > n) throw ValidationError("window exceeds sample");

    RollingRhoZ out;
    std::vector<Date> good_dates;
    std::vector<double> good_vals;
    for (int w = 0; w + window <= n; ++w) {
        const Panel win = forecast_panel.slice(w, w + window);
        const Date end_date = win.dates().back();
        out.all_dates.push_back(end_date);
        try {
            const RhoZSystemFit fit = estimate_rhoz_system(win, variant, hac_lags);
            out.all_values.push_back(fit.rho_z_hat);
            good_dates.push_back(end_date);
            good_vals.push_back(fit.rho_z_hat);
        } catch (const Error& e) {
            out.all_values.push_back(std::numeric_limits<double>::quiet_NaN());
            out.log.push_back(end_date.to_string() + ": " + e.what());
        }
    }
    if (!good_dates.empty()) {
        try {
            out.series = DatedSeries(good_dates, good_vals, forecast_panel.frequency());
        } catch (const ValidationError&) {
            // degenerate windows punched holes in the grid; all_dates/all_values
            // still carry everything
        }
    }
    return out;
}

ErrorLinkResult error_link(const DatedSeries& rhoz_series, const DatedSeries& prediction_errors,
                           int hac_lags) {
    Panel joined = align(rhoz_series, prediction_errors, "rhoz", "err");
    if (joined.rows() < 3) throw ValidationError("too few aligned observations");
    const auto& rv = joined.column("rhoz");
    const auto& ev = joined.column("err");
    const std::size_t n = joined.rows();

    double mr = 0, me = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mr += rv[i];
        me += ev[i];
    }
    mr /= n;
    me /= n;
    double crr = 0, cee = 0, cre = 0;
    for (std::size_t i = 0; i < n; ++i) {
        crr += (rv[i] - mr) * (rv[i] - mr);
        cee += (ev[i] - me) * (ev[i] - me);
        cre += (rv[i] - mr) * (ev[i] - me);
    }
    if (crr <= 0 || cee <= 0) throw ValidationError("degenerate series");

    Eigen::MatrixXd X(n, 1);
    Eigen::VectorXd y(n);
    for (std::size_t i = 0; i < n; ++i) {
        X(i, 0) = rv[i];
        y[i] = ev[i];
    }
    const OlsFit fit = ols(X, y, true);
    const HacCovariance nw = newey_west(fit.residuals, fit.design, hac_lags);

    ErrorLinkResult out;
    out.correlation = cre / std::sqrt(crr * cee);
    out.intercept = fit.beta[0];
    out.slope = fit.beta[1];
    const double se = std::sqrt(std::max(0.0, nw.cov(1, 1)));
    out.t_slope = se > 0 ? out.slope / se : 0.0;
    out.n = static_cast<int>(n);
    return out;
}

}  // namespace durlab
