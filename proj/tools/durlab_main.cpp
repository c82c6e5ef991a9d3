// durlab command line: simulate | strips | forecast | estimate | backtest | demo
//
// Exit codes: 0 success, 2 config/usage, 3 data/validation, 4 estimation or
// numerical failure.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "durlab/affine2d.hpp"
#include "durlab/csv.hpp"
#include "durlab/errors.hpp"
#include "durlab/kv.hpp"
#include "durlab/latent.hpp"
#include "durlab/regress.hpp"
#include "durlab/rng.hpp"
#include "durlab/simulate.hpp"
#include "durlab/spectrum.hpp"
#include "durlab/strips.hpp"
#include "durlab/timing.hpp"

namespace fs = std::filesystem;
using namespace durlab;

namespace {

constexpr int kExitUsage = 2;

// bad values inside a --config file are usage errors, not data errors
struct ConfigError : Error {
    using Error::Error;
};
constexpr int kExitData = 3;
constexpr int kExitEstimation = 4;

ModelParams2D demo_params() {
    ModelParams2D p;
    p.rho_z = 0.0;
    p.rho_y = 0.4;
    p.sigma_z = Eigen::Vector3d{0.02, 0.0, 0.0};
    p.sigma_y = Eigen::Vector3d{0.0, 0.6, 0.0};
    p.sigma_D = Eigen::Vector3d{0.03, 0.0, 0.06};
    p.sigma_lambda = Eigen::Vector3d{0.0, -0.8, 0.4};
    p.Sigma = Eigen::Matrix3d::Identity();
    p.g_bar = 0.05;
    p.lambda_bar = 0.4;
    p.r_f = 0.03;
    return p;
}

// monthly-native economy behind `demo`: duration autocorrelation ~0.93 and
// an annual-horizon predictive R^2 around a quarter
ModelParams2D demo_monthly_params() {
    ModelParams2D p;
    p.rho_z = 0.0;
    p.rho_y = 0.926;
    p.sigma_z = Eigen::Vector3d{0.02, 0.0, 0.0};
    p.sigma_y = Eigen::Vector3d{0.0, 0.247, 0.0};
    p.sigma_D = Eigen::Vector3d{0.00866, 0.0, 0.01732};
    p.sigma_lambda = Eigen::Vector3d{0.0, -0.33, 0.3};
    p.Sigma = Eigen::Matrix3d::Identity();
    p.g_bar = 0.05 / 12.0;
    p.lambda_bar = 0.15;
    p.r_f = 0.03 / 12.0;
    return p;
}

std::uint64_t resolve_seed(std::int64_t cli_seed) {
    if (cli_seed >= 0) return static_cast<std::uint64_t>(cli_seed);
    if (const char* env = std::getenv("DURLAB_SEED")) return std::strtoull(env, nullptr, 10);
    return 42;
}

// Every run writes into <out>/run-<config hash>/ and records the hash, so
// identical configs land in identical trees.
fs::path prepare_run_dir(const std::string& out_root, KvFile& meta) {
    meta.set("rng", Rng::algorithm_id());
    const std::string hash = config_hash(meta);
    meta.set("config_hash", hash);
    fs::path dir = fs::path(out_root) / ("run-" + hash.substr(0, 16));
    fs::create_directories(dir);
    return dir;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << text;
}

struct SimulateArgs {
    std::string config_path;
    std::string out = "out";
    std::int64_t seed = -1;
    int T = 600;
    bool monthly = false;
    double pd_bar = 3.9;
};

fs::path run_simulate(const SimulateArgs& a) {
    ModelParams2D params = demo_params();
    if (!a.config_path.empty()) {
        try {
            params = ModelParams2D::from_kv(KvFile::load(a.config_path));
        } catch (const Error& e) {
            throw ConfigError(a.config_path + ": " + e.what());
        }
    }
    const std::uint64_t seed = resolve_seed(a.seed);

    KvFile meta = params.to_kv();
    meta.set("command", "simulate");
    meta.set("T", static_cast<double>(a.T));
    meta.set("pd_bar", a.pd_bar);
    meta.set("monthly", a.monthly ? 1.0 : 0.0);
    meta.set("seed", static_cast<double>(seed));
    const fs::path dir = prepare_run_dir(a.out, meta);

    SimConfig config;
    config.pd_bar = a.pd_bar;
    config.periods_per_year = a.monthly ? 12 : 1;
    const ModelParams2D period_params = a.monthly ? params.subperiod(12) : params;
    const SimPath path = simulate(period_params, config, a.T, seed);

    write_panel_csv((dir / "sim_panel.csv").string(), path.to_panel());
    write_snapshot_csv((dir / "snapshots.csv").string(),
                       synthesize_snapshots(path, period_params, {0.25, 0.5, 1.0, 1.5, 2.0}));
    path.closed_form.to_kv().save((dir / "closed_form.kv").string());
    write_strip_coefficients_csv(
        (dir / "strip_coefficients.csv").string(),
        solve_strip_coefficients(period_params.to_general(), 2 * config.periods_per_year));
    meta.save((dir / "metadata.kv").string());
    std::cout << "wrote " << (dir / "sim_panel.csv").string() << "\n";
    std::cout << "wrote " << (dir / "snapshots.csv").string() << "\n";
    return dir;
}

struct StripsArgs {
    std::string snapshots;
    std::string out = "out";
    bool skip_bad = false;
    bool linear = false;
};

fs::path run_strips(const StripsArgs& a) {
    const auto snaps = load_snapshot_csv(a.snapshots);
    KvFile meta;
    meta.set("command", "strips");
    meta.set("snapshots", a.snapshots);
    meta.set("policy", a.skip_bad ? "skip-and-log" : "fail-fast");
    meta.set("interp", a.linear ? "linear" : "pchip");
    const fs::path dir = prepare_run_dir(a.out, meta);

    const ValuationSeries vs =
        valuation_series(snaps, a.skip_bad ? ErrorPolicy::skip_and_log : ErrorPolicy::fail_fast,
                         a.linear ? CurveInterp::linear : CurveInterp::pchip);
    write_panel_csv((dir / "valuation.csv").string(), vs.to_panel());
    write_text(dir / "duration_stats.txt", duration_stats(vs).to_text());
    if (!vs.skipped.empty()) {
        std::string log;
        for (const auto& line : vs.skipped) log += line + "\n";
        write_text(dir / "skipped.log", log);
        std::cerr << vs.skipped.size() << " dates skipped (see skipped.log)\n";
    }
    meta.save((dir / "metadata.kv").string());
    std::cout << "wrote " << (dir / "valuation.csv").string() << "\n";
    return dir;
}

struct ForecastArgs {
    std::string panel;
    std::string target;
    std::vector<std::string> predictors;
    int horizon = 12;
    int nw_lags = 18;
    std::string oos_start;
    std::string out = "out";
    bool scan = false;
    int bootstrap = 0;
    int block_len = 18;
    std::int64_t seed = -1;
    int jobs = 1;
};

fs::path run_forecast(const ForecastArgs& a) {
    const Panel panel = load_panel_csv(a.panel);
    RegressionSpec spec;
    spec.target = a.target;
    spec.predictors = a.predictors;
    spec.horizon = a.horizon;

    KvFile meta;
    meta.set("command", "forecast");
    meta.set("panel", a.panel);
    meta.set("target", a.target);
    std::string preds;
    for (const auto& p : a.predictors) preds += (preds.empty() ? "" : ",") + p;
    meta.set("predictors", preds);
    meta.set("horizon", static_cast<double>(a.horizon));
    meta.set("nw_lags", static_cast<double>(a.nw_lags));
    if (!a.oos_start.empty()) meta.set("oos_start", a.oos_start);
    if (a.scan) meta.set("scan", 1.0);
    if (a.bootstrap > 0) {
        meta.set("bootstrap", static_cast<double>(a.bootstrap));
        meta.set("block_len", static_cast<double>(a.block_len));
        meta.set("seed", static_cast<double>(resolve_seed(a.seed)));
    }
    const fs::path dir = prepare_run_dir(a.out, meta);

    ReportOptions options;
    options.nw_lags = a.nw_lags;
    if (!a.oos_start.empty()) options.oos_start = parse_date(a.oos_start);
    const RegressionReport report = run_report(panel, spec, options);
    report.to_kv().save((dir / "report.kv").string());

    if (options.oos_start) {
        const OosResult oos = oos_evaluate(panel, spec, *options.oos_start);
        Panel oos_panel(oos.dates, panel.frequency());
        auto to_vec = [](const Eigen::VectorXd& v) {
            return std::vector<double>(v.data(), v.data() + v.size());
        };
        oos_panel.add_column("realized", to_vec(oos.realized));
        oos_panel.add_column("forecast", to_vec(oos.forecast));
        oos_panel.add_column("benchmark", to_vec(oos.benchmark));
        write_panel_csv((dir / "oos_forecasts.csv").string(), oos_panel);
    }

    if (a.scan) {
        std::vector<std::vector<std::string>> sets;
        for (std::size_t i = 0; i < a.predictors.size(); ++i) {
            sets.push_back({a.predictors[i]});
            for (std::size_t j = i + 1; j < a.predictors.size(); ++j)
                sets.push_back({a.predictors[i], a.predictors[j]});
        }
        if (a.predictors.size() > 2) sets.push_back(a.predictors);
        const auto rows = predictor_scan(panel, a.target, sets, a.horizon);
        std::ostringstream os;
        os << "predictors,r2,r2_adjusted\n";
        for (const auto& row : rows) {
            std::string name;
            for (const auto& p : row.predictors) name += (name.empty() ? "" : "+") + p;
            os << name << "," << format_double(row.r2) << "," << format_double(row.r2_adjusted)
               << "\n";
        }
        write_text(dir / "scan.csv", os.str());
    }

    if (a.bootstrap > 0) {
        const BootstrapCi ci = bootstrap_r2_ci(panel, spec, a.bootstrap, a.block_len,
                                               resolve_seed(a.seed), a.jobs);
        KvFile kv;
        kv.set("r2_adjusted", ci.r2_point);
        kv.set("ci_low", ci.lo);
        kv.set("ci_high", ci.hi);
        kv.save((dir / "bootstrap_ci.kv").string());
    }
    meta.save((dir / "metadata.kv").string());
    std::cout << "wrote " << (dir / "report.kv").string() << "\n";
    return dir;
}

struct EstimateArgs {
    std::string method;
    std::string input;
    std::string out = "out";
    int window = 156;
    int hac_lags = 18;
    std::vector<double> corr_grid;
};

fs::path run_estimate(const EstimateArgs& a) {
    KvFile meta;
    meta.set("command", "estimate");
    meta.set("method", a.method);
    meta.set("input", a.input);
    meta.set("hac_lags", static_cast<double>(a.hac_lags));
    if (a.method == "rolling") meta.set("window", static_cast<double>(a.window));

    const std::set<std::string> methods = {"kalman", "kalman-restricted", "ar1",     "ma1",
                                           "system-Y1Y3", "system-Y1Y2",   "ltg", "rolling"};
    if (!methods.count(a.method))
        throw CLI::ValidationError("--method", "unknown method '" + a.method + "'");
    const bool growth_input =
        a.method == "kalman" || a.method == "kalman-restricted" || a.method == "ar1" ||
        a.method == "ma1";

    // read and validate inputs before any directory shows up on disk
    DatedSeries dg;
    Panel panel;
    if (growth_input)
        dg = load_series_csv(a.input);
    else
        panel = load_forecast_panel_csv(a.input);
    const fs::path dir = prepare_run_dir(a.out, meta);

    if (a.method == "ar1" || a.method == "ma1") {
        const ArmaFit fit =
            fit_arma(dg.values(), a.method == "ar1" ? ArmaModel::AR1 : ArmaModel::MA1);
        fit.to_kv().save((dir / "fit.kv").string());
    } else if (growth_input) {
        const std::vector<double> grid = a.corr_grid.empty() ? std::vector<double>{0.0}
                                                             : a.corr_grid;
        const auto fits = fit_state_space(dg.values(), a.method == "kalman-restricted", grid);
        std::ostringstream os;
        os << "corr,rho_z,g,sigma_d,sigma_z,se_rho_z,loglik,aic,bic\n";
        for (const auto& f : fits)
            os << format_double(f.shock_correlation) << "," << format_double(f.rho_z_hat)
               << "," << format_double(f.g_hat) << "," << format_double(f.sigma_d_hat) << ","
               << format_double(f.sigma_z_hat) << "," << format_double(f.se_rho_z) << ","
               << format_double(f.loglik) << "," << format_double(f.aic) << ","
               << format_double(f.bic) << "\n";
        write_text(dir / "fits.csv", os.str());
        fits.front().to_kv().save((dir / "fit.kv").string());
    } else if (a.method == "system-Y1Y3" || a.method == "system-Y1Y2") {
        const SystemVariant variant =
            a.method == "system-Y1Y3" ? SystemVariant::Y1Y3 : SystemVariant::Y1Y2;
        estimate_rhoz_system(panel, variant, a.hac_lags).to_kv().save((dir / "fit.kv").string());
    } else if (a.method == "ltg") {
        const LtgFit fit =
            estimate_rhoz_ltg(panel.series("ltg"), panel.series("e1"), a.hac_lags);
        KvFile kv;
        kv.set("rho_z_lt", fit.slope);
        kv.set("intercept", fit.intercept);
        kv.set("t", fit.t_slope);
        kv.set("n", static_cast<double>(fit.n));
        kv.set("r2", fit.r2);
        kv.save((dir / "fit.kv").string());
    } else {
        const RollingRhoZ roll = rolling_rhoz(panel, a.window, SystemVariant::Y1Y3, a.hac_lags);
        std::ostringstream os;
        os << "date,rho_z\n";
        for (std::size_t i = 0; i < roll.all_dates.size(); ++i)
            os << roll.all_dates[i].to_string() << ","
               << (std::isfinite(roll.all_values[i]) ? format_double(roll.all_values[i])
                                                     : std::string("NA"))
               << "\n";
        write_text(dir / "rolling_rhoz.csv", os.str());
        if (!roll.log.empty()) {
            std::string log;
            for (const auto& line : roll.log) log += line + "\n";
            write_text(dir / "rolling.log", log);
        }
    }
    meta.save((dir / "metadata.kv").string());
    std::cout << "wrote estimate output under " << dir.string() << "\n";
    return dir;
}

struct BacktestArgs {
    std::string forecasts;
    std::string realized;
    std::string out = "out";
    int sigma_window = 12;
    double periods_per_year = 12.0;
    double formula_s0 = -1.0;
    double formula_r2 = -1.0;
};

fs::path run_backtest(const BacktestArgs& a) {
    KvFile meta;
    meta.set("command", "backtest");
    if (!a.forecasts.empty()) {
        meta.set("forecasts", a.forecasts);
        meta.set("realized", a.realized);
        meta.set("sigma_window", static_cast<double>(a.sigma_window));
        meta.set("periods_per_year", a.periods_per_year);
    }
    if (a.formula_s0 >= 0) {
        meta.set("formula_s0", a.formula_s0);
        meta.set("formula_r2", a.formula_r2);
    }
    DatedSeries f_in, r_in;
    if (!a.forecasts.empty()) {
        f_in = load_series_csv(a.forecasts);
        r_in = load_series_csv(a.realized);
        if (f_in.empty() || r_in.empty()) throw ValidationError("empty input series");
    }
    const fs::path dir = prepare_run_dir(a.out, meta);

    KvFile summary;
    if (a.formula_s0 >= 0) {
        const double s1 = timing_sharpe(a.formula_s0, a.formula_r2);
        summary.set("s0", a.formula_s0);
        summary.set("r2", a.formula_r2);
        summary.set("s1", s1);
        char rounded[16];
        std::snprintf(rounded, sizeof(rounded), "%.2f", s1);
        summary.set("s1_2dp", rounded);
        std::cout << "timing sharpe: " << rounded << "\n";
    }
    if (!a.forecasts.empty()) {
        BacktestOptions options;
        options.sigma_window = a.sigma_window;
        options.periods_per_year = a.periods_per_year;
        const TimingResult result = backtest(f_in, r_in, options);
        Panel p(result.weights.dates(), result.weights.frequency());
        p.add_column("weight", result.weights.values());
        p.add_column("strategy_return", result.strategy_returns.values());
        write_panel_csv((dir / "strategy.csv").string(), p);
        const KvFile rkv = result.to_kv();
        for (const auto& k : rkv.keys()) summary.set(k, rkv.get_string(k));
        const double mapped = timing_sharpe(std::max(result.s0, 0.0), 0.0);
        summary.set("timing_sharpe_at_r2_0", mapped);
    }
    summary.save((dir / "summary.kv").string());
    meta.save((dir / "metadata.kv").string());
    std::cout << "wrote " << (dir / "summary.kv").string() << "\n";
    return dir;
}

struct DemoArgs {
    std::string out = "demo_out";
    std::int64_t seed = -1;
};

// sixty-second end-to-end run: simulate -> strips -> forecast -> estimate ->
// backtest, all from one seed
void run_demo(const DemoArgs& a) {
    const std::uint64_t seed = resolve_seed(a.seed);
    const ModelParams2D monthly = demo_monthly_params();

    KvFile meta = monthly.to_kv();
    meta.set("command", "demo");
    meta.set("seed", static_cast<double>(seed));
    const fs::path dir = prepare_run_dir(a.out, meta);

    // 1. simulate forty years of monthly data
    SimConfig config;
    config.pd_bar = 3.9;
    config.periods_per_year = 12;
    config.start = Date{1985, 1, 31};
    const int T = 480;
    const SimPath path = simulate(monthly, config, T, seed);
    write_panel_csv((dir / "sim_panel.csv").string(), path.to_panel());
    const auto snaps = synthesize_snapshots(path, monthly, {0.25, 0.5, 1.0, 1.5, 2.0});
    write_snapshot_csv((dir / "snapshots.csv").string(), snaps);

    // 2. strip construction back from the raw snapshots
    const ValuationSeries vs = valuation_series(snaps);
    write_panel_csv((dir / "valuation.csv").string(), vs.to_panel());
    write_text(dir / "duration_stats.txt", duration_stats(vs).to_text());

    // 3. twelve-month return prediction with dr
    const Panel sim_panel = path.to_panel();
    const DatedSeries r12 =
        annual_log_return(sim_panel.series("P"), sim_panel.series("div_flow"));
    Panel reg = align_all({{"r12", r12}, {"dr", vs.dr}, {"pd", vs.pd}});
    RegressionSpec spec;
    spec.target = "r12";
    spec.predictors = {"dr"};
    spec.horizon = 12;
    ReportOptions options;
    options.nw_lags = 18;
    options.oos_start = reg.dates()[reg.rows() / 3];
    run_report(reg, spec, options).to_kv().save((dir / "forecast_report.kv").string());
    const OosResult oos = oos_evaluate(reg, spec, *options.oos_start);

    // 4. persistence of expected growth: Kalman on annual growth and the
    // analyst-forecast system on synthetic forecasts
    std::vector<double> dg_annual;
    for (std::size_t t = 12; t < path.D.size(); t += 12)
        dg_annual.push_back(std::log(path.D[t] / path.D[t - 12]));
    const auto ssm = fit_state_space(dg_annual, false, {0.0});
    ssm.front().to_kv().save((dir / "kalman_fit.kv").string());
    const auto ssm_res = fit_state_space(dg_annual, true, {0.0});
    write_text(dir / "growth_persistence_table.csv",
               growth_persistence_table(ssm.front(), ssm_res.front(),
                                        fit_arma(dg_annual, ArmaModel::MA1),
                                        fit_arma(dg_annual, ArmaModel::AR1)));

    // frequency-domain decomposition and the ratio-panel PCA, as plot data
    write_spectrum_csv((dir / "spectrum_dr.csv").string(), spectral_density(vs.dr));
    write_spectrum_csv((dir / "spectrum_dr_resid.csv").string(),
                       spectral_density(residualize(vs.dr, vs.pd)));
    write_spectrum_csv((dir / "cross_spectrum_dr_pd.csv").string(),
                       cross_spectrum(vs.dr, vs.pd));
    Panel ratio_panel(vs.dr.dates(), vs.dr.frequency());
    ratio_panel.add_column("dr", vs.dr.values());
    ratio_panel.add_column("pd", vs.pd.values());
    ratio_panel.add_column("s05", vs.s05.values());
    ratio_panel.add_column("s1", vs.s1.values());
    ratio_panel.add_column("s1plus", vs.s1plus.values());
    write_pca_csv((dir / "pca_ratios.csv").string(), pca(ratio_panel, true));

    Rng noise(Rng::split_seed(seed, 999));
    std::vector<double> e1(path.size() - 1), e2(path.size() - 1), e3(path.size() - 1),
        ltg(path.size() - 1);
    const double rho_z = monthly.rho_z;
    const double g_annual = monthly.g_bar * 12.0;
    for (std::size_t t = 0; t + 1 < path.size(); ++t) {
        const double z_t = path.z[t];
        e1[t] = g_annual + z_t + 0.004 * noise.normal();
        e2[t] = g_annual + rho_z * z_t + 0.004 * noise.normal();
        e3[t] = g_annual + rho_z * rho_z * z_t + 0.004 * noise.normal();
        ltg[t] = std::expm1(g_annual + 0.002 * noise.normal());
    }
    Panel forecasts(sim_panel.dates(), Frequency::monthly);
    forecasts.add_column("e1", e1);
    forecasts.add_column("e2", e2);
    forecasts.add_column("e3", e3);
    forecasts.add_column("ltg", ltg);
    write_panel_csv((dir / "analyst_panel.csv").string(), forecasts);
    estimate_rhoz_system(forecasts, SystemVariant::Y1Y3, 18)
        .to_kv()
        .save((dir / "system_fit.kv").string());

    // 5. market timing on the out-of-sample forecasts
    auto to_vec = [](const Eigen::VectorXd& v) {
        return std::vector<double>(v.data(), v.data() + v.size());
    };
    const DatedSeries f_oos(oos.dates, to_vec(oos.forecast), Frequency::monthly);
    const DatedSeries realized(oos.dates, to_vec(oos.realized), Frequency::monthly);
    BacktestOptions bt;
    bt.sigma_window = 24;
    bt.periods_per_year = 1.0;  // twelve-month returns: already annual
    const TimingResult timing = backtest(f_oos, realized, bt);
    KvFile summary = timing.to_kv();
    summary.set("r2_oos", oos.r2_oos);
    summary.set("sharpe_formula_check",
                timing_sharpe(std::max(timing.s0, 0.0), std::clamp(oos.r2_oos, 0.0, 0.99)));
    summary.save((dir / "timing_summary.kv").string());
    meta.save((dir / "metadata.kv").string());
    std::cout << "demo outputs under " << dir.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"valuation-duration toolkit"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* c_sim = app.add_subcommand("simulate", "simulate a 2D economy and its raw market data");
    c_sim->add_option("--config", sim.config_path, "model parameter file (key = value)");
    c_sim->add_option("--T", sim.T, "number of periods")->check(CLI::PositiveNumber);
    c_sim->add_option("--pd-bar", sim.pd_bar, "log-linearization point");
    c_sim->add_flag("--monthly", sim.monthly, "monthly grid (annual parameters are rescaled)");
    c_sim->add_option("--seed", sim.seed, "random seed (DURLAB_SEED fallback)");
    c_sim->add_option("--out", sim.out, "output root");

    StripsArgs strips;
    auto* c_strips = app.add_subcommand("strips", "build dr/pd/s-ratios from snapshots");
    c_strips->add_option("--snapshots", strips.snapshots, "snapshot CSV")->required();
    c_strips->add_flag("--skip-bad", strips.skip_bad, "skip dates with bad data instead of failing");
    c_strips->add_flag("--linear", strips.linear, "linear futures interpolation");
    c_strips->add_option("--out", strips.out, "output root");

    ForecastArgs fc;
    auto* c_fc = app.add_subcommand("forecast", "predictive regression battery");
    c_fc->add_option("--panel", fc.panel, "panel CSV")->required();
    c_fc->add_option("--target", fc.target, "target column")->required();
    c_fc->add_option("--predictors", fc.predictors, "predictor columns")
        ->required()
        ->delimiter(',');
    c_fc->add_option("--horizon", fc.horizon, "overlap horizon in grid periods");
    c_fc->add_option("--nw-lags", fc.nw_lags, "Newey-West lags");
    c_fc->add_option("--oos-start", fc.oos_start, "first out-of-sample date (YYYY-MM-DD)");
    c_fc->add_flag("--scan", fc.scan, "R2 scan over predictor subsets");
    c_fc->add_option("--bootstrap", fc.bootstrap, "bootstrap replications for the R2 interval");
    c_fc->add_option("--block-len", fc.block_len, "bootstrap block length");
    c_fc->add_option("--seed", fc.seed, "bootstrap seed");
    c_fc->add_option("--jobs", fc.jobs, "worker cap for bootstrap replications");
    c_fc->add_option("--out", fc.out, "output root");

    EstimateArgs est;
    auto* c_est = app.add_subcommand("estimate", "persistence of expected cash-flow growth");
    c_est->add_option("--method", est.method,
                      "kalman | kalman-restricted | ar1 | ma1 | system-Y1Y3 | system-Y1Y2 | ltg | rolling")
        ->required();
    c_est->add_option("--input", est.input, "series or forecast-panel CSV")->required();
    c_est->add_option("--window", est.window, "rolling window (observations)");
    c_est->add_option("--hac-lags", est.hac_lags, "HAC lags");
    c_est->add_option("--corr-grid", est.corr_grid, "shock correlations for kalman")
        ->delimiter(',');
    c_est->add_option("--out", est.out, "output root");

    BacktestArgs bt;
    auto* c_bt = app.add_subcommand("backtest", "market-timing backtest / Sharpe mapping");
    c_bt->add_option("--forecasts", bt.forecasts, "forecast series CSV");
    c_bt->add_option("--realized", bt.realized, "realized return series CSV");
    c_bt->add_option("--sigma-window", bt.sigma_window, "warm-up window");
    c_bt->add_option("--periods-per-year", bt.periods_per_year, "annualization base");
    c_bt->add_option("--s0", bt.formula_s0, "buy-and-hold Sharpe for the formula path");
    c_bt->add_option("--r2", bt.formula_r2, "predictive R2 for the formula path");
    c_bt->add_option("--out", bt.out, "output root");

    DemoArgs demo;
    auto* c_demo = app.add_subcommand("demo", "end-to-end pipeline on simulated data");
    c_demo->add_option("--seed", demo.seed, "random seed (DURLAB_SEED fallback)");
    c_demo->add_option("--out", demo.out, "output root");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*c_sim) run_simulate(sim);
        if (*c_strips) run_strips(strips);
        if (*c_fc) run_forecast(fc);
        if (*c_est) {
            if (bt.formula_s0 < 0 && est.method.empty()) return kExitUsage;
            run_estimate(est);
        }
        if (*c_bt) {
            if (bt.forecasts.empty() && bt.formula_s0 < 0)
                throw ValidationError("backtest needs --forecasts/--realized or --s0/--r2");
            if (!bt.forecasts.empty() && bt.realized.empty())
                throw ValidationError("--realized is required with --forecasts");
            run_backtest(bt);
        }
        if (*c_demo) run_demo(demo);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const DataQualityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const DegeneracyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEstimation;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEstimation;
    } catch (const EstimationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEstimation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEstimation;
    }
    return 0;
}
