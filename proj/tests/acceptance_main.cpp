// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "durlab/affine.hpp"
#include "durlab/errors.hpp"
#include "durlab/affine2d.hpp"
#include "durlab/latent.hpp"
#include "durlab/regress.hpp"
#include "durlab/simulate.hpp"
#include "durlab/spectrum.hpp"
#include "durlab/strips.hpp"
#include "durlab/timing.hpp"
#include "test_helpers.hpp"

using namespace durlab;
using namespace durlab::testing;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, double seconds,
            const std::string& detail) {
    std::printf("[%s] criterion %2d: %-38s (%.2fs) %s\n", pass ? "PASS" : "FAIL", id,
                name.c_str(), seconds, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

template <typename F>
void run(int id, const std::string& name, F&& body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    std::string detail;
    try {
        detail = body(pass);
    } catch (const std::exception& e) {
        pass = false;
        detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report(id, name, pass, seconds, detail);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

DatedSeries constant_series(double value, int n) {
    return monthly_series(std::vector<double>(n, value));
}

ValuationSeries constant_valuation(double dr_value, int n) {
    ValuationSeries vs;
    vs.dr = constant_series(dr_value, n);
    vs.pd = constant_series(4.0, n);
    vs.s1 = constant_series(4.0 - dr_value, n);
    vs.s05 = constant_series(0.0, n);
    vs.s1plus = constant_series(3.9, n);
    vs.p1 = constant_series(2.0, n);
    vs.p1plus = constant_series(100.0, n);
    return vs;
}

// expanding-window OOS on an unpredictable target; reused by criterion 9
struct NullOos {
    Eigen::VectorXd em, eb;
    double pi = 1.0;
};
NullOos simulate_null_oos(int R, int P, std::uint64_t seed) {
    Rng rng(seed);
    const int n = R + P;
    const double rho = 0.95, innov = std::sqrt(1.0 - rho * rho);
    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXd y(n);
    double x = 0;
    for (int t = 0; t < n; ++t) {
        x = rho * x + innov * rng.normal();
        X(t, 0) = 1.0;
        X(t, 1) = x;
        y[t] = rng.normal();
    }
    Eigen::MatrixXd xtx = Eigen::MatrixXd::Zero(2, 2);
    Eigen::VectorXd xty = Eigen::VectorXd::Zero(2);
    double ysum = 0;
    for (int t = 0; t < R; ++t) {
        xtx += X.row(t).transpose() * X.row(t);
        xty += X.row(t).transpose() * y[t];
        ysum += y[t];
    }
    NullOos out;
    out.em.resize(P);
    out.eb.resize(P);
    out.pi = static_cast<double>(P) / R;
    for (int t = R; t < n; ++t) {
        const Eigen::VectorXd beta = xtx.ldlt().solve(xty);
        out.em[t - R] = y[t] - beta.dot(X.row(t));
        out.eb[t - R] = y[t] - ysum / t;
        xtx += X.row(t).transpose() * X.row(t);
        xty += X.row(t).transpose() * y[t];
        ysum += y[t];
    }
    return out;
}

double unadjusted_r2(const Eigen::MatrixXd& X_raw, const Eigen::VectorXd& y) {
    const OlsFit fit = ols(X_raw, y, true);
    return fit.r2;
}

}  // namespace

int main() {
    // 1. Sharpe mapping
    run(1, "Sharpe mapping", [&](bool& pass) {
        const double s1 = timing_sharpe(0.37, 0.146);
        char printed[8];
        std::snprintf(printed, sizeof(printed), "%.2f", s1);
        bool ok = std::abs(s1 - 0.5756) <= 0.0005 && std::string(printed) == "0.58";
        for (double s0 : {0.0, 0.1, 0.37, 0.9})
            ok = ok && timing_sharpe(s0, 0.0) == s0;
        pass = ok;
        return "timing_sharpe(0.37, 0.146) = " + fmt(s1) + " -> " + printed;
    });

    // 2. Duration identities
    run(2, "duration identities", [&](bool& pass) {
        const DurationStats a = duration_stats(constant_valuation(4.027, 24));
        const DurationStats b = duration_stats(constant_valuation(std::log(175.0), 24));
        const DurationStats c = duration_stats(constant_valuation(std::log(46.0), 24));
        const bool ok_years = a.duration_years_mean >= 56.0 && a.duration_years_mean <= 56.2;
        const bool ok_175 = std::abs(b.near_share_mean - 0.00571) <= 0.00001 + 5e-6;
        const bool ok_46 = std::abs(c.near_share_mean - 0.0217) <= 0.0001;
        pass = ok_years && ok_175 && ok_46;
        return "exp(4.027) = " + fmt(a.duration_years_mean) +
               ", shares = " + fmt(b.near_share_mean * 100) + "%, " +
               fmt(c.near_share_mean * 100) + "%";
    });

    // 3. Closed-form consistency at n = 1
    run(3, "closed-form consistency (n = 1)", [&](bool& pass) {
        Rng rng(301);
        double worst = 0;
        for (int rep = 0; rep < 100; ++rep) {
            const ModelParams2D p = random_params_2d(rng);
            const ClosedForm2D cf = solve_2d(p, 3.9);
            const StripCoefficients c = solve_strip_coefficients(p.to_general(), 1);
            worst = std::max(worst, std::abs(c.A[1] - cf.A_1));
            worst = std::max(worst, std::abs(c.B[1][0] - cf.C_1));
            worst = std::max(worst, std::abs(c.B[1][1] - cf.B_1));
        }
        pass = worst < 1e-10;
        return "max |difference| = " + fmt(worst) + " over 100 draws";
    });

    // 4. State recovery round trip
    run(4, "state recovery round trip", [&](bool& pass) {
        Rng rng(401);
        const ModelParams p = random_params(rng, 3, 4);
        const StripCoefficients c = solve_strip_coefficients(p, 6);
        double worst = 0;
        for (int rep = 0; rep < 1000; ++rep) {
            Eigen::VectorXd x(3);
            for (int i = 0; i < 3; ++i) x[i] = rng.normal();
            const std::vector<std::pair<int, double>> obs = {{1, valuation_ratio(c, 1, x)},
                                                             {3, valuation_ratio(c, 3, x)},
                                                             {6, valuation_ratio(c, 6, x)}};
            const Eigen::VectorXd back = recover_states(obs, c);
            worst = std::max(worst, (back - x).cwiseAbs().maxCoeff());
        }
        pass = worst < 1e-10;
        return "max abs error = " + fmt(worst) + " over 1000 states";
    });

    // 5. Full-pipeline round trip
    run(5, "full-pipeline round trip", [&](bool& pass) {
        const ModelParams2D p = persistent_growth_params(0.3);
        const SimPath path = simulate(p, 3.9, 600, 501);
        const auto snaps = synthesize_snapshots(path, p, {0.25, 0.5, 1.0, 1.5, 2.0});
        const ValuationSeries vs = valuation_series(snaps);
        double worst = 0;
        for (std::size_t t = 0; t < path.size(); ++t) {
            worst = std::max(worst, std::abs(vs.dr[t] - path.dr[t]) / std::abs(path.dr[t]));
            worst = std::max(worst, std::abs(vs.pd[t] - path.pd[t]) / std::abs(path.pd[t]));
        }
        pass = worst < 1e-8;
        return "max relative error = " + fmt(worst) + " over T = 600";
    });

    // 6. Proposition 2
    run(6, "univariate duration rule", [&](bool& pass) {
        auto r2_er_on_dr = [](const ModelParams2D& p, std::uint64_t seed) {
            const SimPath path = simulate(p, 3.9, 5000, seed);
            const std::size_t n = path.size();
            Eigen::MatrixXd X(n, 1);
            Eigen::VectorXd e(n);
            for (std::size_t t = 0; t < n; ++t) {
                X(t, 0) = path.dr[t];
                e[t] = path.er[t];
            }
            return unadjusted_r2(X, e);
        };
        const double r2_zero = r2_er_on_dr(baseline_params(), 601);
        const double r2_persistent = r2_er_on_dr(persistent_growth_params(0.3), 602);
        pass = r2_zero >= 1.0 - 1e-10 && r2_persistent < 0.999;
        return "R2(rho_z = 0) = " + fmt(r2_zero) + ", R2(rho_z = 0.3) = " + fmt(r2_persistent);
    });

    // 7. Proposition 3 sign property
    run(7, "forecast-error sign vs growth state", [&](bool& pass) {
        auto regime = [](double rho_z, double& mean, double& se) {
            const ModelParams2D p = persistent_growth_params(rho_z);
            const ClosedForm2D cf = solve_2d(p, 3.9);
            const double m = cf.B_er / (cf.B_pd - cf.B_1);
            const int n_paths = 500;
            std::vector<double> covs(n_paths);
            for (int rep = 0; rep < n_paths; ++rep) {
                const SimPath path = simulate(p, 3.9, 400, Rng::split_seed(701, rep));
                const std::size_t n = path.r.size();
                // systematic component of the dr-rule forecast error
                double mz = 0, ms = 0;
                std::vector<double> sys(n);
                for (std::size_t t = 0; t < n; ++t) {
                    sys[t] = -m * (cf.C_pd - cf.C_1) * path.z[t];
                    mz += path.z[t];
                    ms += sys[t];
                }
                mz /= n;
                ms /= n;
                double c = 0;
                for (std::size_t t = 0; t < n; ++t)
                    c += (path.z[t] - mz) * (sys[t] - ms);
                covs[rep] = c / (n - 1);
            }
            mean = mean_of(covs);
            se = std::sqrt(var_of(covs) / n_paths);
        };
        double mean_pos, se_pos, mean_neg, se_neg;
        regime(0.3, mean_pos, se_pos);
        regime(-0.3, mean_neg, se_neg);
        pass = mean_pos > 3.0 * se_pos && mean_neg < -3.0 * se_neg;
        return "cov(+0.3) = " + fmt(mean_pos) + " (" + fmt(mean_pos / se_pos) +
               " SE), cov(-0.3) = " + fmt(mean_neg) + " (" + fmt(mean_neg / se_neg) + " SE)";
    });

    // 8. Spanning
    run(8, "two-ratio spanning", [&](bool& pass) {
        const ModelParams2D p = persistent_growth_params(0.3);
        const SimPath path = simulate(p, 3.9, 100000, 801);
        const std::size_t n = path.size() - 1;
        Eigen::VectorXd r_next(n), dg_next(n);
        Eigen::MatrixXd ratios(n, 5);  // dr, pd, s05, s1, s1plus
        for (std::size_t t = 0; t < n; ++t) {
            r_next[t] = path.r[t];
            dg_next[t] = path.dd[t];
            ratios(t, 0) = path.dr[t];
            ratios(t, 1) = path.pd[t];
            ratios(t, 2) = path.s05[t];
            ratios(t, 3) = path.s1[t];
            ratios(t, 4) = std::log(std::exp(path.pd[t]) - std::exp(path.s1[t]));
        }
        auto subset = [&](std::initializer_list<int> cols) {
            Eigen::MatrixXd X(n, cols.size());
            int j = 0;
            for (int c : cols) X.col(j++) = ratios.col(c);
            return X;
        };
        // linear ratios are exact affine functions of the two states: a
        // four-ratio design is singular in exact arithmetic, so its R2 is
        // the column-space fit through an SVD solve
        auto subspace_r2 = [&](const Eigen::MatrixXd& Xr, const Eigen::VectorXd& y) {
            Eigen::MatrixXd X(n, Xr.cols() + 1);
            X.col(0).setOnes();
            X.rightCols(Xr.cols()) = Xr;
            Eigen::BDCSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
            const Eigen::VectorXd resid = y - X * svd.solve(y);
            const double tss = (y.array() - y.mean()).matrix().squaredNorm();
            return 1.0 - resid.squaredNorm() / tss;
        };
        const std::vector<std::vector<int>> quads = {
            {0, 1, 2, 3}, {0, 1, 2, 4}, {1, 2, 3, 4}, {0, 2, 3, 4}, {0, 1, 3, 4}};

        bool ok = true;
        std::string detail;
        for (int which = 0; which < 2; ++which) {
            const Eigen::VectorXd& y = which == 0 ? r_next : dg_next;
            const double pair_r2 = unadjusted_r2(subset({0, 1}), y);
            double best_quad = 0;
            for (const auto& q : quads) {
                Eigen::MatrixXd X(n, 4);
                for (int j = 0; j < 4; ++j) X.col(j) = ratios.col(q[j]);
                best_quad = std::max(best_quad, subspace_r2(X, y));
            }
            double best_single = 0;
            for (int c = 0; c < 5; ++c)
                best_single = std::max(best_single, unadjusted_r2(subset({c}), y));
            ok = ok && pair_r2 > best_quad - 0.005 && pair_r2 > best_single;
            detail += (which == 0 ? "returns: " : " growth: ") + fmt(pair_r2) + " vs quad " +
                      fmt(best_quad) + " vs single " + fmt(best_single);
        }
        pass = ok;
        return detail;
    });

    // 9. Econometrics oracles
    run(9, "econometrics oracles", [&](bool& pass) {
        Rng rng(901);
        const int n = 300;
        Eigen::MatrixXd X(n, 2);
        Eigen::VectorXd y(n);
        for (int i = 0; i < n; ++i) {
            X(i, 0) = rng.normal();
            X(i, 1) = rng.normal();
            y[i] = 0.3 * X(i, 0) + (1.0 + 0.3 * std::abs(X(i, 1))) * rng.normal();
        }
        const OlsFit fit = ols(X, y, true);

        Eigen::MatrixXd Xi(n, 3);
        Xi.col(0).setOnes();
        Xi.rightCols(2) = X;
        const Eigen::VectorXd beta_oracle = (Xi.transpose() * Xi).inverse() * Xi.transpose() * y;
        const double beta_err = (fit.beta - beta_oracle).cwiseAbs().maxCoeff();

        Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(3, 3);
        for (int i = 0; i < n; ++i)
            meat += fit.residuals[i] * fit.residuals[i] * fit.design.row(i).transpose() *
                    fit.design.row(i);
        const Eigen::MatrixXd bread = (fit.design.transpose() * fit.design).inverse();
        const Eigen::MatrixXd white = bread * meat * bread;
        const double nw_err = (newey_west(fit.residuals, fit.design, 0).cov - white)
                                  .cwiseAbs()
                                  .maxCoeff();
        const double hod_err =
            (hodrick_covariance(fit, 1).cov - white).cwiseAbs().maxCoeff();

        // ENC against its finite-sample-matched table; CW against the
        // standard normal in the small-pi regime where that approximation
        // is accurate (it is documented as conservative at pi >= 1)
        int enc_rej = 0, cw_rej = 0;
        const int n_rep = 2000;
        for (int rep = 0; rep < n_rep; ++rep) {
            const NullOos s = simulate_null_oos(120, 120, Rng::split_seed(902, rep));
            const EncResult enc = enc_test(s.em, s.eb, 1, s.pi);
            if (enc.pvalue_range == "<0.05" || enc.pvalue_range == "<0.01") ++enc_rej;
            const NullOos c = simulate_null_oos(2400, 120, Rng::split_seed(903, rep));
            if (cw_test(c.em, c.eb, 0).pvalue < 0.05) ++cw_rej;
        }
        const double enc_size = static_cast<double>(enc_rej) / n_rep;
        const double cw_size = static_cast<double>(cw_rej) / n_rep;

        pass = nw_err < 1e-12 && hod_err < 1e-12 && beta_err < 1e-10 && enc_size > 0.03 &&
               enc_size < 0.08 && cw_size > 0.03 && cw_size < 0.08;
        return "NW-White " + fmt(nw_err) + ", Hodrick-White " + fmt(hod_err) + ", beta " +
               fmt(beta_err) + ", ENC size " + fmt(enc_size) + ", CW size " + fmt(cw_size);
    });

    // 10. Kalman recovery
    run(10, "Kalman recovery", [&](bool& pass) {
        // coverage of the profile-likelihood-ratio interval for rho_z; Wald
        // SEs understate uncertainty near the zero-measurement-noise ridge
        const int n_rep = 200;
        int covered = 0;
        bool nesting_ok = true;
        for (int rep = 0; rep < n_rep; ++rep) {
            Rng rng(Rng::split_seed(1001, rep));
            std::vector<double> dg(94);
            double z = 0.11 * rng.normal() / std::sqrt(1.0 - 0.26 * 0.26);
            for (int t = 0; t < 94; ++t) {
                dg[t] = 0.06 + z + 0.05 * rng.normal();
                z = 0.26 * z + 0.11 * rng.normal();
            }
            const auto unres = fit_state_space(dg, false, {0.0});
            const auto res = fit_state_space(dg, true, {0.0});
            if (res.front().loglik > unres.front().loglik + 1e-7) nesting_ok = false;
            const double pll = kalman_profile_loglik(dg, 0.26, 0.0);
            const double lr = 2.0 * std::max(0.0, unres.front().loglik - pll);
            if (lr <= 3.841) ++covered;
        }
        const double coverage = static_cast<double>(covered) / n_rep;

        // corr sweep on one long corr = 0 dataset: the ACF's geometric decay
        // identifies rho_z whatever the pinned correlation
        Rng rng(Rng::split_seed(1002, 0));
        const int n_sweep = 3000;
        std::vector<double> dg(n_sweep);
        double z = 0.11 * rng.normal() / std::sqrt(1.0 - 0.26 * 0.26);
        for (int t = 0; t < n_sweep; ++t) {
            dg[t] = 0.06 + z + 0.05 * rng.normal();
            z = 0.26 * z + 0.11 * rng.normal();
        }
        const auto sweep =
            fit_state_space(dg, false, {-0.9, -0.6, -0.3, 0.0, 0.3, 0.6, 0.9});
        double lo = 1e300, hi = -1e300;
        for (const auto& f : sweep) {
            lo = std::min(lo, f.rho_z_hat);
            hi = std::max(hi, f.rho_z_hat);
        }
        pass = coverage >= 0.90 && nesting_ok && (hi - lo) < 0.1;
        return "coverage = " + fmt(coverage) + ", nesting " +
               (nesting_ok ? "holds" : "violated") + ", sweep range = " + fmt(hi - lo);
    });

    // 11. rho_z system estimator
    run(11, "analyst-system estimator", [&](bool& pass) {
        // exact recovery without noise
        double worst = 0;
        for (double rho : {0.5, -0.2, 0.0, 0.3}) {
            Rng rng(1101);
            const int n = 200;
            std::vector<double> e1(n), e2(n), e3(n);
            double z = 0.1 * rng.normal();
            for (int t = 0; t < n; ++t) {
                e1[t] = 0.06 + z;
                e2[t] = 0.06 + rho * z;
                e3[t] = 0.06 + rho * rho * z;
                z = rho * z + 0.1 * rng.normal();
            }
            Panel p(monthly_dates(n), Frequency::monthly);
            p.add_column("e1", e1);
            p.add_column("e2", e2);
            p.add_column("e3", e3);
            const RhoZSystemFit fit = estimate_rhoz_system(p, SystemVariant::Y1Y3, 18);
            worst = std::max(worst, std::abs(fit.rho_z_hat - rho));
        }

        const int n_rep = 1000;
        int inside = 0;
        for (int rep = 0; rep < n_rep; ++rep) {
            Rng rng(Rng::split_seed(1102, rep));
            const int n = 600;
            std::vector<double> e1(n), e2(n), e3(n);
            for (int t = 0; t < n; ++t) {
                const double z = 0.05 * rng.normal();  // rho_z = 0: iid state
                e1[t] = 0.10 + z + 0.02 * rng.normal();
                e2[t] = 0.10 + 0.02 * rng.normal();
                e3[t] = 0.10 + 0.02 * rng.normal();
            }
            Panel p(monthly_dates(n), Frequency::monthly);
            p.add_column("e1", e1);
            p.add_column("e2", e2);
            p.add_column("e3", e3);
            const RhoZSystemFit fit = estimate_rhoz_system(p, SystemVariant::Y1Y3, 18);
            if (std::abs(fit.t_rho_z) < 2.0) ++inside;
        }
        const double calm = static_cast<double>(inside) / n_rep;
        pass = worst < 1e-10 && calm >= 0.93;
        return "noiseless error = " + fmt(worst) + ", |t| < 2 share = " + fmt(calm);
    });

    // 12. Spectrum
    run(12, "spectrum estimates", [&](bool& pass) {
        Rng rng(1201);
        const int n = 1 << 17;
        std::vector<double> x(n);
        double s = 0;
        for (int i = 0; i < n; ++i) {
            s = 0.9 * s + rng.normal();
            x[i] = s;
        }
        const SpectrumEstimate est = spectral_density(x);
        double var = 0, mean = 0;
        for (double v : x) mean += v;
        mean /= n;
        for (double v : x) var += (v - mean) * (v - mean);
        var /= n;
        const double parseval_err = std::abs(est.integral() - var) / var;

        auto theory = [&](double w) { return 1.0 / (1.0 - 1.8 * std::cos(w) + 0.81); };
        const std::size_t j_lo = est.bandwidth;
        const std::size_t j_hi = est.density.size() - 1 - est.bandwidth;
        const double ratio_est = est.density[j_lo] / est.density[j_hi];
        const double ratio_th = theory(est.frequencies[j_lo]) / theory(est.frequencies[j_hi]);
        const double ratio_err = std::abs(ratio_est - ratio_th) / ratio_th;

        pass = parseval_err < 0.02 && ratio_err < 0.20;
        return "Parseval error = " + fmt(parseval_err) + ", AR(1) ratio error = " + fmt(ratio_err);
    });

    // 13. Determinism of the demo pipeline
    run(13, "demo determinism", [&](bool& pass) {
        const fs::path root = fs::temp_directory_path();
        const fs::path a = root / "durlab_acc_demo_a";
        const fs::path b = root / "durlab_acc_demo_b";
        fs::remove_all(a);
        fs::remove_all(b);
        const std::string cli = DURLAB_CLI_PATH;
        const int ra =
            std::system((cli + " demo --seed 7 --out " + a.string() + " >/dev/null 2>&1").c_str());
        const int rb =
            std::system((cli + " demo --seed 7 --out " + b.string() + " >/dev/null 2>&1").c_str());
        if (ra != 0 || rb != 0) {
            pass = false;
            return std::string("demo run failed");
        }
        std::vector<fs::path> fa, fb;
        for (const auto& e : fs::recursive_directory_iterator(a))
            if (e.is_regular_file()) fa.push_back(e.path());
        for (const auto& e : fs::recursive_directory_iterator(b))
            if (e.is_regular_file()) fb.push_back(e.path());
        std::sort(fa.begin(), fa.end());
        std::sort(fb.begin(), fb.end());
        if (fa.size() != fb.size() || fa.empty()) {
            pass = false;
            return std::string("tree mismatch: ") + std::to_string(fa.size()) + " vs " +
                   std::to_string(fb.size());
        }
        auto slurp = [](const fs::path& p) {
            std::ifstream in(p, std::ios::binary);
            std::stringstream ss;
            ss << in.rdbuf();
            return ss.str();
        };
        int identical = 0;
        for (std::size_t i = 0; i < fa.size(); ++i) {
            if (fa[i].lexically_relative(a) != fb[i].lexically_relative(b)) break;
            if (slurp(fa[i]) == slurp(fb[i])) ++identical;
        }
        pass = identical == static_cast<int>(fa.size());
        return std::to_string(identical) + "/" + std::to_string(fa.size()) +
               " files byte-identical";
    });

    std::printf("%s: %d of 13 criteria failed\n", g_failures == 0 ? "OK" : "FAILED", g_failures);
    return g_failures == 0 ? 0 : 1;
}
