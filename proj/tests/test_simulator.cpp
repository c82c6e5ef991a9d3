#include <doctest.h>

#include <cmath>

#include "durlab/errors.hpp"
#include "durlab/series.hpp"
#include "durlab/simulate.hpp"
#include "durlab/strips.hpp"
#include "test_helpers.hpp"

using namespace durlab;
using namespace durlab::testing;

TEST_CASE("degenerate economy: no shocks, constant ratios, constant return") {
    ModelParams2D p = baseline_params();
    p.sigma_z.setZero();
    p.sigma_y.setZero();
    p.sigma_D.setZero();
    const SimPath path = simulate(p, 3.9, 50, 1);
    const ClosedForm2D& cf = path.closed_form;

    for (std::size_t t = 1; t < path.size(); ++t) {
        CHECK(path.pd[t] == doctest::Approx(path.pd[0]).epsilon(1e-14));
        CHECK(path.dr[t] == doctest::Approx(path.dr[0]).epsilon(1e-14));
    }
    const double expected_r = cf.kappa0 + (cf.kappa1 - 1.0) * path.pd[0] + p.g_bar;
    for (double r : path.r) CHECK(r == doctest::Approx(expected_r).epsilon(1e-12));
}

TEST_CASE("same seed gives bit-identical paths") {
    const ModelParams2D p = persistent_growth_params();
    const SimPath a = simulate(p, 3.9, 300, 20240807);
    const SimPath b = simulate(p, 3.9, 300, 20240807);
    for (std::size_t t = 0; t < a.size(); ++t) {
        CHECK(a.z[t] == b.z[t]);
        CHECK(a.D[t] == b.D[t]);
        CHECK(a.P[t] == b.P[t]);
    }
    const SimPath c = simulate(p, 3.9, 300, 7);
    bool any_different = false;
    for (std::size_t t = 0; t < a.size(); ++t) any_different |= (a.z[t] != c.z[t]);
    CHECK(any_different);
}

TEST_CASE("rho_z = 0: sample slope of r on dr matches B_er / (B_pd - B_1)") {
    const ModelParams2D p = baseline_params();
    const SimPath path = simulate(p, 3.9, 100000, 99);
    const ClosedForm2D& cf = path.closed_form;

    const std::size_t n = path.r.size();
    double mx = 0, my = 0;
    for (std::size_t t = 0; t < n; ++t) {
        mx += path.dr[t];
        my += path.r[t];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, see = 0;
    for (std::size_t t = 0; t < n; ++t) {
        sxx += (path.dr[t] - mx) * (path.dr[t] - mx);
        sxy += (path.dr[t] - mx) * (path.r[t] - my);
    }
    const double slope = sxy / sxx;
    const double theory = cf.B_er / (cf.B_pd - cf.B_1);
    for (std::size_t t = 0; t < n; ++t) {
        const double e = (path.r[t] - my) - slope * (path.dr[t] - mx);
        see += e * e;
    }
    const double se = std::sqrt(see / (n - 2) / sxx);
    CHECK(std::abs(slope - theory) < 2.0 * se);
    CHECK(theory < 0.0);  // duration predicts returns with a negative sign
}

TEST_CASE("snapshot synthesis: zcb * F + P1 = P at the one-year point") {
    const ModelParams2D p = persistent_growth_params();
    const SimPath path = simulate(p, 3.9, 120, 3);
    const auto snaps = synthesize_snapshots(path, p, {0.5, 1.0, 2.0});
    for (std::size_t t = 0; t < snaps.size(); ++t) {
        double f1 = 0, z1 = 0;
        for (const auto& [m, v] : snaps[t].futures)
            if (m == 1.0) f1 = v;
        for (const auto& [m, v] : snaps[t].zcb)
            if (m == 1.0) z1 = v;
        CHECK(std::abs(z1 * f1 + path.P1[t] - path.P[t]) < 1e-10 * path.P[t]);
    }
}

TEST_CASE("snapshot synthesis: r_f = 0 makes futures equal the forward value") {
    ModelParams2D p = baseline_params();
    p.r_f = 0.0;
    const SimPath path = simulate(p, 3.9, 30, 4);
    const auto snaps = synthesize_snapshots(path, p, {0.5, 1.0});
    for (std::size_t t = 0; t < snaps.size(); ++t) {
        for (const auto& [m, v] : snaps[t].zcb) CHECK(v == doctest::Approx(1.0));
        double f1 = 0;
        for (const auto& [m, v] : snaps[t].futures)
            if (m == 1.0) f1 = v;
        CHECK(f1 == doctest::Approx(path.P[t] - path.P1[t]).epsilon(1e-12));
    }
}

TEST_CASE("full loop: simulate -> synthesize -> strip builder reproduces dr and pd") {
    for (const ModelParams2D& p :
         {baseline_params(), persistent_growth_params(0.3), persistent_growth_params(-0.25)}) {
        const SimPath path = simulate(p, 3.9, 600, 11);
        const auto snaps = synthesize_snapshots(path, p, {0.25, 0.5, 1.0, 1.5, 2.0});
        const ValuationSeries vs = valuation_series(snaps);
        REQUIRE(vs.dr.size() == path.size());
        for (std::size_t t = 0; t < path.size(); ++t) {
            CHECK(std::abs(vs.dr[t] - path.dr[t]) < 1e-8 * std::abs(path.dr[t]));
            CHECK(std::abs(vs.pd[t] - path.pd[t]) < 1e-8 * std::abs(path.pd[t]));
        }
    }
}

TEST_CASE("stationary moments: variance of z within 1% at T = 1e6") {
    const ModelParams2D p = persistent_growth_params(0.5);
    const SimPath path = simulate(p, 3.9, 1000000, 8);
    const double vz = var_of(path.z);
    const double theory = p.sigma_z.dot(p.Sigma * p.sigma_z) / (1.0 - p.rho_z * p.rho_z);
    CHECK(std::abs(vz - theory) < 0.01 * theory);
}

TEST_CASE("P1 never exceeds P and dr = pd - s1 holds elementwise") {
    const SimPath path = simulate(persistent_growth_params(), 3.9, 2000, 6);
    for (std::size_t t = 0; t < path.size(); ++t) {
        CHECK(path.P1[t] <= path.P[t]);
        CHECK(path.dr[t] == path.pd[t] - path.s1[t]);  // exact subtraction
    }
}

TEST_CASE("forecast-error covariance with z carries the sign of rho_z") {
    // the investor forecasts with the dr rule; with persistent growth the
    // error comoves with z in the direction of rho_z
    auto mean_error_cov = [](double rho_z, int n_paths, double* out_se) {
        const ModelParams2D p = persistent_growth_params(rho_z);
        const ClosedForm2D cf = solve_2d(p, 3.9);
        const double m = cf.B_er / (cf.B_pd - cf.B_1);
        const double a = cf.A_er - m * (cf.A_pd - cf.A_1);
        std::vector<double> covs(n_paths);
        for (int rep = 0; rep < n_paths; ++rep) {
            const SimPath path = simulate(p, 3.9, 400, Rng::split_seed(505, rep));
            const std::size_t n = path.r.size();
            double mz = 0, mv = 0;
            std::vector<double> nu(n);
            for (std::size_t t = 0; t < n; ++t) {
                nu[t] = path.r[t] - (a + m * path.dr[t]);
                mz += path.z[t];
                mv += nu[t];
            }
            mz /= n;
            mv /= n;
            double c = 0;
            for (std::size_t t = 0; t < n; ++t) c += (path.z[t] - mz) * (nu[t] - mv);
            covs[rep] = c / (n - 1);
        }
        const double mean = mean_of(covs);
        *out_se = std::sqrt(var_of(covs) / n_paths);
        return mean;
    };

    double se_pos = 0, se_neg = 0;
    const double pos = mean_error_cov(0.3, 200, &se_pos);
    const double neg = mean_error_cov(-0.3, 200, &se_neg);
    CHECK(pos > 3.0 * se_pos);
    CHECK(neg < -3.0 * se_neg);
}

TEST_CASE("monthly grid: annual_log_return on the exported panel matches a direct sum") {
    const ModelParams2D monthly = baseline_params().subperiod(12);
    SimConfig config;
    config.pd_bar = 3.9;
    config.periods_per_year = 12;
    const SimPath path = simulate(monthly, config, 200, 17);
    const Panel panel = path.to_panel();

    const DatedSeries r12 = annual_log_return(panel.series("P"), panel.series("div_flow"));
    const auto& P = panel.column("P");
    const auto& flow = panel.column("div_flow");
    REQUIRE(r12.size() == panel.rows() - 12);
    for (std::size_t t = 0; t < r12.size(); ++t) {
        double paid = 0;
        for (int j = 1; j <= 12; ++j) paid += flow[t + j];
        const double expect = std::log((P[t + 12] + paid) / P[t]);
        CHECK(std::abs(r12[t] - expect) < 1e-10);
    }
}

TEST_CASE("subperiod scaling keeps stationary state variances") {
    const ModelParams2D annual = persistent_growth_params(0.4);
    const ModelParams2D monthly = annual.subperiod(12);
    const double var_annual =
        annual.sigma_z.dot(annual.Sigma * annual.sigma_z) / (1.0 - annual.rho_z * annual.rho_z);
    const double var_monthly = monthly.sigma_z.dot(monthly.Sigma * monthly.sigma_z) /
                               (1.0 - monthly.rho_z * monthly.rho_z);
    CHECK(var_monthly == doctest::Approx(var_annual).epsilon(1e-12));
    CHECK(monthly.rho_y == doctest::Approx(std::pow(annual.rho_y, 1.0 / 12.0)));
}

TEST_CASE("invalid simulation inputs raise parameter errors") {
    ModelParams2D p = baseline_params();
    p.rho_z = 1.2;
    CHECK_THROWS_AS(simulate(p, 3.9, 100, 1), ValidationError);
    CHECK_THROWS_AS(simulate(baseline_params(), 3.9, 1, 1), ValidationError);
    CHECK_THROWS_AS(
        synthesize_snapshots(simulate(baseline_params(), 3.9, 10, 1), baseline_params(), {0.37}),
        ValidationError);
}
