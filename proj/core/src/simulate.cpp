#include "durlab/simulate.hpp"

#include <cmath>

#include "durlab/csv.hpp"
#include "durlab/errors.hpp"
#include "durlab/rng.hpp"

namespace durlab {

namespace {

std::vector<Date> make_grid(const Date& start, int T, int periods_per_year) {
    std::vector<Date> dates;
    dates.reserve(T);
    Date d0 = month_end(start);
    if (periods_per_year == 12) {
        for (int t = 0; t < T; ++t) dates.push_back(add_months_eom(d0, t));
    } else if (periods_per_year == 1) {
        for (int t = 0; t < T; ++t) dates.push_back(add_months_eom(d0, 12 * t));
    } else {
        throw ValidationError("periods_per_year must be 1 or 12");
    }
    return dates;
}

}  // namespace

Panel SimPath::to_panel() const {
    const std::size_t n = size();
    if (n < 2) throw ValidationError("path too short to export");
    const Frequency freq = periods_per_year == 12 ? Frequency::monthly : Frequency::annual;
    Panel p(std::vector<Date>(dates.begin(), dates.end() - 1), freq);
    auto head = [&](const std::vector<double>& v) {
        return std::vector<double>(v.begin(), v.end() - 1);
    };
    p.add_column("z", head(z));
    p.add_column("y", head(y));
    p.add_column("D", head(D));
    p.add_column("pd", head(pd));
    p.add_column("s1", head(s1));
    p.add_column("s05", head(s05));
    p.add_column("dr", head(dr));
    p.add_column("er", head(er));
    p.add_column("P", head(P));
    p.add_column("P1", head(P1));
    if (periods_per_year == 12) {
        std::vector<double> flow = head(D);
        for (double& f : flow) f /= 12.0;
        p.add_column("div_flow", std::move(flow));
    }
    p.add_column("r_next", r);
    p.add_column("dd_next", dd);
    return p;
}

StripLoading strip_loading(const ModelParams2D& params, int periods_per_year,
                           double maturity_years) {
    const double steps_exact = maturity_years * periods_per_year;
    int refine = 0;
    for (int f : {1, 2, 4}) {
        const double s = steps_exact * f;
        if (std::abs(s - std::round(s)) < 1e-9 && std::round(s) >= 1) {
            refine = f;
            break;
        }
    }
    if (refine == 0)
        throw ValidationError("maturity " + format_double(maturity_years) +
                              "y is not on the supported quarter grid");
    const ModelParams2D scaled = refine == 1 ? params : params.subperiod(refine);
    const int steps = static_cast<int>(std::round(steps_exact * refine));
    const StripCoefficients coeffs = solve_strip_coefficients(scaled.to_general(), steps);
    StripLoading out;
    out.a = coeffs.A[steps];
    out.b_z = coeffs.B[steps][0];  // state order (z, y)
    out.b_y = coeffs.B[steps][1];
    return out;
}

SimPath simulate(const ModelParams2D& params, const SimConfig& config, int T,
                 std::uint64_t seed) {
    params.validate();
    if (T < 2) throw ValidationError("T must be >= 2");
    const ClosedForm2D cf = solve_2d(params, config.pd_bar);

    // one-year and six-month strip loadings at this sampling frequency
    StripLoading l1, l05;
    if (config.periods_per_year == 1) {
        l1 = {cf.A_1, cf.B_1, cf.C_1};
        l05 = strip_loading(params, 1, 0.5);
    } else {
        l1 = strip_loading(params, config.periods_per_year, 1.0);
        l05 = strip_loading(params, config.periods_per_year, 0.5);
    }

    SimPath path;
    path.seed = seed;
    path.periods_per_year = config.periods_per_year;
    path.closed_form = cf;
    path.dates = make_grid(config.start, T, config.periods_per_year);
    path.z.resize(T);
    path.y.resize(T);
    path.D.resize(T);
    path.pd.resize(T);
    path.s1.resize(T);
    path.s05.resize(T);
    path.dr.resize(T);
    path.P.resize(T);
    path.P1.resize(T);
    path.er.resize(T);
    path.r.resize(T - 1);
    path.dd.resize(T - 1);

    Rng rng(seed);
    const Eigen::MatrixXd shock_factor = psd_factor(params.Sigma);

    // stationary joint draw for (z0, y0)
    const double vz = params.sigma_z.dot(params.Sigma * params.sigma_z) /
                      (1.0 - params.rho_z * params.rho_z);
    const double vy = params.sigma_y.dot(params.Sigma * params.sigma_y) /
                      (1.0 - params.rho_y * params.rho_y);
    const double czy = params.sigma_z.dot(params.Sigma * params.sigma_y) /
                       (1.0 - params.rho_z * params.rho_y);
    Eigen::Matrix2d stat_cov{{vz, czy}, {czy, vy}};
    const Eigen::MatrixXd stat_factor = psd_factor(stat_cov);
    {
        const Eigen::VectorXd init = rng.normal_vector(stat_factor);
        path.z[0] = init[0];
        path.y[0] = init[1];
    }

    // dividends accumulate in log space so very long paths stay finite in
    // growth terms even when the level itself overflows
    const double jensen_d = 0.5 * params.sigma_D.dot(params.Sigma * params.sigma_D);
    std::vector<double> log_d(T, 0.0);
    for (int t = 0; t + 1 < T; ++t) {
        const Eigen::VectorXd eps = rng.normal_vector(shock_factor);
        const double g_t = path.z[t] + params.g_bar - jensen_d;
        path.z[t + 1] = params.rho_z * path.z[t] + params.sigma_z.dot(eps);
        path.y[t + 1] = params.rho_y * path.y[t] + params.sigma_y.dot(eps);
        path.dd[t] = g_t + params.sigma_D.dot(eps);
        log_d[t + 1] = log_d[t] + path.dd[t];
    }

    for (int t = 0; t < T; ++t) {
        path.pd[t] = cf.pd(path.y[t], path.z[t]);
        path.s1[t] = l1.value(path.y[t], path.z[t]);
        path.s05[t] = l05.value(path.y[t], path.z[t]);
        path.dr[t] = path.pd[t] - path.s1[t];
        path.er[t] = cf.expected_return(path.y[t]);
        path.D[t] = std::exp(log_d[t]);
        path.P[t] = std::exp(path.pd[t] + log_d[t]);
        path.P1[t] = std::exp(path.s1[t] + log_d[t]);
        if (path.dr[t] <= 0.0)
            throw ValidationError("calibration yields nonpositive duration dr at t = " +
                                  std::to_string(t));
    }
    for (int t = 0; t + 1 < T; ++t)
        path.r[t] = cf.kappa0 + cf.kappa1 * path.pd[t + 1] - path.pd[t] + path.dd[t];
    return path;
}

SimPath simulate(const ModelParams2D& params, double pd_bar, int T, std::uint64_t seed) {
    SimConfig config;
    config.pd_bar = pd_bar;
    return simulate(params, config, T, seed);
}

std::vector<MarketSnapshot> synthesize_snapshots(const SimPath& path, const ModelParams2D& params,
                                                 const std::vector<double>& maturities) {
    if (maturities.size() < 2) throw ValidationError("need at least two maturities");
    for (std::size_t i = 1; i < maturities.size(); ++i)
        if (maturities[i] <= maturities[i - 1])
            throw ValidationError("maturities must be strictly increasing");

    // cumulative dividend value into year n: whole-year lumps plus one
    // fractional lump, each priced off its own strip loading
    struct CumLoading {
        std::vector<StripLoading> lumps;
    };
    std::vector<CumLoading> cums;
    for (double m : maturities) {
        CumLoading c;
        const int whole = static_cast<int>(std::floor(m + 1e-9));
        for (int j = 1; j <= whole; ++j)
            c.lumps.push_back(strip_loading(params, path.periods_per_year, j));
        const double frac = m - whole;
        if (frac > 1e-9)
            c.lumps.push_back(strip_loading(params, path.periods_per_year, m));
        cums.push_back(std::move(c));
    }

    const double rf_annual = params.r_f * path.periods_per_year;
    std::vector<MarketSnapshot> snaps;
    snaps.reserve(path.size());
    for (std::size_t t = 0; t < path.size(); ++t) {
        MarketSnapshot s;
        s.date = path.dates[t];
        s.index_level = path.P[t];
        s.trailing_dividend = path.D[t];
        for (std::size_t i = 0; i < maturities.size(); ++i) {
            const double n = maturities[i];
            double cum = 0.0;
            for (const auto& lump : cums[i].lumps)
                cum += std::exp(lump.value(path.y[t], path.z[t])) * path.D[t];
            const double zcb = std::exp(-n * rf_annual);
            const double forward_value = path.P[t] - cum;
            if (forward_value <= 0.0)
                throw DataQualityError("synthesized forward dividend value nonpositive at " +
                                       s.date.to_string() + " maturity " + format_double(n));
            s.futures.emplace_back(n, forward_value / zcb);
            s.zcb.emplace_back(n, zcb);
        }
        s.validate();
        snaps.push_back(std::move(s));
    }
    return snaps;
}

}  // namespace durlab
