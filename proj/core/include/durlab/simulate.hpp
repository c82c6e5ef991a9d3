#pragma once

#include <cstdint>
#include <vector>

#include "durlab/affine2d.hpp"
#include "durlab/series.hpp"

namespace durlab {

/// One synthetic economy. State, dividend and price series have length T;
/// the one-period log market return r has length T-1 with r[t] covering
/// t -> t+1. s1 and s05 are always the one-year and six-month strip ratios
/// regardless of the simulation period.
struct SimPath {
    std::vector<double> z, y;          // states
    std::vector<double> D;             // dividend level (annualized rate)
    std::vector<double> pd, s1, s05, dr;
    std::vector<double> P, P1;         // market and one-year strip prices
    std::vector<double> er;            // conditional expected one-period return
    std::vector<double> r;             // realized one-period log return, length T-1
    std::vector<double> dd;            // one-period log dividend growth, length T-1
    std::vector<Date> dates;
    int periods_per_year = 1;
    std::uint64_t seed = 0;
    ClosedForm2D closed_form;

    std::size_t size() const { return pd.size(); }

    /// Panel over rows 0..T-2 (the last row is dropped so the forward
    /// return column r_next aligns with same-date predictors).
    Panel to_panel() const;
};

struct SimConfig {
    double pd_bar = 3.9;          // log-linearization point
    int periods_per_year = 1;     // 1 = annual model units, 12 = monthly grid
    Date start{1980, 12, 31};     // first grid stamp (month-end is enforced)
};

/// Simulates the 2D economy for T periods. Fully deterministic given
/// (params, config, T, seed); states start at the stationary distribution.
SimPath simulate(const ModelParams2D& params, const SimConfig& config, int T,
                 std::uint64_t seed);

/// Convenience overload matching the annual baseline.
SimPath simulate(const ModelParams2D& params, double pd_bar, int T, std::uint64_t seed);

/// Log strip ratio coefficients ln(P^m / D) = a + b_y y + b_z z for a
/// maturity of m years in a model sampled periods_per_year times a year.
/// Non-integral step counts price the dividend through a subperiod
/// refinement of the parameters.
struct StripLoading {
    double a = 0, b_y = 0, b_z = 0;
    double value(double y, double z) const { return a + b_y * y + b_z * z; }
};
StripLoading strip_loading(const ModelParams2D& params, int periods_per_year,
                           double maturity_years);

/// Builds the raw market inputs that the strip builder consumes: zero-coupon
/// prices e^{-n rf}, futures (P - value of dividends into year n)/zcb(n),
/// index level and trailing dividend. Inverting the snapshots through the
/// strip builder recovers the path's P1 and dr.
std::vector<MarketSnapshot> synthesize_snapshots(const SimPath& path, const ModelParams2D& params,
                                                 const std::vector<double>& maturities);

}  // namespace durlab
