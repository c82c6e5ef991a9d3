#pragma once

#include <map>
#include <string>
#include <vector>

#include "durlab/series.hpp"

namespace durlab {

/// Shape-preserving piecewise-cubic (Fritsch-Carlson) interpolation of a
/// futures curve. Exact at knots, preserves local monotonicity, never
/// extrapolates.
double interpolate_futures(const std::vector<std::pair<double, double>>& curve, double target);

/// Linear interpolation fallback for sensitivity runs.
double interpolate_futures_linear(const std::vector<std::pair<double, double>>& curve,
                                  double target);

/// Zero-coupon curve lookup, log-linear in price against maturity.
double interpolate_zcb(const std::vector<std::pair<double, double>>& curve, double target);

enum class CurveInterp { pchip, linear };

struct StripPrices {
    double p05 = 0;       // value of dividends into 6 months
    double p1 = 0;        // value of dividends into 1 year
    double p05_plus = 0;  // value of dividends beyond 6 months
    double p1_plus = 0;   // value of dividends beyond 1 year
};

/// P^{n+} = zcb(n) * F(n); P^n = index - P^{n+} for n in {0.5, 1}. Throws
/// DataQualityError (carrying the date and magnitude) when an implied strip
/// price is nonpositive.
StripPrices strip_prices(const MarketSnapshot& snapshot,
                         CurveInterp interp = CurveInterp::pchip);

/// Log valuation ratios built from a snapshot sequence. dr = pd - s1 holds
/// by construction of the subtraction, not as an approximation.
struct ValuationSeries {
    DatedSeries dr, pd, s1, s05, s1plus;  // log ratios
    DatedSeries p1, p1plus;               // currency prices
    std::vector<std::string> skipped;     // log lines for skipped dates

    Panel to_panel() const;
};

enum class ErrorPolicy { fail_fast, skip_and_log };

ValuationSeries valuation_series(const std::vector<MarketSnapshot>& snapshots,
                                 ErrorPolicy policy = ErrorPolicy::fail_fast,
                                 CurveInterp interp = CurveInterp::pchip);

/// exp(dr): market value as a multiple of next-year dividend value, in years.
double duration_years(double dr);
/// exp(-dr): share of market value due within the next year.
double near_year_share(double dr);

struct DurationStats {
    std::vector<std::string> columns;
    std::map<std::string, ColumnStats> stats;
    // derived from the dr column: duration in years and near-year value
    // share evaluated at the mean / min / max of dr
    double duration_years_mean = 0, duration_years_min = 0, duration_years_max = 0;
    double near_share_mean = 0, near_share_min = 0, near_share_max = 0;

    std::string to_text() const;
};

DurationStats duration_stats(const ValuationSeries& vs);

}  // namespace durlab
