#include "durlab/strips.hpp"

#include <cmath>
#include <sstream>

#include "durlab/csv.hpp"
#include "durlab/errors.hpp"

namespace durlab {

namespace {

void check_curve_for_interp(const std::vector<std::pair<double, double>>& curve, double target) {
    if (curve.size() < 2) throw ValidationError("curve needs at least 2 points");
    if (target < curve.front().first || target > curve.back().first)
        throw ValidationError("target maturity " + format_double(target) +
                              " outside curve range [" + format_double(curve.front().first) +
                              ", " + format_double(curve.back().first) + "], not extrapolating");
}

}  // namespace

double interpolate_futures(const std::vector<std::pair<double, double>>& curve, double target) {
    check_curve_for_interp(curve, target);
    const std::size_t n = curve.size();

    std::vector<double> h(n - 1), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = curve[i + 1].first - curve[i].first;
        delta[i] = (curve[i + 1].second - curve[i].second) / h[i];
    }

    // Fritsch-Carlson tangents: weighted harmonic mean inside, one-sided
    // three-point formula with clamping at the ends
    std::vector<double> m(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            m[i] = 0.0;
        } else {
            const double w1 = 2.0 * h[i] + h[i - 1];
            const double w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    auto endpoint = [](double h0, double h1, double d0, double d1) {
        double t = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (t * d0 <= 0.0)
            t = 0.0;
        else if (d0 * d1 < 0.0 && std::abs(t) > 3.0 * std::abs(d0))
            t = 3.0 * d0;
        return t;
    };
    if (n == 2) {
        m[0] = m[1] = delta[0];
    } else {
        m[0] = endpoint(h[0], h[1], delta[0], delta[1]);
        m[n - 1] = endpoint(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    }

    std::size_t k = 0;
    while (k + 2 < n && curve[k + 1].first < target) ++k;
    const double t = (target - curve[k].first) / h[k];
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * curve[k].second + h10 * h[k] * m[k] + h01 * curve[k + 1].second +
           h11 * h[k] * m[k + 1];
}

double interpolate_futures_linear(const std::vector<std::pair<double, double>>& curve,
                                  double target) {
    check_curve_for_interp(curve, target);
    std::size_t k = 0;
    while (k + 2 < curve.size() && curve[k + 1].first < target) ++k;
    const double w = (target - curve[k].first) / (curve[k + 1].first - curve[k].first);
    return (1.0 - w) * curve[k].second + w * curve[k + 1].second;
}

double interpolate_zcb(const std::vector<std::pair<double, double>>& curve, double target) {
    check_curve_for_interp(curve, target);
    std::size_t k = 0;
    while (k + 2 < curve.size() && curve[k + 1].first < target) ++k;
    const double w = (target - curve[k].first) / (curve[k + 1].first - curve[k].first);
    // log-linear in price keeps discount factors positive
    return std::exp((1.0 - w) * std::log(curve[k].second) + w * std::log(curve[k + 1].second));
}

StripPrices strip_prices(const MarketSnapshot& snapshot, CurveInterp interp) {
    snapshot.validate();
    auto future_at = [&](double m) {
        return interp == CurveInterp::pchip ? interpolate_futures(snapshot.futures, m)
                                            : interpolate_futures_linear(snapshot.futures, m);
    };

    StripPrices out;
    const double maturities[2] = {0.5, 1.0};
    double* plus[2] = {&out.p05_plus, &out.p1_plus};
    double* spot[2] = {&out.p05, &out.p1};
    for (int i = 0; i < 2; ++i) {
        const double n = maturities[i];
        const double zcb = interpolate_zcb(snapshot.zcb, n);
        const double fwd = zcb * future_at(n);
        const double strip = snapshot.index_level - fwd;
        if (!(strip > 0.0))
            throw DataQualityError("implied " + format_double(n) + "y strip price " +
                                   format_double(strip) + " is nonpositive on " +
                                   snapshot.date.to_string());
        *plus[i] = fwd;
        *spot[i] = strip;
    }
    if (!std::isfinite(out.p05) || !std::isfinite(out.p1))
        throw NumericalError("non-finite strip price on " + snapshot.date.to_string());
    return out;
}

ValuationSeries valuation_series(const std::vector<MarketSnapshot>& snapshots, ErrorPolicy policy,
                                 CurveInterp interp) {
    if (snapshots.empty()) throw ValidationError("no snapshots");
    for (std::size_t i = 1; i < snapshots.size(); ++i)
        if (!(snapshots[i - 1].date < snapshots[i].date))
            throw ValidationError("snapshots not sorted by date at " +
                                  snapshots[i].date.to_string());
    std::vector<Date> dates;
    std::vector<double> dr, pd, s1, s05, s1plus, p1, p1plus;
    ValuationSeries vs;
    for (const auto& snap : snapshots) {
        try {
            if (snap.trailing_dividend <= 0.0)
                throw ValidationError("nonpositive trailing dividend on " +
                                      snap.date.to_string());
            const StripPrices sp = strip_prices(snap, interp);
            const double d = snap.trailing_dividend;
            const double pd_t = std::log(snap.index_level / d);
            const double s1_t = std::log(sp.p1 / d);
            dates.push_back(snap.date);
            pd.push_back(pd_t);
            s1.push_back(s1_t);
            dr.push_back(pd_t - s1_t);
            s05.push_back(std::log(sp.p05 / d));
            s1plus.push_back(std::log(sp.p1_plus / d));
            p1.push_back(sp.p1);
            p1plus.push_back(sp.p1_plus);
        } catch (const Error& e) {
            if (policy == ErrorPolicy::fail_fast) throw;
            vs.skipped.push_back(snap.date.to_string() + ": " + e.what());
        }
    }
    const Frequency freq = infer_frequency(dates);  // skipped rows may leave holes
    vs.dr = DatedSeries(dates, dr, freq);
    vs.pd = DatedSeries(dates, pd, freq);
    vs.s1 = DatedSeries(dates, s1, freq);
    vs.s05 = DatedSeries(dates, s05, freq);
    vs.s1plus = DatedSeries(dates, s1plus, freq);
    vs.p1 = DatedSeries(dates, p1, freq);
    vs.p1plus = DatedSeries(std::move(dates), p1plus, freq);
    return vs;
}

Panel ValuationSeries::to_panel() const {
    Panel p(dr.dates(), dr.frequency());
    p.add_column("dr", dr.values());
    p.add_column("pd", pd.values());
    p.add_column("s1", s1.values());
    p.add_column("s05", s05.values());
    p.add_column("s1plus", s1plus.values());
    p.add_column("p1", p1.values());
    p.add_column("p1plus", p1plus.values());
    return p;
}

double duration_years(double dr) { return std::exp(dr); }
double near_year_share(double dr) { return std::exp(-dr); }

DurationStats duration_stats(const ValuationSeries& vs) {
    if (vs.dr.empty()) throw ValidationError("empty valuation series");
    DurationStats out;
    const std::pair<std::string, const DatedSeries*> cols[] = {
        {"dr", &vs.dr},       {"pd", &vs.pd}, {"s1", &vs.s1},
        {"s05", &vs.s05},     {"s1plus", &vs.s1plus},
        {"p1", &vs.p1},       {"p1plus", &vs.p1plus},
    };
    for (const auto& [name, series] : cols) {
        out.columns.push_back(name);
        out.stats[name] = summarize(series->values());
    }
    const ColumnStats& dr = out.stats.at("dr");
    out.duration_years_mean = duration_years(dr.mean);
    out.duration_years_min = duration_years(dr.min);
    out.duration_years_max = duration_years(dr.max);
    out.near_share_mean = near_year_share(dr.mean);
    out.near_share_min = near_year_share(dr.max);  // longest duration -> smallest share
    out.near_share_max = near_year_share(dr.min);
    return out;
}

std::string DurationStats::to_text() const {
    std::ostringstream os;
    os << "column,count,mean,std,min,q25,q50,q75,max,autocorr1\n";
    for (const auto& name : columns) {
        const ColumnStats& s = stats.at(name);
        os << name << "," << s.count << "," << format_double(s.mean) << ","
           << format_double(s.stddev) << "," << format_double(s.min) << ","
           << format_double(s.q25) << "," << format_double(s.q50) << "," << format_double(s.q75)
           << "," << format_double(s.max) << ","
           << (s.autocorr_defined ? format_double(s.autocorr1) : std::string("NA")) << "\n";
    }
    os << "duration_years_mean = " << format_double(duration_years_mean) << "\n";
    os << "duration_years_min = " << format_double(duration_years_min) << "\n";
    os << "duration_years_max = " << format_double(duration_years_max) << "\n";
    os << "near_year_share_mean = " << format_double(near_share_mean) << "\n";
    os << "near_year_share_min = " << format_double(near_share_min) << "\n";
    os << "near_year_share_max = " << format_double(near_share_max) << "\n";
    return os.str();
}

}  // namespace durlab
