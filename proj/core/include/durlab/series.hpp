#pragma once

#include <map>
#include <string>
#include <vector>

#include "durlab/dates.hpp"

namespace durlab {

/// Calendar-indexed series of real observations. Immutable after
/// construction; dates are strictly increasing and their spacing matches
/// the declared frequency (monthly grids are consecutive month stamps).
/// Missing values inside a series are not representable.
class DatedSeries {
   public:
    DatedSeries() = default;
    DatedSeries(std::vector<Date> dates, std::vector<double> values, Frequency freq);

    const std::vector<Date>& dates() const { return dates_; }
    const std::vector<double>& values() const { return values_; }
    Frequency frequency() const { return freq_; }

    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    const Date& date(std::size_t i) const { return dates_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }

    /// Index of date d, or -1 if absent.
    long find(const Date& d) const;

   private:
    std::vector<Date> dates_;
    std::vector<double> values_;
    Frequency freq_ = Frequency::monthly;
};

/// Named columns on one shared date grid.
class Panel {
   public:
    Panel() = default;
    Panel(std::vector<Date> dates, Frequency freq);

    void add_column(const std::string& name, std::vector<double> values);

    const std::vector<Date>& dates() const { return dates_; }
    Frequency frequency() const { return freq_; }
    std::size_t rows() const { return dates_.size(); }
    std::size_t cols() const { return names_.size(); }

    const std::vector<std::string>& names() const { return names_; }
    bool has_column(const std::string& name) const;
    const std::vector<double>& column(const std::string& name) const;
    DatedSeries series(const std::string& name) const;

    /// Row-subset panel keeping all columns, rows [first, last).
    Panel slice(std::size_t first, std::size_t last) const;

   private:
    std::vector<Date> dates_;
    Frequency freq_ = Frequency::monthly;
    std::vector<std::string> names_;          // insertion order, for deterministic output
    std::vector<std::vector<double>> data_;   // parallel to names_
    std::map<std::string, std::size_t> index_;
};

/// One date's raw market inputs: index level, futures curve, zero-coupon
/// curve, and the trailing 12-month dividend.
struct MarketSnapshot {
    Date date;
    double index_level = 0.0;
    double trailing_dividend = 0.0;
    std::vector<std::pair<double, double>> futures;  // (maturity years, price)
    std::vector<std::pair<double, double>> zcb;      // (maturity years, price)

    /// Enforces positive prices and strictly increasing maturities.
    void validate() const;
};

/// Deduces the grid frequency from date spacing (monthly, weekly or annual);
/// a single date defaults to monthly. Throws ValidationError on anything else.
Frequency infer_frequency(const std::vector<Date>& dates);

/// Restricts both series to the intersection of their dates. An empty
/// intersection yields a zero-row panel, not an error.
Panel align(const DatedSeries& a, const DatedSeries& b,
            const std::string& name_a = "a", const std::string& name_b = "b");

/// Joins any number of named series on their common dates.
Panel align_all(const std::vector<std::pair<std::string, DatedSeries>>& columns);

/// Twelve-month overlapping log total returns from monthly prices and
/// monthly dividend flows: ln((P[t+12] + sum of the 12 intervening monthly
/// dividends) / P[t]). Within-year dividends are accumulated without
/// reinvestment interest. The result ends 12 months before the input does.
DatedSeries annual_log_return(const DatedSeries& prices, const DatedSeries& dividends);

/// Basic column summary used by duration_stats and report printers.
struct ColumnStats {
    std::size_t count = 0;
    double mean = 0, stddev = 0, min = 0, q25 = 0, q50 = 0, q75 = 0, max = 0;
    double autocorr1 = 0;      // lag-1 autocorrelation
    bool autocorr_defined = false;
};

ColumnStats summarize(const std::vector<double>& values);

}  // namespace durlab
