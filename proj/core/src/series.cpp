#include "durlab/series.hpp"

#include <algorithm>
#include <cmath>

#include "durlab/errors.hpp"

namespace durlab {

namespace {

void check_spacing(const std::vector<Date>& dates, Frequency freq) {
    for (std::size_t i = 1; i < dates.size(); ++i) {
        if (!(dates[i - 1] < dates[i]))
            throw ValidationError("dates not strictly increasing at " + dates[i].to_string());
        switch (freq) {
            case Frequency::monthly:
                if (dates[i].month_index() != dates[i - 1].month_index() + 1)
                    throw ValidationError("monthly grid gap before " + dates[i].to_string());
                break;
            case Frequency::weekly:
                if (dates[i].serial() != dates[i - 1].serial() + 7)
                    throw ValidationError("weekly grid gap before " + dates[i].to_string());
                break;
            case Frequency::annual:
                if (dates[i].year != dates[i - 1].year + 1 || dates[i].month != dates[i - 1].month)
                    throw ValidationError("annual grid gap before " + dates[i].to_string());
                break;
            case Frequency::irregular:
                break;  // strict increase already checked
        }
    }
}

}  // namespace

Frequency infer_frequency(const std::vector<Date>& dates) {
    if (dates.size() < 2) return Frequency::monthly;
    auto fits = [&](Frequency f) {
        try {
            check_spacing(dates, f);
            return true;
        } catch (const ValidationError&) {
            return false;
        }
    };
    const Date& a = dates[0];
    const Date& b = dates[1];
    if (b.serial() == a.serial() + 7 && fits(Frequency::weekly)) return Frequency::weekly;
    if (b.month_index() == a.month_index() + 1 && fits(Frequency::monthly))
        return Frequency::monthly;
    if (b.year == a.year + 1 && b.month == a.month && fits(Frequency::annual))
        return Frequency::annual;
    return Frequency::irregular;
}

DatedSeries::DatedSeries(std::vector<Date> dates, std::vector<double> values, Frequency freq)
    : dates_(std::move(dates)), values_(std::move(values)), freq_(freq) {
    if (dates_.size() != values_.size())
        throw ValidationError("dates/values length mismatch");
    check_spacing(dates_, freq_);
    for (double v : values_)
        if (!std::isfinite(v)) throw ValidationError("non-finite value in series");
}

long DatedSeries::find(const Date& d) const {
    auto it = std::lower_bound(dates_.begin(), dates_.end(), d);
    if (it == dates_.end() || *it != d) return -1;
    return it - dates_.begin();
}

Panel::Panel(std::vector<Date> dates, Frequency freq) : dates_(std::move(dates)), freq_(freq) {
    check_spacing(dates_, freq_);
}

void Panel::add_column(const std::string& name, std::vector<double> values) {
    if (values.size() != dates_.size())
        throw ValidationError("column '" + name + "' length does not match panel date grid");
    if (index_.count(name)) throw ValidationError("duplicate column '" + name + "'");
    index_[name] = names_.size();
    names_.push_back(name);
    data_.push_back(std::move(values));
}

bool Panel::has_column(const std::string& name) const { return index_.count(name) > 0; }

const std::vector<double>& Panel::column(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw ValidationError("no such column: '" + name + "'");
    return data_[it->second];
}

DatedSeries Panel::series(const std::string& name) const {
    return DatedSeries(dates_, column(name), freq_);
}

Panel Panel::slice(std::size_t first, std::size_t last) const {
    if (first > last || last > rows()) throw ValidationError("bad slice range");
    Panel out(std::vector<Date>(dates_.begin() + first, dates_.begin() + last), freq_);
    for (std::size_t c = 0; c < names_.size(); ++c)
        out.add_column(names_[c],
                       std::vector<double>(data_[c].begin() + first, data_[c].begin() + last));
    return out;
}

void MarketSnapshot::validate() const {
    if (index_level <= 0) throw ValidationError("nonpositive index level on " + date.to_string());
    if (trailing_dividend <= 0)
        throw ValidationError("nonpositive trailing dividend on " + date.to_string());
    auto check_curve = [&](const std::vector<std::pair<double, double>>& curve, const char* what) {
        for (std::size_t i = 0; i < curve.size(); ++i) {
            if (curve[i].first <= 0 || curve[i].second <= 0)
                throw ValidationError(std::string("nonpositive ") + what + " entry on " +
                                      date.to_string());
            if (i > 0 && curve[i].first <= curve[i - 1].first)
                throw ValidationError(std::string(what) + " maturities not increasing on " +
                                      date.to_string());
        }
    };
    check_curve(futures, "futures");
    check_curve(zcb, "zcb");
    for (const auto& [m, p] : zcb)
        if (p > 1.0 + 1e-12)
            throw ValidationError("discount factor above one on " + date.to_string());
}

Panel align(const DatedSeries& a, const DatedSeries& b, const std::string& name_a,
            const std::string& name_b) {
    return align_all({{name_a, a}, {name_b, b}});
}

Panel align_all(const std::vector<std::pair<std::string, DatedSeries>>& columns) {
    if (columns.empty()) throw ValidationError("align_all: no columns");
    const Frequency freq = columns.front().second.frequency();
    for (const auto& [name, s] : columns)
        if (s.frequency() != freq)
            throw ValidationError("frequency mismatch for column '" + name + "'");

    // intersection of all date grids
    std::vector<Date> common = columns.front().second.dates();
    for (std::size_t c = 1; c < columns.size(); ++c) {
        const auto& dates = columns[c].second.dates();
        std::vector<Date> next;
        std::set_intersection(common.begin(), common.end(), dates.begin(), dates.end(),
                              std::back_inserter(next));
        common.swap(next);
    }

    Panel out(common, freq);
    for (const auto& [name, s] : columns) {
        std::vector<double> vals;
        vals.reserve(common.size());
        for (const Date& d : common) vals.push_back(s[static_cast<std::size_t>(s.find(d))]);
        out.add_column(name, std::move(vals));
    }
    return out;
}

DatedSeries annual_log_return(const DatedSeries& prices, const DatedSeries& dividends) {
    if (prices.frequency() != Frequency::monthly || dividends.frequency() != Frequency::monthly)
        throw ValidationError("annual_log_return needs monthly inputs");
    Panel joined = align(prices, dividends, "p", "d");
    const std::size_t n = joined.rows();
    if (n < 13) throw ValidationError("annual_log_return needs at least 13 aligned observations");

    const auto& p = joined.column("p");
    const auto& d = joined.column("d");
    std::vector<Date> dates(joined.dates().begin(), joined.dates().end() - 12);
    std::vector<double> out(n - 12);
    for (std::size_t t = 0; t + 12 < n; ++t) {
        double paid = 0.0;
        for (std::size_t j = 1; j <= 12; ++j) paid += d[t + j];
        out[t] = std::log((p[t + 12] + paid) / p[t]);
    }
    return DatedSeries(std::move(dates), std::move(out), Frequency::monthly);
}

ColumnStats summarize(const std::vector<double>& values) {
    ColumnStats s;
    s.count = values.size();
    if (values.empty()) return s;

    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    auto quantile = [&](double q) {
        const double pos = q * (sorted.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
        const double w = pos - lo;
        return sorted[lo] * (1 - w) + sorted[hi] * w;
    };
    s.min = sorted.front();
    s.max = sorted.back();
    s.q25 = quantile(0.25);
    s.q50 = quantile(0.50);
    s.q75 = quantile(0.75);

    double sum = 0;
    for (double v : values) sum += v;
    s.mean = sum / values.size();
    double ss = 0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = values.size() > 1 ? std::sqrt(ss / (values.size() - 1)) : 0.0;

    if (values.size() > 2 && ss > 0) {
        double num = 0;
        for (std::size_t t = 1; t < values.size(); ++t)
            num += (values[t] - s.mean) * (values[t - 1] - s.mean);
        s.autocorr1 = num / ss;
        s.autocorr_defined = true;
    }
    return s;
}

}  // namespace durlab
