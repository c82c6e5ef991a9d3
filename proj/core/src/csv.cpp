#include "durlab/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "durlab/errors.hpp"

namespace durlab {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

std::vector<std::vector<std::string>> read_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        rows.push_back(split_line(line));
    }
    if (rows.empty()) throw ParseError(path + ": empty file");
    return rows;
}

double parse_cell(const std::string& cell, const std::string& path, std::size_t line_no) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(cell, &pos);
        if (pos != cell.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw ParseError(path + ":" + std::to_string(line_no) + ": bad number '" + cell + "'");
    }
}

void check_duplicates(const std::vector<Date>& dates, const std::string& path) {
    for (std::size_t i = 1; i < dates.size(); ++i)
        if (dates[i] == dates[i - 1])
            throw ValidationError(path + ": duplicate date " + dates[i].to_string());
}

struct RawTable {
    std::vector<std::string> header;
    std::vector<Date> dates;
    std::vector<std::vector<std::string>> cells;  // per row, without the date column
};

// Reads a date-keyed table, sorts rows by date, drops leading/trailing rows
// with missing cells and rejects interior gaps.
RawTable read_dated_table(const std::string& path) {
    auto rows = read_rows(path);
    RawTable t;
    t.header = rows.front();
    if (t.header.empty() || t.header.front() != "date")
        throw ParseError(path + ":1: header must start with 'date'");

    struct Row {
        Date date;
        std::vector<std::string> cells;
        std::size_t line_no;
    };
    std::vector<Row> parsed;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        auto& cells = rows[i];
        if (cells.size() != t.header.size())
            throw ParseError(path + ":" + std::to_string(i + 1) + ": expected " +
                             std::to_string(t.header.size()) + " cells, got " +
                             std::to_string(cells.size()));
        Date d;
        try {
            d = parse_date(cells.front());
        } catch (const Error& e) {
            throw ParseError(path + ":" + std::to_string(i + 1) + ": " + e.what());
        }
        parsed.push_back({d, std::vector<std::string>(cells.begin() + 1, cells.end()), i + 1});
    }
    std::stable_sort(parsed.begin(), parsed.end(),
                     [](const Row& a, const Row& b) { return a.date < b.date; });

    auto incomplete = [](const Row& r) {
        for (const auto& c : r.cells)
            if (c.empty()) return true;
        return false;
    };
    std::size_t first = 0, last = parsed.size();
    while (first < last && incomplete(parsed[first])) ++first;
    while (last > first && incomplete(parsed[last - 1])) --last;
    for (std::size_t i = first; i < last; ++i)
        if (incomplete(parsed[i]))
            throw ValidationError(path + ":" + std::to_string(parsed[i].line_no) +
                                  ": interior missing value");

    for (std::size_t i = first; i < last; ++i) {
        t.dates.push_back(parsed[i].date);
        t.cells.push_back(std::move(parsed[i].cells));
    }
    check_duplicates(t.dates, path);
    return t;
}

}  // namespace

DatedSeries load_series_csv(const std::string& path) {
    RawTable t = read_dated_table(path);
    if (t.header.size() != 2)
        throw ParseError(path + ":1: series schema is 'date,value'");
    std::vector<double> values;
    values.reserve(t.dates.size());
    for (std::size_t i = 0; i < t.dates.size(); ++i)
        values.push_back(parse_cell(t.cells[i][0], path, i + 2));
    const Frequency freq = infer_frequency(t.dates);
    return DatedSeries(std::move(t.dates), std::move(values), freq);
}

void write_series_csv(const std::string& path, const DatedSeries& s,
                      const std::string& value_name) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << "date," << value_name << "\n";
    for (std::size_t i = 0; i < s.size(); ++i)
        out << s.date(i).to_string() << "," << format_double(s[i]) << "\n";
}

Panel load_panel_csv(const std::string& path) {
    RawTable t = read_dated_table(path);
    Panel p(t.dates, infer_frequency(t.dates));
    for (std::size_t c = 1; c < t.header.size(); ++c) {
        std::vector<double> col;
        col.reserve(t.dates.size());
        for (std::size_t i = 0; i < t.dates.size(); ++i)
            col.push_back(parse_cell(t.cells[i][c - 1], path, i + 2));
        p.add_column(t.header[c], std::move(col));
    }
    return p;
}

void write_panel_csv(const std::string& path, const Panel& p) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << "date";
    for (const auto& name : p.names()) out << "," << name;
    out << "\n";
    for (std::size_t r = 0; r < p.rows(); ++r) {
        out << p.dates()[r].to_string();
        for (const auto& name : p.names()) out << "," << format_double(p.column(name)[r]);
        out << "\n";
    }
}

namespace {

std::string maturity_label(double m) {
    // up to 4 decimals, trailing zeros trimmed
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", m);
    std::string s = buf;
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

}  // namespace

std::vector<MarketSnapshot> load_snapshot_csv(const std::string& path) {
    RawTable t = read_dated_table(path);
    if (t.header.size() < 5 || t.header[1] != "index" || t.header[2] != "dividend_ttm")
        throw ParseError(path + ":1: snapshot schema is 'date,index,dividend_ttm,F_*,Z_*'");

    std::vector<double> fut_mats, zcb_mats;
    std::vector<std::size_t> fut_cols, zcb_cols;
    for (std::size_t c = 3; c < t.header.size(); ++c) {
        const std::string& h = t.header[c];
        if (h.rfind("F_", 0) == 0) {
            fut_mats.push_back(parse_cell(h.substr(2), path, 1));
            fut_cols.push_back(c - 1);
        } else if (h.rfind("Z_", 0) == 0) {
            zcb_mats.push_back(parse_cell(h.substr(2), path, 1));
            zcb_cols.push_back(c - 1);
        } else {
            throw ParseError(path + ":1: unexpected snapshot column '" + h + "'");
        }
    }
    if (fut_mats.empty() || zcb_mats.empty())
        throw ParseError(path + ":1: snapshot file needs F_* and Z_* columns");

    std::vector<MarketSnapshot> snaps;
    snaps.reserve(t.dates.size());
    for (std::size_t i = 0; i < t.dates.size(); ++i) {
        MarketSnapshot snap;
        snap.date = t.dates[i];
        snap.index_level = parse_cell(t.cells[i][0], path, i + 2);
        snap.trailing_dividend = parse_cell(t.cells[i][1], path, i + 2);
        for (std::size_t k = 0; k < fut_cols.size(); ++k)
            snap.futures.emplace_back(fut_mats[k],
                                      parse_cell(t.cells[i][fut_cols[k]], path, i + 2));
        for (std::size_t k = 0; k < zcb_cols.size(); ++k)
            snap.zcb.emplace_back(zcb_mats[k], parse_cell(t.cells[i][zcb_cols[k]], path, i + 2));
        snap.validate();
        snaps.push_back(std::move(snap));
    }
    return snaps;
}

void write_snapshot_csv(const std::string& path, const std::vector<MarketSnapshot>& snaps) {
    if (snaps.empty()) throw ValidationError("refusing to write empty snapshot file");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    const auto& proto = snaps.front();
    out << "date,index,dividend_ttm";
    for (const auto& [m, p] : proto.futures) out << ",F_" << maturity_label(m);
    for (const auto& [m, p] : proto.zcb) out << ",Z_" << maturity_label(m);
    out << "\n";
    for (const auto& s : snaps) {
        if (s.futures.size() != proto.futures.size() || s.zcb.size() != proto.zcb.size())
            throw ValidationError("ragged snapshot curves at " + s.date.to_string());
        out << s.date.to_string() << "," << format_double(s.index_level) << ","
            << format_double(s.trailing_dividend);
        for (const auto& [m, p] : s.futures) out << "," << format_double(p);
        for (const auto& [m, p] : s.zcb) out << "," << format_double(p);
        out << "\n";
    }
}

Panel load_forecast_panel_csv(const std::string& path) {
    Panel p = load_panel_csv(path);
    for (const char* col : {"e1", "e2", "e3", "ltg"})
        if (!p.has_column(col))
            throw ValidationError(path + ": forecast panel missing column '" + std::string(col) +
                                  "'");
    return p;
}

}  // namespace durlab
