#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "durlab/csv.hpp"
#include "durlab/errors.hpp"
#include "durlab/series.hpp"
#include "test_helpers.hpp"

using namespace durlab;
using namespace durlab::testing;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

}  // namespace

TEST_CASE("series CSV: three rows parse") {
    auto path = temp_file("s3.csv",
                          "date,value\n2000-01-31,1.5\n2000-02-29,2.5\n2000-03-31,3.5\n");
    const DatedSeries s = load_series_csv(path.string());
    CHECK(s.size() == 3);
    CHECK(s[0] == doctest::Approx(1.5));
    CHECK(s.date(2) == Date{2000, 3, 31});
}

TEST_CASE("series CSV: duplicate date rejected") {
    auto path = temp_file("dup.csv", "date,value\n2000-01-31,1\n2000-01-31,2\n");
    CHECK_THROWS_AS(load_series_csv(path.string()), ValidationError);
}

TEST_CASE("series CSV: malformed row reports line number") {
    auto path = temp_file("bad.csv", "date,value\n2000-01-31,1\n2000-02-29,oops\n");
    try {
        load_series_csv(path.string());
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find(":3") != std::string::npos);
    }
}

TEST_CASE("series CSV: rows sorted, leading/trailing gaps dropped, interior gap fatal") {
    auto path = temp_file("sort.csv",
                          "date,value\n2000-03-31,3\n2000-01-31,1\n2000-02-29,2\n");
    const DatedSeries s = load_series_csv(path.string());
    CHECK(s[0] == 1.0);
    CHECK(s[2] == 3.0);

    auto edges = temp_file("edges.csv",
                           "date,value\n2000-01-31,\n2000-02-29,2\n2000-03-31,3\n2000-04-30,\n");
    const DatedSeries trimmed = load_series_csv(edges.string());
    CHECK(trimmed.size() == 2);

    auto interior =
        temp_file("interior.csv", "date,value\n2000-01-31,1\n2000-02-29,\n2000-03-31,3\n");
    CHECK_THROWS_AS(load_series_csv(interior.string()), ValidationError);
}

TEST_CASE("snapshot CSV: four futures maturities parse and validate") {
    auto path = temp_file("snap.csv",
                          "date,index,dividend_ttm,F_0.25,F_0.5,F_1,F_2,Z_0.25,Z_0.5,Z_1,Z_2\n"
                          "2000-01-31,1000,20,1001,1002,1005,1010,0.99,0.985,0.97,0.94\n");
    const auto snaps = load_snapshot_csv(path.string());
    REQUIRE(snaps.size() == 1);
    CHECK(snaps[0].futures.size() == 4);
    CHECK(snaps[0].zcb.size() == 4);
    CHECK(snaps[0].futures[2].first == doctest::Approx(1.0));
    CHECK(snaps[0].futures[2].second == doctest::Approx(1005.0));

    auto neg = temp_file("snapneg.csv",
                         "date,index,dividend_ttm,F_1,Z_1\n2000-01-31,1000,20,-3,0.97\n");
    CHECK_THROWS_AS(load_snapshot_csv(neg.string()), ValidationError);
}

TEST_CASE("CSV round trip preserves 12 significant digits") {
    std::vector<double> values = {1.23456789012e-5, 3.14159265358979, -42.4242424242,
                                  1234567.89012345};
    const DatedSeries s = monthly_series(values);
    auto path = std::filesystem::temp_directory_path() / "round.csv";
    write_series_csv(path.string(), s);
    const DatedSeries back = load_series_csv(path.string());
    REQUIRE(back.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double rel = std::abs(back[i] - s[i]) / std::abs(s[i]);
        CHECK(rel < 1e-11);
    }
}

TEST_CASE("align: overlap, identity, disjoint") {
    const DatedSeries a = monthly_series({1, 2, 3, 4}, {2000, 1, 31});
    const DatedSeries b = monthly_series({10, 20, 30, 40}, {2000, 3, 31});
    const Panel p = align(a, b);
    CHECK(p.rows() == 2);  // Mar, Apr
    CHECK(p.column("a")[0] == 3.0);
    CHECK(p.column("b")[0] == 10.0);

    const Panel self = align(a, a, "x", "y");
    CHECK(self.rows() == a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(self.column("x")[i] == self.column("y")[i]);

    const DatedSeries far = monthly_series({7, 8}, {2010, 1, 31});
    const Panel empty = align(a, far);
    CHECK(empty.rows() == 0);

    const DatedSeries weekly(
        {Date{2000, 1, 3}, Date{2000, 1, 10}}, {1.0, 2.0}, Frequency::weekly);
    CHECK_THROWS_AS(align(a, weekly), ValidationError);
}

TEST_CASE("align is idempotent and commutative up to column order") {
    const DatedSeries a = monthly_series({1, 2, 3, 4, 5});
    const DatedSeries b = monthly_series({5, 4, 3, 2}, {2000, 2, 29});
    const Panel ab = align(a, b, "a", "b");
    const Panel ba = align(b, a, "b", "a");
    REQUIRE(ab.rows() == ba.rows());
    for (std::size_t i = 0; i < ab.rows(); ++i) {
        CHECK(ab.column("a")[i] == ba.column("a")[i]);
        CHECK(ab.column("b")[i] == ba.column("b")[i]);
    }
    const Panel again = align(ab.series("a"), ab.series("b"), "a", "b");
    CHECK(again.rows() == ab.rows());
}

TEST_CASE("annual_log_return: flat, doubling, constant growth") {
    std::vector<double> constant(30, 100.0), zeros(30, 0.0);
    const DatedSeries flat =
        annual_log_return(monthly_series(constant), monthly_series(zeros));
    for (std::size_t i = 0; i < flat.size(); ++i) CHECK(flat[i] == doctest::Approx(0.0));
    CHECK(flat.size() == 30 - 12);

    std::vector<double> doubling(14);
    for (int i = 0; i < 14; ++i) doubling[i] = 100.0 * std::pow(2.0, i / 12.0);
    const DatedSeries d =
        annual_log_return(monthly_series(doubling), monthly_series(std::vector<double>(14, 0.0)));
    CHECK(d[0] == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    // constant-growth prices: every overlapping 12m return equals the same value
    std::vector<double> growth(40);
    for (int i = 0; i < 40; ++i) growth[i] = 50.0 * std::exp(0.01 * i);
    const DatedSeries g =
        annual_log_return(monthly_series(growth), monthly_series(std::vector<double>(40, 0.0)));
    for (std::size_t i = 1; i < g.size(); ++i)
        CHECK(g[i] == doctest::Approx(g[0]).epsilon(1e-12));

    CHECK_THROWS_AS(
        annual_log_return(monthly_series({1, 2, 3}), monthly_series({0, 0, 0})),
        ValidationError);
}

TEST_CASE("summarize: two-point stats and degenerate autocorrelation") {
    const ColumnStats s = summarize({1.0, 2.0});
    CHECK(s.mean == doctest::Approx(1.5));
    CHECK(s.stddev == doctest::Approx(std::sqrt(0.5)));  // (n-1) denominator
    CHECK_FALSE(s.autocorr_defined);

    const ColumnStats c = summarize({3.0, 3.0, 3.0, 3.0});
    CHECK(c.stddev == doctest::Approx(0.0));
    CHECK_FALSE(c.autocorr_defined);  // reported as NA downstream
}

TEST_CASE("monthly grid enforces consecutive month stamps") {
    std::vector<Date> gapped = {Date{2000, 1, 31}, Date{2000, 3, 31}};
    CHECK_THROWS_AS(DatedSeries(gapped, {1.0, 2.0}, Frequency::monthly), ValidationError);
    CHECK_THROWS_AS(DatedSeries({Date{2000, 1, 31}, Date{2000, 1, 31}}, {1.0, 2.0},
                                Frequency::monthly),
                    ValidationError);
}
