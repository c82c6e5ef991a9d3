#pragma once

#include <compare>
#include <string>

namespace durlab {

/// Calendar date. No timezone, no intraday resolution.
struct Date {
    int year = 1970;
    int month = 1;  // 1..12
    int day = 1;    // 1..31

    auto operator<=>(const Date&) const = default;

    /// Months since year 0, used to validate monthly grids.
    int month_index() const { return year * 12 + (month - 1); }

    /// Days since 1970-01-01 (proleptic Gregorian).
    long serial() const;

    bool is_month_end() const;

    std::string to_string() const;  // ISO-8601, YYYY-MM-DD
};

bool is_leap_year(int year);
int days_in_month(int year, int month);

/// Parses YYYY-MM-DD; throws ParseError on malformed input,
/// ValidationError on an impossible calendar date.
Date parse_date(const std::string& text);

/// Last calendar day of the month containing d.
Date month_end(const Date& d);

/// Month-end date n months after d.
Date add_months_eom(const Date& d, int n);

enum class Frequency {
    monthly,
    weekly,
    annual,
    irregular,  // strictly increasing dates without a fixed grid (filtered outputs)
};

std::string to_string(Frequency f);
Frequency parse_frequency(const std::string& text);

}  // namespace durlab
