#include "durlab/dates.hpp"

#include <array>
#include <cstdio>

#include "durlab/errors.hpp"

namespace durlab {

bool is_leap_year(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

int days_in_month(int year, int month) {
    static constexpr std::array<int, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                    31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap_year(year)) return 29;
    return lengths[month - 1];
}

long Date::serial() const {
    // days-from-civil, Howard Hinnant's algorithm
    int y = year;
    const int m = month;
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + day - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

bool Date::is_month_end() const { return day == days_in_month(year, month); }

std::string Date::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
    return buf;
}

Date parse_date(const std::string& text) {
    int y = 0, m = 0, d = 0;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%d-%d-%d%c", &y, &m, &d, &extra) != 3)
        throw ParseError("not an ISO-8601 date: '" + text + "'");
    if (m < 1 || m > 12 || d < 1 || d > days_in_month(y, m))
        throw ValidationError("impossible calendar date: '" + text + "'");
    return Date{y, m, d};
}

Date month_end(const Date& d) { return Date{d.year, d.month, days_in_month(d.year, d.month)}; }

Date add_months_eom(const Date& d, int n) {
    int idx = d.month_index() + n;
    int year = idx / 12;
    int month = idx % 12;
    if (month < 0) {
        month += 12;
        year -= 1;
    }
    return month_end(Date{year, month + 1, 1});
}

std::string to_string(Frequency f) {
    switch (f) {
        case Frequency::monthly: return "monthly";
        case Frequency::weekly: return "weekly";
        case Frequency::annual: return "annual";
        case Frequency::irregular: return "irregular";
    }
    return "unknown";
}

Frequency parse_frequency(const std::string& text) {
    if (text == "monthly") return Frequency::monthly;
    if (text == "weekly") return Frequency::weekly;
    if (text == "annual") return Frequency::annual;
    if (text == "irregular") return Frequency::irregular;
    throw ValidationError("unknown frequency: '" + text + "'");
}

}  // namespace durlab
