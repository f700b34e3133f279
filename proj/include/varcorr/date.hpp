#pragma once

#include <charconv>
#include <compare>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace varcorr {

// Proleptic Gregorian calendar date. Ordering is lexicographic on
// (year, month, day), which matches chronological order.
struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    friend constexpr auto operator<=>(const Date&, const Date&) = default;
};

constexpr bool is_leap_year(int y) {
    return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0);
}

constexpr int days_in_month(int y, int m) {
    constexpr int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2 && is_leap_year(y)) return 29;
    return lengths[m - 1];
}

constexpr bool is_valid(const Date& d) {
    return d.month >= 1 && d.month <= 12 && d.day >= 1 &&
           d.day <= days_in_month(d.year, d.month);
}

// Days since 1970-01-01 (Hinnant's civil-days algorithm).
constexpr long serial_day(const Date& dt) {
    const int y = dt.year - (dt.month <= 2);
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy =
        (153u * (dt.month + (dt.month > 2 ? -3 : 9)) + 2u) / 5u + dt.day - 1u;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

constexpr Date date_from_serial(long z) {
    z += 719468;
    const long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long y = static_cast<long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m),
                static_cast<int>(d)};
}

constexpr Date advance_days(const Date& d, long days) {
    return date_from_serial(serial_day(d) + days);
}

// ISO-8601 weekday, Monday = 1 .. Sunday = 7. 1970-01-01 was a Thursday.
constexpr int iso_weekday(const Date& d) {
    long wd = (serial_day(d) + 3) % 7;
    if (wd < 0) wd += 7;
    return static_cast<int>(wd) + 1;
}

struct IsoWeek {
    int year = 0;
    int week = 0;

    friend constexpr auto operator<=>(const IsoWeek&, const IsoWeek&) = default;
};

// ISO-8601 week: week 1 is the week containing the year's first Thursday.
constexpr IsoWeek iso_week(const Date& d) {
    const long thursday = serial_day(d) + (4 - iso_weekday(d));
    const Date t = date_from_serial(thursday);
    const long jan1 = serial_day(Date{t.year, 1, 1});
    const int week = static_cast<int>((thursday - jan1) / 7) + 1;
    return IsoWeek{t.year, week};
}

// Strict ISO-8601 "YYYY-MM-DD". Returns nullopt on any deviation.
inline std::optional<Date> parse_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    auto digits = [](std::string_view part, int& out) {
        auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
        return ec == std::errc() && p == part.data() + part.size();
    };
    Date d;
    if (!digits(s.substr(0, 4), d.year) || !digits(s.substr(5, 2), d.month) ||
        !digits(s.substr(8, 2), d.day))
        return std::nullopt;
    if (!is_valid(d)) return std::nullopt;
    return d;
}

inline std::string format_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

} // namespace varcorr
