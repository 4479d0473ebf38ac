#pragma once

#include <string>
#include <string_view>

namespace agrotrend::cal {

constexpr bool is_leap(int year) {
    return year % 4 == 0 && (year % 100 != 0 || year % 400 == 0);
}

constexpr int days_in_year(int year) { return is_leap(year) ? 366 : 365; }

constexpr int hours_in_year(int year) { return 24 * days_in_year(year); }

constexpr int days_in_month(int year, int month) {
    constexpr int base[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap(year)) return 29;
    return base[month - 1];
}

struct Date {
    int year = 0;
    int month = 0; // 1..12
    int day = 0;   // 1..
    bool operator==(const Date&) const = default;
    auto operator<=>(const Date&) const = default;
};

// Strict ISO-8601 "YYYY-MM-DD". `context` is prepended to error messages.
Date parse_iso_date(std::string_view text, const std::string& context);

std::string format_iso_date(const Date& d);

} // namespace agrotrend::cal
