#include "agrotrend/calendar.hpp"

#include <charconv>

#include "agrotrend/errors.hpp"

namespace agrotrend::cal {

namespace {

int parse_component(std::string_view text, std::size_t pos, std::size_t len,
                    const std::string& context) {
    int value = 0;
    auto* begin = text.data() + pos;
    auto [ptr, ec] = std::from_chars(begin, begin + len, value);
    if (ec != std::errc{} || ptr != begin + len) {
        throw ParseError(context + ": bad date '" + std::string(text) + "'");
    }
    return value;
}

} // namespace

Date parse_iso_date(std::string_view text, const std::string& context) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') {
        throw ParseError(context + ": bad date '" + std::string(text) +
                         "' (expected YYYY-MM-DD)");
    }
    Date d;
    d.year = parse_component(text, 0, 4, context);
    d.month = parse_component(text, 5, 2, context);
    d.day = parse_component(text, 8, 2, context);
    if (d.month < 1 || d.month > 12 || d.day < 1 ||
        d.day > days_in_month(d.year, d.month)) {
        throw ParseError(context + ": impossible date '" + std::string(text) + "'");
    }
    return d;
}

std::string format_iso_date(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

} // namespace agrotrend::cal
