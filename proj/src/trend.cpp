#include "agrotrend/trend.hpp"

#include <cmath>

#include "agrotrend/errors.hpp"

namespace agrotrend {

std::string trend_name(const TrendSpec& t) {
    switch (t.kind) {
        case Trend::none: return "none";
        case Trend::linear: return "linear";
        case Trend::quadratic: return "quadratic";
        case Trend::hamilton: return "hamilton";
    }
    throw ValidationError("unknown trend");
}

TrendSpec parse_trend(const std::string& text) {
    TrendSpec t;
    if (text == "none") {
        t.kind = Trend::none;
    } else if (text == "linear") {
        t.kind = Trend::linear;
    } else if (text == "quadratic") {
        t.kind = Trend::quadratic;
    } else if (text == "hamilton") {
        t.kind = Trend::hamilton;
    } else {
        throw ValidationError("unknown trend '" + text +
                              "' (none|linear|quadratic|hamilton)");
    }
    return t;
}

std::vector<std::string> trend_column_names(const TrendSpec& t) {
    switch (t.kind) {
        case Trend::none: return {};
        case Trend::linear: return {"trend_t"};
        case Trend::quadratic: return {"trend_t", "trend_t2"};
        case Trend::hamilton: {
            std::vector<std::string> names;
            for (int s = t.hamilton_first_lag; s < t.hamilton_first_lag + t.hamilton_nlags; ++s) {
                names.push_back("log_tfp_lag" + std::to_string(s));
            }
            return names;
        }
    }
    throw ValidationError("unknown trend");
}

bool trend_available(const TrendSpec& t, const AnnualSeries& tfp, int year) {
    if (t.kind != Trend::hamilton) return true;
    return tfp.covers({year - t.hamilton_first_lag - t.hamilton_nlags + 1,
                       year - t.hamilton_first_lag});
}

void append_trend_columns(const TrendSpec& t, const AnnualSeries& tfp, int year,
                          int base_year, std::vector<double>& row) {
    switch (t.kind) {
        case Trend::none: return;
        case Trend::linear:
            row.push_back(static_cast<double>(year - base_year));
            return;
        case Trend::quadratic: {
            double x = static_cast<double>(year - base_year);
            row.push_back(x);
            row.push_back(x * x);
            return;
        }
        case Trend::hamilton:
            for (int s = t.hamilton_first_lag; s < t.hamilton_first_lag + t.hamilton_nlags;
                 ++s) {
                row.push_back(std::log(tfp.at(year - s)));
            }
            return;
    }
    throw ValidationError("unknown trend");
}

} // namespace agrotrend
