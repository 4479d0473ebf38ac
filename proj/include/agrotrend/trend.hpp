#pragma once

#include <string>
#include <vector>

#include "agrotrend/series.hpp"

namespace agrotrend {

// Trend controls for the log-TFP regressions. `hamilton` regresses on recent
// lags of the dependent variable itself (a flexible trend); the default uses
// lags t-1..t-4, a flag shifts the window to t-2..t-5.
enum class Trend { none, linear, quadratic, hamilton };

struct TrendSpec {
    Trend kind = Trend::none;
    int hamilton_first_lag = 1;
    int hamilton_nlags = 4;
};

std::string trend_name(const TrendSpec& t);
TrendSpec parse_trend(const std::string& text);

std::vector<std::string> trend_column_names(const TrendSpec& t);

// True when every regressor the trend needs exists for year `t`.
bool trend_available(const TrendSpec& t, const AnnualSeries& tfp, int year);

// Appends the trend regressors for year `t`. Time polynomials are counted
// from `base_year` (the first sample year).
void append_trend_columns(const TrendSpec& t, const AnnualSeries& tfp, int year,
                          int base_year, std::vector<double>& row);

} // namespace agrotrend
