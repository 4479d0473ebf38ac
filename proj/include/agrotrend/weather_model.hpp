#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "agrotrend/dataset.hpp"
#include "agrotrend/exposure.hpp"
#include "agrotrend/ols.hpp"
#include "agrotrend/spatial.hpp"
#include "agrotrend/spline.hpp"
#include "agrotrend/trend.hpp"

namespace agrotrend {

// Frozen bin coding + spline basis of an estimation sample. Everything that
// later consumes fitted weather coefficients (projection, sensitivities)
// must transform exposures through the same object.
struct WeatherTransform {
    BinCoding coding;
    SplineBasis basis;
    std::vector<double> coded_centers;
    Eigen::MatrixXd B; // coded bins x df

    int df() const { return basis.df(); }
    // E_j = sum_k B_kj e_k for a raw 1 C histogram row.
    Eigen::VectorXd exposure_regressors(std::span<const double> raw_row) const;
};

// Coding and knots from the pooled exposure over `pooled_window`.
WeatherTransform build_weather_transform(const ExposureHistogramSeries& raw,
                                         YearRange pooled_window, int df = 5,
                                         double tail_share = 0.001);

struct WeatherCoefs {
    Eigen::VectorXd gamma; // spline coefficients
    double theta1 = 0.0;   // precip
    double theta2 = 0.0;   // precip^2
};

struct Season {
    int start_month = 1;
    int months = 12;
    bool calendar_year() const { return start_month == 1 && months == 12; }
};

struct WeatherFit {
    WeatherTransform transform;
    WeatherCoefs coefs;
    double intercept = 0.0;
    std::map<std::string, double> named_coefs;
    TrendSpec trend;
    Season season;
    AnnualSeries residuals;
    int dof = 0;
    std::vector<double> response_curve; // per coded bin, effect of one hour
    YearRange window;
};

// Design: [1, trend terms, E_1..E_J, precip, precip^2] for eligible years.
Design build_weather_design(const AnnualSeries& tfp,
                            const ExposureHistogramSeries& exposure_raw,
                            const AnnualSeries& precip,
                            const WeatherTransform& transform, const TrendSpec& trend,
                            YearRange eligible);

WeatherFit fit_weather_model(const Dataset& ds, const WeatherTransform& transform,
                             const TrendSpec& trend = {Trend::hamilton});

WeatherCoefs weather_coefs_from_fit(const LsFit& fit, const Design& d, int df);

std::vector<double> response_curve(const WeatherTransform& transform,
                                   const WeatherCoefs& coefs);

// --- uniform climate sensitivities ------------------------------------------

// Sample-mean exposure histogram (raw bins) and precipitation over a window.
struct Climatology {
    std::vector<double> exposure_raw;
    double precip = 0.0;
    YearRange window;
};

Climatology sample_climatology(const ExposureHistogramSeries& raw,
                               const AnnualSeries& precip, YearRange window);

// Impact of a uniform temperature shift (integer C) or precipitation change
// (percent) applied to the baseline climatology. Returns percent
// (100*(exp(D)-1)) or, with log_points, 100*D.
double uniform_sensitivity(const WeatherCoefs& coefs, const WeatherTransform& transform,
                           const Climatology& baseline, int delta_t_c,
                           double delta_p_pct, bool log_points = false);

// --- season search -----------------------------------------------------------

enum class WeatherVarSet { tbins_precip, tbins, mean_t_precip, precip_only };
std::string var_set_name(WeatherVarSet v);
const std::vector<WeatherVarSet>& all_var_sets();

struct SeasonCell {
    WeatherVarSet vars = WeatherVarSet::tbins_precip;
    int start_month = 1;
    int months = 12;
    double mse_reduction = 0.0;
    bool ok = false;
    bool best = false; // best cell within its variable set
    std::string error;
};

// Leave-one-year-out MSE reduction of weather-augmented models against the
// same model without weather, over all 144 (start, length) seasons.
std::vector<SeasonCell> season_search(const AnnualSeries& tfp,
                                      const MonthlyExposure& exposure,
                                      const MonthlyPrecip& precip,
                                      const TrendSpec& trend = {Trend::hamilton},
                                      int spline_df = 5, int threads = 1);

} // namespace agrotrend
