#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "agrotrend/dataset.hpp"
#include "agrotrend/gamma_lag.hpp"
#include "agrotrend/ols.hpp"
#include "agrotrend/trend.hpp"
#include "agrotrend/weather_model.hpp"

namespace agrotrend {

struct StockModelSpec {
    TrendSpec trend;
    std::vector<std::string> extras; // named covariates, e.g. "co2"
    bool include_weather = true;
    int spline_df = 5;
};

struct StockFit {
    double beta0 = 0.0;
    double beta1 = 0.0; // knowledge-stock elasticity
    std::map<std::string, double> extra_coefs;
    std::map<std::string, double> named_coefs; // every design column
    TrendSpec trend;
    AnnualSeries residuals;
    int dof = 0;
    std::vector<std::string> design_columns;
    YearRange window;
};

// Design: [1, log_stock, trend terms, extras, weather terms] for eligible
// years. Weather terms come from the shared transform when given.
Design build_stock_design(const Dataset& ds, const KnowledgeStock& stock,
                          const StockModelSpec& spec,
                          const WeatherTransform* weather);

StockFit fit_stock_model(const Dataset& ds, const KnowledgeStock& stock,
                         const StockModelSpec& spec,
                         const WeatherTransform* weather);

StockFit stock_fit_from_design(const Design& d, const StockModelSpec& spec);

// --- lag-parameter grid search ------------------------------------------------

struct GridCell {
    double lambda = 0.0;
    double delta = 0.0;
    double mse_reduction = 0.0; // relative out-of-sample MSE drop vs no-stock model
    double beta1 = 0.0;
    bool ok = false;
    std::string error;
};

struct GridSearchResult {
    std::vector<GridCell> cells;        // grid order: lambda asc, delta asc
    std::vector<std::size_t> ranked;    // cell indices, best first
    GammaLagSpec best;                  // spec of ranked.front()

    std::vector<GridCell> top(std::size_t k) const;
};

std::vector<double> grid_values(double lo, double hi, double step);

// Leave-one-year-out CV of the stock model per (lambda, delta) against the
// same model without the stock term; ranked by MSE reduction descending,
// ties by lambda then delta. Per-cell failures are recorded, not fatal.
GridSearchResult grid_search(const Dataset& ds, std::span<const double> lambdas,
                             std::span<const double> deltas, int lags,
                             const StockModelSpec& spec,
                             const WeatherTransform* weather, int threads = 1);

} // namespace agrotrend
