#pragma once

#include <vector>

#include "agrotrend/series.hpp"

namespace agrotrend {

// Two-parameter gamma-shaped research lag kernel. Both shape parameters live
// in the open unit interval; `lags` is the kernel length in years.
struct GammaLagSpec {
    double lambda = 0.75;
    double delta = 0.90;
    int lags = 50;

    void validate() const;
};

// w_l proportional to (l+1)^(delta/(1-delta)) * lambda^l for l = 0..lags-1,
// normalized to sum to one. Computed in log space to avoid overflow.
std::vector<double> gamma_lag_weights(const GammaLagSpec& spec);

// Continuous-mode location of the kernel (in lag years), for diagnostics.
double gamma_lag_mode(const GammaLagSpec& spec);

struct KnowledgeStock {
    GammaLagSpec spec;
    std::vector<double> weights;
    AnnualSeries series; // S_t = sum_l w_l RD_{t-l}
};

// Output window is the spending window trimmed by lags-1 leading years.
KnowledgeStock build_stock(const AnnualSeries& rd, const GammaLagSpec& spec);

// S_T for a spending path, evaluated at one year (used by the growth solver).
double stock_at(const AnnualSeries& rd, std::span<const double> weights, int year);

} // namespace agrotrend
