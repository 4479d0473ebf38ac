#pragma once

#include <map>
#include <string>
#include <vector>

#include "agrotrend/bootstrap.hpp"
#include "agrotrend/gamma_lag.hpp"
#include "agrotrend/projection.hpp"
#include "agrotrend/stock_model.hpp"

namespace agrotrend {

// Spending is frozen (in real terms) at this year's level in counterfactuals,
// and growth paths start the year after.
constexpr int kBaseSpendYear = 2020;

// Knowledge-stock changes that exactly cancel each pairing's climate impact:
// dlog S*_t = -D_t / beta1, beta1 taken from the same bootstrap draw.
struct OffsetSeries {
    Ssp ssp = Ssp::ssp245;
    YearRange years;
    std::vector<int> kept_pairings;              // indices into the impact pairings
    std::vector<std::vector<double>> raw_dlog;   // per kept pairing, pre-smoothing
    std::vector<std::vector<double>> smooth_dlog; // 3-df natural spline per pairing
    int excluded_nonpositive_beta = 0;

    std::vector<YearSummary> rel_by_year;        // percent, from smoothed paths
    std::map<int, stats::Summary> rel_targets;
};

OffsetSeries offset_stock(const ImpactDistribution& impacts, const PairedDraws& draws,
                          const std::vector<int>& target_years = default_target_years());

// Counterfactual: spending frozen at its 2020 level through `horizon`.
AnnualSeries counterfactual_spending(const AnnualSeries& rd, int horizon = 2100);
KnowledgeStock counterfactual_stock(const AnnualSeries& rd, const GammaLagSpec& spec,
                                    int horizon = 2100);

// dS_t = S^cf_t * (exp(dlog S*_t) - 1), per pairing (smoothed), then summarized.
struct MonetizedOffset {
    YearRange years;
    std::vector<std::vector<double>> abs_draws; // per kept pairing, $B
    std::vector<YearSummary> abs_by_year;
    std::map<int, stats::Summary> abs_targets;
};

MonetizedOffset monetize(const OffsetSeries& offset, const AnnualSeries& scf,
                         const std::vector<int>& target_years = default_target_years());

// Fixed-growth spending path: history through 2020, then
// RD_t = RD_2020 * (1+g/100)^(t-2020) up to `horizon`.
AnnualSeries growth_path(const AnnualSeries& rd, double growth_pct, int horizon);

struct GrowthSolution {
    double growth_pct = 0.0;
    double achieved_delta_stock = 0.0; // S_T(g) - S^cf_T
    bool floored_at_zero = false;      // beneficial-climate target clipped to g = 0
};

// Bisection on g in [0, g_max] for S_T(g) - S^cf_T = target (1e-6 relative).
// Negative targets are floored at zero growth unless allow_negative.
GrowthSolution solve_growth(double target_billions, int target_year,
                            const AnnualSeries& rd, const GammaLagSpec& spec,
                            double g_max = 50.0, bool allow_negative = false);

// Additional spending over the frozen-2020 baseline, summed 2021..T.
double cumulative_spending(double growth_pct, int target_year, double base_spend);

// TFP path implied by a spending path and a climate impact series, spliced to
// the observed level at `anchor_year`:
// log A_t = log A_obs(anchor) + beta1 (log S_t - log S_anchor) + (D_t - D_anchor).
AnnualSeries simulate_tfp_from_stock(const AnnualSeries& stock, double beta1,
                                     const AnnualSeries& climate_log_impact,
                                     const AnnualSeries& observed_tfp, int anchor_year,
                                     int horizon);

AnnualSeries simulate_tfp(const AnnualSeries& rd_path, const GammaLagSpec& spec,
                          const StockFit& stock_fit,
                          const AnnualSeries& climate_log_impact,
                          const AnnualSeries& observed_tfp, int anchor_year,
                          int horizon);

// D_t series for one member and one coefficient draw, as an AnnualSeries
// (zeros when member is null) for the simulator.
AnnualSeries climate_impact_series(const WeatherCoefs& coefs,
                                   const WeatherTransform& transform,
                                   const ScenarioMember* member, YearRange ref_window,
                                   YearRange years);

} // namespace agrotrend
