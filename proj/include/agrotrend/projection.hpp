#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "agrotrend/bootstrap.hpp"
#include "agrotrend/dataset.hpp"
#include "agrotrend/stats.hpp"
#include "agrotrend/weather_model.hpp"

namespace agrotrend {

// The 1950-1960 mean climate a member's impacts are measured against.
// Computed per member, from that member's own series.
using ReferenceClimatology = Climatology;

ReferenceClimatology reference_climatology(const ScenarioMember& member,
                                           YearRange window = {1950, 1960});

// Climate impact in log points for one coefficient draw and one member:
// D_t = gamma.(E_t - E0) + theta1 (P_t - P0) + theta2 (P_t^2 - P0^2).
std::vector<double> impact_series(const WeatherCoefs& coefs,
                                  const WeatherTransform& transform,
                                  const ScenarioMember& member,
                                  const ReferenceClimatology& ref, YearRange years);

struct YearSummary {
    int year = 0;
    double mu = 0.0;
    double p2_5 = 0.0;
    double p97_5 = 0.0;
};

struct ImpactDistribution {
    Ssp ssp = Ssp::ssp245;
    YearRange years;
    bool log_points = false; // reporting convention of the summaries

    // One row per pairing of (bootstrap draw, scenario member); log points.
    std::vector<int> pairing_draw_ids;
    std::vector<int> pairing_member_ids;
    std::vector<std::vector<double>> pairing_log_impact;

    std::vector<YearSummary> by_year;
    std::vector<YearSummary> by_year_smoothed; // 3-df natural-spline paths
    std::map<int, stats::Summary> at_targets;

    std::vector<std::string> gcm_ids;
    // Per-GCM summaries at target years use every draw against that member.
    std::map<std::string, std::map<int, stats::Summary>> by_gcm;
};

inline const std::vector<int>& default_target_years() {
    static const std::vector<int> t = {2025, 2050, 2075, 2100};
    return t;
}

// M uniform pairings (draw, member) with replacement per SSP; summaries are
// on the percent scale 100*(exp(D)-1) unless log_points.
ImpactDistribution ensemble_impacts(const PairedDraws& draws,
                                    const WeatherTransform& transform,
                                    const ScenarioSet& scenarios,
                                    YearRange ref_window, int pairings,
                                    std::uint64_t seed,
                                    const std::vector<int>& target_years =
                                        default_target_years(),
                                    bool log_points = false, int threads = 1);

// Observed-weather analogue: a single pseudo-member, one pairing per draw.
ImpactDistribution historical_trend_impact(const PairedDraws& draws,
                                           const WeatherTransform& transform,
                                           const ExposureHistogramSeries& obs_exposure,
                                           const AnnualSeries& obs_precip,
                                           YearRange ref_window,
                                           bool log_points = false, int threads = 1);

} // namespace agrotrend
