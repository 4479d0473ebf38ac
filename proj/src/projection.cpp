#include "agrotrend/projection.hpp"

#include <cmath>

#include "agrotrend/errors.hpp"
#include "agrotrend/parallel.hpp"
#include "agrotrend/rng.hpp"
#include "agrotrend/spline.hpp"

namespace agrotrend {

ReferenceClimatology reference_climatology(const ScenarioMember& member,
                                           YearRange window) {
    return sample_climatology(member.exposure, member.precip, window);
}

std::vector<double> impact_series(const WeatherCoefs& coefs,
                                  const WeatherTransform& transform,
                                  const ScenarioMember& member,
                                  const ReferenceClimatology& ref, YearRange years) {
    if (years.empty() || !member.exposure.range().contains(years.first) ||
        !member.exposure.range().contains(years.last) || !member.precip.covers(years)) {
        throw ValidationError("impact series: member does not cover " +
                              std::to_string(years.first) + ".." +
                              std::to_string(years.last));
    }
    Eigen::VectorXd e0 = transform.exposure_regressors(ref.exposure_raw);
    const double p0 = ref.precip;
    std::vector<double> d(static_cast<std::size_t>(years.size()));
    for (int y = years.first; y <= years.last; ++y) {
        Eigen::VectorXd e = transform.exposure_regressors(member.exposure.year(y));
        double p = member.precip.at(y);
        d[static_cast<std::size_t>(y - years.first)] =
            coefs.gamma.dot(e - e0) + coefs.theta1 * (p - p0) +
            coefs.theta2 * (p * p - p0 * p0);
    }
    return d;
}

namespace {

double to_convention(double log_points_value, bool log_points) {
    return log_points ? 100.0 * log_points_value
                      : 100.0 * (std::exp(log_points_value) - 1.0);
}

void summarize_distribution(ImpactDistribution& dist,
                            const std::vector<int>& target_years) {
    const int ny = dist.years.size();
    const std::size_t m = dist.pairing_log_impact.size();

    std::vector<double> column(m);
    dist.by_year.resize(static_cast<std::size_t>(ny));
    for (int i = 0; i < ny; ++i) {
        for (std::size_t p = 0; p < m; ++p) {
            column[p] = to_convention(dist.pairing_log_impact[p][static_cast<std::size_t>(i)],
                                      dist.log_points);
        }
        auto s = stats::summarize(column);
        dist.by_year[static_cast<std::size_t>(i)] = {dist.years.first + i, s.mu, s.p2_5,
                                                     s.p97_5};
    }

    // Smoothed display paths: smooth each pairing's log impacts, then apply
    // the reporting convention and summarize.
    std::vector<double> pos(static_cast<std::size_t>(ny));
    for (int i = 0; i < ny; ++i) pos[static_cast<std::size_t>(i)] = dist.years.first + i;
    std::vector<std::vector<double>> smooth(m);
    for (std::size_t p = 0; p < m; ++p) {
        smooth[p] = smooth_natural_spline(pos, dist.pairing_log_impact[p], 3);
    }
    dist.by_year_smoothed.resize(static_cast<std::size_t>(ny));
    for (int i = 0; i < ny; ++i) {
        for (std::size_t p = 0; p < m; ++p) {
            column[p] = to_convention(smooth[p][static_cast<std::size_t>(i)], dist.log_points);
        }
        auto s = stats::summarize(column);
        dist.by_year_smoothed[static_cast<std::size_t>(i)] = {dist.years.first + i, s.mu,
                                                              s.p2_5, s.p97_5};
    }

    dist.at_targets.clear();
    for (int t : target_years) {
        if (!dist.years.contains(t)) continue;
        int i = t - dist.years.first;
        for (std::size_t p = 0; p < m; ++p) {
            column[p] = to_convention(dist.pairing_log_impact[p][static_cast<std::size_t>(i)],
                                      dist.log_points);
        }
        dist.at_targets[t] = stats::summarize(column);
    }
}

} // namespace

ImpactDistribution ensemble_impacts(const PairedDraws& draws,
                                    const WeatherTransform& transform,
                                    const ScenarioSet& scenarios, YearRange ref_window,
                                    int pairings, std::uint64_t seed,
                                    const std::vector<int>& target_years,
                                    bool log_points, int threads) {
    if (scenarios.members.empty()) {
        throw ValidationError("ensemble impacts: empty scenario set");
    }
    if (draws.draws.empty()) {
        throw ValidationError("ensemble impacts: no bootstrap draws");
    }
    if (pairings < 1) throw ValidationError("ensemble impacts: pairings must be >= 1");

    YearRange years{ref_window.first, 2100};
    for (const auto& m : scenarios.members) {
        years = intersect(years, intersect(m.exposure.range(), m.precip.range()));
    }
    if (years.empty()) {
        throw ValidationError("ensemble impacts: members share no years");
    }

    const std::size_t nmembers = scenarios.members.size();
    const std::size_t ndraws = draws.draws.size();

    // Per-member reference climatologies and exposure regressor paths are
    // draw-independent; precompute them.
    std::vector<ReferenceClimatology> refs;
    std::vector<Eigen::MatrixXd> member_e; // years x J
    std::vector<Eigen::VectorXd> ref_e;
    std::vector<std::vector<double>> member_p;
    refs.reserve(nmembers);
    for (const auto& m : scenarios.members) {
        refs.push_back(sample_climatology(m.exposure, m.precip, ref_window));
    }
    member_e.resize(nmembers);
    ref_e.resize(nmembers);
    member_p.resize(nmembers);
    parallel_for(nmembers, threads, [&](std::size_t mi) {
        const auto& m = scenarios.members[mi];
        ref_e[mi] = transform.exposure_regressors(refs[mi].exposure_raw);
        Eigen::MatrixXd E(years.size(), transform.df());
        std::vector<double> P(static_cast<std::size_t>(years.size()));
        for (int y = years.first; y <= years.last; ++y) {
            E.row(y - years.first) = transform.exposure_regressors(m.exposure.year(y));
            P[static_cast<std::size_t>(y - years.first)] = m.precip.at(y);
        }
        member_e[mi] = std::move(E);
        member_p[mi] = std::move(P);
    });

    auto impact_row = [&](std::size_t draw_id, std::size_t member_id) {
        const DrawRecord& rec = draws.draws[draw_id];
        std::vector<double> d(static_cast<std::size_t>(years.size()));
        const double p0 = refs[member_id].precip;
        for (int i = 0; i < years.size(); ++i) {
            double p = member_p[member_id][static_cast<std::size_t>(i)];
            d[static_cast<std::size_t>(i)] =
                rec.gamma.dot(member_e[member_id].row(i).transpose() - ref_e[member_id]) +
                rec.theta1 * (p - p0) + rec.theta2 * (p * p - p0 * p0);
        }
        return d;
    };

    ImpactDistribution dist;
    dist.ssp = scenarios.ssp;
    dist.years = years;
    dist.log_points = log_points;
    dist.pairing_draw_ids.resize(static_cast<std::size_t>(pairings));
    dist.pairing_member_ids.resize(static_cast<std::size_t>(pairings));
    dist.pairing_log_impact.resize(static_cast<std::size_t>(pairings));

    std::uint64_t ssp_seed = derive_seed(seed, 9000 + static_cast<std::uint64_t>(scenarios.ssp));
    parallel_for(static_cast<std::size_t>(pairings), threads, [&](std::size_t p) {
        SplitMix64 rng(derive_seed(ssp_seed, p));
        std::size_t draw_id = rng.bounded(ndraws);
        std::size_t member_id = rng.bounded(nmembers);
        dist.pairing_draw_ids[p] = static_cast<int>(draw_id);
        dist.pairing_member_ids[p] = static_cast<int>(member_id);
        dist.pairing_log_impact[p] = impact_row(draw_id, member_id);
    });

    summarize_distribution(dist, target_years);

    // Per-GCM: econometric uncertainty only (all draws against one member).
    for (const auto& m : scenarios.members) dist.gcm_ids.push_back(m.gcm_id);
    std::vector<std::map<int, stats::Summary>> gcm_rows(nmembers);
    parallel_for(nmembers, threads, [&](std::size_t mi) {
        std::vector<std::vector<double>> rows(ndraws);
        for (std::size_t di = 0; di < ndraws; ++di) rows[di] = impact_row(di, mi);
        std::map<int, stats::Summary> at;
        std::vector<double> column(ndraws);
        for (int t : target_years) {
            if (!years.contains(t)) continue;
            int i = t - years.first;
            for (std::size_t di = 0; di < ndraws; ++di) {
                column[di] = to_convention(rows[di][static_cast<std::size_t>(i)], log_points);
            }
            at[t] = stats::summarize(column);
        }
        gcm_rows[mi] = std::move(at);
    });
    for (std::size_t mi = 0; mi < nmembers; ++mi) {
        dist.by_gcm[scenarios.members[mi].gcm_id] = std::move(gcm_rows[mi]);
    }
    return dist;
}

ImpactDistribution historical_trend_impact(const PairedDraws& draws,
                                           const WeatherTransform& transform,
                                           const ExposureHistogramSeries& obs_exposure,
                                           const AnnualSeries& obs_precip,
                                           YearRange ref_window, bool log_points,
                                           int threads) {
    ScenarioMember observed;
    observed.gcm_id = "observed";
    observed.exposure = obs_exposure;
    observed.precip = obs_precip;

    YearRange years = intersect(obs_exposure.range(), obs_precip.range());
    if (years.empty() || !(years.contains(ref_window.first) &&
                           years.contains(ref_window.last))) {
        throw ValidationError("historical impacts: observations do not cover the "
                              "reference window");
    }
    years.first = ref_window.first;
    auto ref = sample_climatology(obs_exposure, obs_precip, ref_window);

    ImpactDistribution dist;
    dist.ssp = Ssp::ssp245; // unused; single observed member
    dist.years = years;
    dist.log_points = log_points;
    const std::size_t ndraws = draws.draws.size();
    dist.pairing_draw_ids.resize(ndraws);
    dist.pairing_member_ids.assign(ndraws, 0);
    dist.pairing_log_impact.resize(ndraws);
    parallel_for(ndraws, threads, [&](std::size_t di) {
        dist.pairing_draw_ids[di] = static_cast<int>(di);
        WeatherCoefs c;
        c.gamma = draws.draws[di].gamma;
        c.theta1 = draws.draws[di].theta1;
        c.theta2 = draws.draws[di].theta2;
        dist.pairing_log_impact[di] = impact_series(c, transform, observed, ref, years);
    });
    std::vector<int> targets;
    for (int t : default_target_years()) {
        if (years.contains(t)) targets.push_back(t);
    }
    if (targets.empty()) targets.push_back(years.last);
    summarize_distribution(dist, targets);
    dist.gcm_ids.push_back("observed");
    return dist;
}

} // namespace agrotrend
