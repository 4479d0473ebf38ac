#include "agrotrend/bootstrap.hpp"

#include <algorithm>

#include "agrotrend/errors.hpp"
#include "agrotrend/parallel.hpp"
#include "agrotrend/rng.hpp"
#include "agrotrend/stats.hpp"
#include "agrotrend/weather_model.hpp"

namespace agrotrend {

void BlockPlan::validate() const {
    if (n < 1) throw ValidationError("block plan: empty sample");
    if (block < 1 || block > n) {
        throw ValidationError("block plan: block length must lie in 1..n");
    }
    if (draws < 1) throw ValidationError("block plan: draws must be >= 1");
}

std::vector<int> block_indices(const BlockPlan& plan, int draw_id, int attempt) {
    plan.validate();
    SplitMix64 rng(derive_seed(derive_seed(plan.seed, static_cast<std::uint64_t>(draw_id)),
                               static_cast<std::uint64_t>(attempt)));
    const int nblocks = (plan.n + plan.block - 1) / plan.block;
    std::vector<int> idx;
    idx.reserve(static_cast<std::size_t>(nblocks * plan.block));
    const std::uint64_t start_range = plan.circular
                                          ? static_cast<std::uint64_t>(plan.n)
                                          : static_cast<std::uint64_t>(plan.n - plan.block + 1);
    for (int b = 0; b < nblocks; ++b) {
        int start = static_cast<int>(rng.bounded(start_range));
        for (int k = 0; k < plan.block; ++k) {
            idx.push_back((start + k) % plan.n);
        }
    }
    idx.resize(static_cast<std::size_t>(plan.n));
    return idx;
}

namespace {

// Resampled row set for one model: rows outside the common frame enter
// deterministically, then the drawn common rows in draw order.
std::vector<int> resampled_rows(const Design& d, const std::vector<int>& common_years,
                                const std::vector<int>& frame_draw) {
    std::vector<int> year_to_row(common_years.size());
    std::vector<int> rows;
    rows.reserve(d.years.size());
    for (std::size_t r = 0; r < d.years.size(); ++r) {
        auto it = std::lower_bound(common_years.begin(), common_years.end(), d.years[r]);
        if (it == common_years.end() || *it != d.years[r]) {
            rows.push_back(static_cast<int>(r)); // outside the common frame
        } else {
            year_to_row[static_cast<std::size_t>(it - common_years.begin())] =
                static_cast<int>(r);
        }
    }
    for (int frame_pos : frame_draw) {
        rows.push_back(year_to_row[static_cast<std::size_t>(frame_pos)]);
    }
    return rows;
}

} // namespace

std::vector<double> PairedDraws::stock_coef_draws(const std::string& name) const {
    std::vector<double> v;
    v.reserve(draws.size());
    for (const auto& d : draws) v.push_back(d.stock_coefs.at(name));
    return v;
}

std::vector<double> PairedDraws::weather_coef_draws(const std::string& name) const {
    std::vector<double> v;
    v.reserve(draws.size());
    for (const auto& d : draws) v.push_back(d.weather_coefs.at(name));
    return v;
}

double PairedDraws::stock_se(const std::string& name) const {
    auto v = stock_coef_draws(name);
    return stats::sample_sd(v);
}

double PairedDraws::weather_se(const std::string& name) const {
    auto v = weather_coef_draws(name);
    return stats::sample_sd(v);
}

PairedDraws bootstrap_paired(const Design& stock_design, const Design& weather_design,
                             int weather_spline_df, const BlockPlan& plan_in,
                             int threads) {
    // Both models must be fittable on the full sample before resampling.
    LsFit full_stock = fit(stock_design);
    LsFit full_weather = fit(weather_design);
    (void)full_stock;
    (void)full_weather;

    std::vector<int> common;
    std::set_intersection(stock_design.years.begin(), stock_design.years.end(),
                          weather_design.years.begin(), weather_design.years.end(),
                          std::back_inserter(common));
    if (common.empty()) {
        throw ValidationError("paired bootstrap: the two samples share no years");
    }

    BlockPlan plan = plan_in;
    plan.n = static_cast<int>(common.size());
    plan.validate();

    PairedDraws out;
    out.plan = plan;
    out.common_years = common;
    out.draws.resize(static_cast<std::size_t>(plan.draws));
    std::vector<int> attempt_count(static_cast<std::size_t>(plan.draws), 0);

    parallel_for(static_cast<std::size_t>(plan.draws), threads, [&](std::size_t i) {
        constexpr int kMaxAttempts = 100;
        for (int attempt = 0;; ++attempt) {
            if (attempt >= kMaxAttempts) {
                throw NumericError("paired bootstrap: draw " + std::to_string(i) +
                                   " rank-deficient after " +
                                   std::to_string(kMaxAttempts) + " attempts");
            }
            auto frame = block_indices(plan, static_cast<int>(i), attempt);
            try {
                Design ds = stock_design.rows(resampled_rows(stock_design, common, frame));
                Design dw =
                    weather_design.rows(resampled_rows(weather_design, common, frame));
                LsFit fs = fit(ds);
                LsFit fw = fit(dw);
                DrawRecord rec;
                for (std::size_t j = 0; j < ds.names.size(); ++j) {
                    rec.stock_coefs[ds.names[j]] = fs.coef(static_cast<Eigen::Index>(j));
                }
                for (std::size_t j = 0; j < dw.names.size(); ++j) {
                    rec.weather_coefs[dw.names[j]] = fw.coef(static_cast<Eigen::Index>(j));
                }
                rec.beta1 = rec.stock_coefs.at("log_stock");
                rec.gamma.resize(weather_spline_df);
                for (int j = 1; j <= weather_spline_df; ++j) {
                    rec.gamma(j - 1) = rec.weather_coefs.at("exposure_s" + std::to_string(j));
                }
                rec.theta1 = rec.weather_coefs.at("precip");
                rec.theta2 = rec.weather_coefs.at("precip_sq");
                out.draws[i] = std::move(rec);
                attempt_count[i] = attempt;
                return;
            } catch (const NumericError&) {
                continue; // redraw with a fresh sub-seed
            }
        }
    });

    out.redraws = 0;
    for (int a : attempt_count) out.redraws += a;
    return out;
}

} // namespace agrotrend
