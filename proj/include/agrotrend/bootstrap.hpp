#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "agrotrend/ols.hpp"

namespace agrotrend {

// Overlapping block bootstrap over regression rows.
struct BlockPlan {
    int n = 0;          // sample size of the resampling frame
    int block = 5;      // contiguous rows per block
    int draws = 500;
    std::uint64_t seed = 0;
    bool circular = false; // wrap blocks past the series end

    void validate() const;
};

// ceil(n/block) block starts drawn uniformly, concatenated, truncated to n.
// A pure function of (seed, draw_id, attempt): draws are order-independent.
std::vector<int> block_indices(const BlockPlan& plan, int draw_id, int attempt = 0);

// One bootstrap draw's coefficients for both models.
struct DrawRecord {
    std::map<std::string, double> stock_coefs;
    std::map<std::string, double> weather_coefs;
    double beta1 = 0.0;     // stock elasticity
    Eigen::VectorXd gamma;  // weather spline coefficients
    double theta1 = 0.0;
    double theta2 = 0.0;
};

struct PairedDraws {
    BlockPlan plan;
    std::vector<int> common_years; // shared resampling frame (year labels)
    std::vector<DrawRecord> draws;
    int redraws = 0; // rank-deficient draws replaced with fresh sub-seeds

    std::vector<double> stock_coef_draws(const std::string& name) const;
    std::vector<double> weather_coef_draws(const std::string& name) const;
    double stock_se(const std::string& name) const;   // draw standard deviation
    double weather_se(const std::string& name) const;
};

// Resamples year-rows jointly for the two designs. Blocks are drawn on the
// common year window; rows outside it always enter once, unresampled, so the
// two models see the same year sequence wherever their samples overlap.
PairedDraws bootstrap_paired(const Design& stock_design, const Design& weather_design,
                             int weather_spline_df, const BlockPlan& plan,
                             int threads = 1);

} // namespace agrotrend
