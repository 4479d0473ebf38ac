#include "agrotrend/stats.hpp"

#include <algorithm>
#include <cmath>

#include "agrotrend/errors.hpp"
#include "agrotrend/rng.hpp"

namespace agrotrend::stats {

double mean(std::span<const double> xs) {
    if (xs.empty()) throw ValidationError("mean of empty sample");
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double sample_sd(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double quantile(std::span<const double> xs, double p) {
    if (xs.empty()) throw ValidationError("quantile of empty sample");
    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    if (p <= 0.0) return sorted.front();
    if (p >= 1.0) return sorted.back();
    double h = p * static_cast<double>(sorted.size() - 1);
    auto lo = static_cast<std::size_t>(h);
    double frac = h - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

Summary summarize(std::span<const double> xs) {
    Summary s;
    s.mu = mean(xs);
    s.p2_5 = quantile(xs, 0.025);
    s.p97_5 = quantile(xs, 0.975);
    return s;
}

} // namespace agrotrend::stats

namespace agrotrend {

double SplitMix64::normal() {
    // Box-Muller; u1 nudged away from 0.
    double u1 = uniform01();
    double u2 = uniform01();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

} // namespace agrotrend
