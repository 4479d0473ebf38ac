#pragma once

#include <span>
#include <vector>

namespace agrotrend::stats {

double mean(std::span<const double> xs);

// Sample standard deviation (n-1 denominator); 0 for n < 2.
double sample_sd(std::span<const double> xs);

// Linear-interpolation quantile on order statistics (R type 7).
// p in [0, 1]; input need not be sorted.
double quantile(std::span<const double> xs, double p);

struct Summary {
    double mu = 0.0;
    double p2_5 = 0.0;
    double p97_5 = 0.0;
};

Summary summarize(std::span<const double> xs);

} // namespace agrotrend::stats
