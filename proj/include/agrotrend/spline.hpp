#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "agrotrend/series.hpp"

namespace agrotrend {

// Natural cubic spline basis on J+1 knots, J columns (intercept excluded).
// Every column has zero second derivative at and beyond the boundary knots,
// so the basis is exactly linear outside [knots.front(), knots.back()].
//
// Construction: with knots k_1 < ... < k_M (M = J+1), h = k_M - k_1 and
//   d_i(x) = ((x-k_i)_+^3 - (x-k_M)_+^3) / (k_M - k_i),
// the columns are (x-k_1)/h and (d_i(x) - d_{M-1}(x))/h^2 for i = 1..M-2.
// Together with a constant they span the M-dimensional natural spline space.
class SplineBasis {
public:
    explicit SplineBasis(std::vector<double> knots);

    // Boundary knots at the first/last center; interior knots at equally
    // spaced quantiles of the (weight-) pooled distribution over centers.
    static SplineBasis from_weighted_quantiles(std::span<const double> centers,
                                               std::span<const double> weights,
                                               int df);

    // Boundary knots at lo/hi, interior knots equally spaced (year smoother).
    static SplineBasis over_range(double lo, double hi, int df);

    int df() const { return static_cast<int>(knots_.size()) - 1; }
    const std::vector<double>& knots() const { return knots_; }

    void eval_into(double x, std::span<double> out) const; // out.size() == df()
    std::vector<double> eval(double x) const;
    Eigen::MatrixXd matrix(std::span<const double> points) const; // K x J

private:
    std::vector<double> knots_;
};

// Regression smoother: fit values on [1, natural spline basis in the index]
// and return the fitted curve. Used for display/percentile paths.
std::vector<double> smooth_natural_spline(std::span<const double> positions,
                                          std::span<const double> values, int df);
AnnualSeries smooth_natural_spline(const AnnualSeries& s, int df);

} // namespace agrotrend
