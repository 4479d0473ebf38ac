#include "agrotrend/spline.hpp"

#include <algorithm>
#include <cmath>

#include "agrotrend/errors.hpp"
#include "agrotrend/ols.hpp"

namespace agrotrend {

SplineBasis::SplineBasis(std::vector<double> knots) : knots_(std::move(knots)) {
    if (knots_.size() < 2) {
        throw ValidationError("spline basis needs at least 2 knots");
    }
    for (std::size_t i = 1; i < knots_.size(); ++i) {
        if (!(knots_[i] > knots_[i - 1])) {
            throw ValidationError("spline knots must be strictly increasing");
        }
    }
}

SplineBasis SplineBasis::from_weighted_quantiles(std::span<const double> centers,
                                                 std::span<const double> weights,
                                                 int df) {
    if (df < 1) throw ValidationError("spline df must be >= 1");
    if (centers.size() != weights.size()) {
        throw ValidationError("spline: centers/weights size mismatch");
    }
    if (centers.size() < static_cast<std::size_t>(df) + 2) {
        throw ValidationError("spline: need at least df+2 = " + std::to_string(df + 2) +
                              " bins, got " + std::to_string(centers.size()));
    }
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw ValidationError("spline: negative pooled weight");
        total += w;
    }
    if (total <= 0.0) throw ValidationError("spline: empty pooled distribution");

    std::vector<double> knots;
    knots.push_back(centers.front());
    // Interior knots at quantiles i/df of the pooled exposure, snapped to
    // centers; collisions advance to the next unused center.
    std::size_t cursor = 1;
    for (int i = 1; i < df; ++i) {
        double target = total * static_cast<double>(i) / static_cast<double>(df);
        double acc = 0.0;
        std::size_t q = centers.size() - 1;
        for (std::size_t k = 0; k < centers.size(); ++k) {
            acc += weights[k];
            if (acc >= target) {
                q = k;
                break;
            }
        }
        q = std::max(q, cursor);
        if (q >= centers.size() - 1) {
            throw ValidationError("spline: exposure too concentrated for " +
                                  std::to_string(df) + " df (knots collide)");
        }
        knots.push_back(centers[q]);
        cursor = q + 1;
    }
    knots.push_back(centers.back());
    return SplineBasis(std::move(knots));
}

SplineBasis SplineBasis::over_range(double lo, double hi, int df) {
    if (!(hi > lo)) throw ValidationError("spline: empty range");
    if (df < 1) throw ValidationError("spline df must be >= 1");
    std::vector<double> knots;
    for (int i = 0; i <= df; ++i) {
        knots.push_back(lo + (hi - lo) * static_cast<double>(i) / df);
    }
    return SplineBasis(std::move(knots));
}

void SplineBasis::eval_into(double x, std::span<double> out) const {
    const std::size_t m = knots_.size();
    const double h = knots_.back() - knots_.front();
    out[0] = (x - knots_.front()) / h;
    if (m == 2) return;
    auto cube_plus = [](double v) { return v > 0.0 ? v * v * v : 0.0; };
    const double last = knots_[m - 1];
    const double tail_last = cube_plus(x - last);
    auto d = [&](std::size_t i) {
        return (cube_plus(x - knots_[i]) - tail_last) / (last - knots_[i]);
    };
    const double d_penult = d(m - 2);
    for (std::size_t i = 0; i + 2 < m; ++i) {
        out[i + 1] = (d(i) - d_penult) / (h * h);
    }
}

std::vector<double> SplineBasis::eval(double x) const {
    std::vector<double> out(static_cast<std::size_t>(df()));
    eval_into(x, out);
    return out;
}

Eigen::MatrixXd SplineBasis::matrix(std::span<const double> points) const {
    Eigen::MatrixXd B(static_cast<Eigen::Index>(points.size()), df());
    std::vector<double> row(static_cast<std::size_t>(df()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        eval_into(points[i], row);
        for (int j = 0; j < df(); ++j) {
            B(static_cast<Eigen::Index>(i), j) = row[static_cast<std::size_t>(j)];
        }
    }
    return B;
}

std::vector<double> smooth_natural_spline(std::span<const double> positions,
                                          std::span<const double> values, int df) {
    if (positions.size() != values.size() || positions.size() < static_cast<std::size_t>(df) + 2) {
        throw ValidationError("smoother: need more points than df+1");
    }
    SplineBasis basis = SplineBasis::over_range(positions.front(), positions.back(), df);
    Eigen::MatrixXd X(static_cast<Eigen::Index>(positions.size()), df + 1);
    X.col(0).setOnes();
    X.rightCols(df) = basis.matrix(positions);
    Eigen::VectorXd y(static_cast<Eigen::Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) {
        y(static_cast<Eigen::Index>(i)) = values[i];
    }
    std::vector<std::string> names(static_cast<std::size_t>(df) + 1, "spline");
    names[0] = "intercept";
    LsFit f = solve_least_squares(X, y, names);
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = f.fitted(static_cast<Eigen::Index>(i));
    }
    return out;
}

AnnualSeries smooth_natural_spline(const AnnualSeries& s, int df) {
    std::vector<double> pos(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) pos[i] = static_cast<double>(s.year_at(i));
    auto fitted = smooth_natural_spline(pos, s.values(), df);
    return AnnualSeries(s.label(), s.first_year(), std::move(fitted));
}

} // namespace agrotrend
