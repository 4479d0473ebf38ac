#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

namespace agrotrend {

// Named design matrix with year row labels; shared by the regressions,
// the cross-validation and the bootstrap.
struct Design {
    std::vector<std::string> names;
    Eigen::MatrixXd X;
    Eigen::VectorXd y;
    std::vector<int> years;

    int n() const { return static_cast<int>(X.rows()); }
    int p() const { return static_cast<int>(X.cols()); }
    int column(const std::string& name) const; // -1 if absent

    Design rows(std::span<const int> row_indices) const;
};

struct LsFit {
    Eigen::VectorXd coef;
    Eigen::VectorXd fitted;
    Eigen::VectorXd residuals;
    Eigen::VectorXd hat_diag; // leverage; valid for full-column-rank designs
    int dof = 0;              // n - p
    double sigma2 = 0.0;      // SSR / dof (0 when dof == 0)
};

// SVD least squares. Rank deficiency (relative singular-value threshold
// `rel_rank_tol` of the largest) throws NumericError naming the columns
// implicated by the null-space directions.
LsFit solve_least_squares(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          std::span<const std::string> names,
                          double rel_rank_tol = 1e-10);

LsFit fit(const Design& d, double rel_rank_tol = 1e-10);

// Leave-one-year-out CV error via the leverage identity
// e_(i) = e_i / (1 - h_ii); exact for OLS refits.
double loocv_mse(const LsFit& fit);

} // namespace agrotrend
