#include "agrotrend/ols.hpp"

#include <algorithm>
#include <cmath>

#include "agrotrend/errors.hpp"

namespace agrotrend {

int Design::column(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return -1;
    return static_cast<int>(it - names.begin());
}

Design Design::rows(std::span<const int> row_indices) const {
    Design out;
    out.names = names;
    out.X.resize(static_cast<Eigen::Index>(row_indices.size()), X.cols());
    out.y.resize(static_cast<Eigen::Index>(row_indices.size()));
    out.years.reserve(row_indices.size());
    for (std::size_t i = 0; i < row_indices.size(); ++i) {
        out.X.row(static_cast<Eigen::Index>(i)) = X.row(row_indices[i]);
        out.y(static_cast<Eigen::Index>(i)) = y(row_indices[i]);
        out.years.push_back(years[static_cast<std::size_t>(row_indices[i])]);
    }
    return out;
}

LsFit solve_least_squares(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                          std::span<const std::string> names,
                          double rel_rank_tol) {
    const Eigen::Index n = X.rows();
    const Eigen::Index p = X.cols();
    if (n < p) {
        throw NumericError("least squares: " + std::to_string(n) + " rows for " +
                           std::to_string(p) + " columns");
    }
    Eigen::BDCSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    double smax = sv.size() > 0 ? sv(0) : 0.0;
    double tol = rel_rank_tol * smax;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (!(sv(k) > tol)) {
            // Implicated columns: large components of the null-space direction.
            Eigen::VectorXd dir = svd.matrixV().col(k).cwiseAbs();
            double top = dir.maxCoeff();
            std::string cols;
            for (Eigen::Index j = 0; j < p; ++j) {
                if (dir(j) >= 0.3 * top) {
                    if (!cols.empty()) cols += ", ";
                    cols += (static_cast<std::size_t>(j) < names.size())
                                ? names[static_cast<std::size_t>(j)]
                                : ("col" + std::to_string(j));
                }
            }
            throw NumericError("rank-deficient design (offending columns: " + cols + ")");
        }
    }

    LsFit out;
    out.coef = svd.solve(y);
    out.fitted = X * out.coef;
    out.residuals = y - out.fitted;
    // Full column rank: hat diagonal h_ii = ||row_i(U)||^2.
    const Eigen::MatrixXd& U = svd.matrixU();
    out.hat_diag = U.rowwise().squaredNorm();
    out.dof = static_cast<int>(n - p);
    out.sigma2 = out.dof > 0 ? out.residuals.squaredNorm() / out.dof : 0.0;
    return out;
}

LsFit fit(const Design& d, double rel_rank_tol) {
    return solve_least_squares(d.X, d.y, d.names, rel_rank_tol);
}

double loocv_mse(const LsFit& fit) {
    double acc = 0.0;
    const Eigen::Index n = fit.residuals.size();
    for (Eigen::Index i = 0; i < n; ++i) {
        double denom = 1.0 - fit.hat_diag(i);
        if (denom < 1e-10) {
            throw NumericError("leave-one-out CV: leverage 1 at row " +
                               std::to_string(i));
        }
        double e = fit.residuals(i) / denom;
        acc += e * e;
    }
    return acc / static_cast<double>(n);
}

} // namespace agrotrend
