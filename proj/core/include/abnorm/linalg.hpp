#pragma once

#include <Eigen/Core>

namespace abnorm {

/// Singular values below rel_tol * sigma_max count as zero.
inline constexpr double kRankTolerance = 1e-9;

int numerical_rank(const Eigen::MatrixXd& a, double rel_tol = kRankTolerance);

/// Orthonormal basis (as columns) of the column space of a.
Eigen::MatrixXd column_space(const Eigen::MatrixXd& a, double rel_tol = kRankTolerance);

/// Orthonormal basis (as columns) of {x : a x = 0}.
Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double rel_tol = kRankTolerance);

/// Orthonormal basis of span(a) ∩ span(b).
Eigen::MatrixXd intersect(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                          double rel_tol = kRankTolerance);

/// True when every column of x lies in span(basis) (residual relative to |x|).
bool in_span(const Eigen::MatrixXd& basis, const Eigen::MatrixXd& x,
             double rel_tol = kRankTolerance);

}  // namespace abnorm
