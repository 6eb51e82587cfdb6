#pragma once

#include <Eigen/Dense>

namespace oqt {

// SVD pseudoinverse; singular values below max(rows, cols) * smax * rel_tol
// are treated as zero. The same cutoff defines numerical_rank.
Eigen::MatrixXd pinv(const Eigen::MatrixXd& a, double rel_tol = 1e-10);
int numerical_rank(const Eigen::MatrixXd& a, double rel_tol = 1e-10);
// smax / smin over all singular values; +inf when rank-deficient.
double condition_number(const Eigen::MatrixXd& a);

}  // namespace oqt
