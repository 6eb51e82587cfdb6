#include "oqt/linalg/solve.hpp"

#include <limits>

namespace oqt {

namespace {

double cutoff(const Eigen::JacobiSVD<Eigen::MatrixXd>& svd, const Eigen::MatrixXd& a,
              double rel_tol) {
  const double smax = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  return std::max(a.rows(), a.cols()) * smax * rel_tol;
}

}  // namespace

Eigen::MatrixXd pinv(const Eigen::MatrixXd& a, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double tol = cutoff(svd, a, rel_tol);
  Eigen::VectorXd inv = svd.singularValues();
  for (Eigen::Index i = 0; i < inv.size(); ++i) inv(i) = inv(i) > tol ? 1.0 / inv(i) : 0.0;
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

int numerical_rank(const Eigen::MatrixXd& a, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const double tol = cutoff(svd, a, rel_tol);
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > tol) ++r;
  return r;
}

double condition_number(const Eigen::MatrixXd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(s.size() - 1) <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / s(s.size() - 1);
}

}  // namespace oqt
