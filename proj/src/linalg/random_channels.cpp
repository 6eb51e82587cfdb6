#include "oqt/linalg/random_channels.hpp"

#include <stdexcept>

#include "oqt/linalg/solve.hpp"

namespace oqt {

Eigen::MatrixXcd sample_ginibre_density(int d, bool real_only, Rng& rng) {
  if (d < 2) throw std::invalid_argument("sample_ginibre_density: d < 2");
  Eigen::MatrixXcd x;
  if (real_only) {
    Eigen::MatrixXd g(d, d + 1);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d + 1; ++j) g(i, j) = rng.normal(0.0, 1.0);
    x = g.cast<std::complex<double>>();
  } else {
    x.resize(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        x(i, j) = std::complex<double>(rng.normal(0.0, 1.0), rng.normal(0.0, 1.0));
  }
  Eigen::MatrixXcd rho = x * x.adjoint();
  rho /= rho.trace().real();
  return rho;
}

SuperKet sample_ginibre_superket(bool real_only, Rng& rng) {
  return to_superket(sample_ginibre_density(2, real_only, rng));
}

SuperOperator sample_bcsz(int d, Rng& rng) {
  if (d != 2)
    throw std::invalid_argument("sample_bcsz: only qubit channels have a transfer-matrix form here");
  const int n = d * d;
  Eigen::MatrixXcd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g(i, j) = std::complex<double>(rng.normal(0.0, 1.0), rng.normal(0.0, 1.0));
  const Eigen::MatrixXcd w = g * g.adjoint();

  // Input marginal: block (i,k) of the Choi matrix traces to D_{ik}.
  Eigen::Matrix2cd marginal = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) marginal(i, k) = w.block(d * i, d * k, d, d).trace();

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(marginal);
  if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0)
    throw std::runtime_error("sample_bcsz: singular input marginal");
  const Eigen::Matrix2cd dinvsqrt = es.operatorInverseSqrt();

  const Eigen::Matrix4cd j =
      kron2(dinvsqrt, Eigen::Matrix2cd::Identity()) * w * kron2(dinvsqrt, Eigen::Matrix2cd::Identity());
  return ptm_from_choi(j);
}

SuperOperator sample_gauge(Rng& rng, double max_cond) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Eigen::Matrix4d pert;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) pert(i, j) = rng.normal(0.0, 1.0);
    SuperOperator b;
    b.m = Eigen::Matrix4d::Identity() + 0.35 * pert;
    if (condition_number(b.m) < max_cond) return b;
  }
  throw std::runtime_error("sample_gauge: rejection loop did not terminate");
}

}  // namespace oqt
