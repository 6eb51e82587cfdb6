#include "oqt/dynamics/fiducial_algebra.hpp"

#include <cstddef>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "oqt/linalg/solve.hpp"

namespace oqt {

namespace {

constexpr double kMatchTol = 1e-9;

int find_element(const std::vector<SuperOperator>& elements, const Eigen::MatrixXd& m) {
  for (std::size_t a = 0; a < elements.size(); ++a)
    if ((elements[a].m - m).cwiseAbs().maxCoeff() < kMatchTol) return static_cast<int>(a);
  return -1;
}

}  // namespace

FiducialAlgebra close_fiducial_algebra(const std::vector<SuperOperator>& fiducials) {
  if (fiducials.empty()) throw std::invalid_argument("close_fiducial_algebra: no fiducials");
  const Eigen::Index dim = fiducials.front().m.rows();
  for (const auto& f : fiducials)
    if (f.m.rows() != dim || f.m.cols() != dim)
      throw std::invalid_argument("close_fiducial_algebra: mixed dimensions");

  FiducialAlgebra alg;
  auto insert = [&](const Eigen::MatrixXd& m) {
    int a = find_element(alg.elements, m);
    if (a < 0) {
      alg.elements.push_back({m});
      a = static_cast<int>(alg.elements.size()) - 1;
    }
    return a;
  };
  for (const auto& f : fiducials) alg.fiducial_index.push_back(insert(f.m));
  for (const auto& fi : fiducials)
    for (const auto& fj : fiducials) insert(fi.m * fj.m);

  const int n = alg.size();
  alg.product.resize(n, n);
  alg.closed = true;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int c = find_element(alg.elements, alg.elements[a].m * alg.elements[b].m);
      alg.product(a, b) = c;
      if (c < 0) alg.closed = false;
    }
  return alg;
}

LindbladCoefficients learn_alpha(const Eigen::VectorXd& e_dot, const Eigen::MatrixXd& f_tilde) {
  if (f_tilde.rows() != e_dot.size())
    throw std::invalid_argument("learn_alpha: dimension mismatch");
  LindbladCoefficients out;
  out.alpha = pinv(f_tilde) * e_dot;
  out.residual = (f_tilde * out.alpha - e_dot).norm();
  return out;
}

SuperOperator lindblad_from_alpha(const std::vector<SuperOperator>& fiducials,
                                  const Eigen::VectorXd& alpha) {
  if (fiducials.empty()) throw std::invalid_argument("lindblad_from_alpha: no fiducials");
  if (alpha.size() != static_cast<Eigen::Index>(fiducials.size()))
    throw std::invalid_argument("lindblad_from_alpha: coefficient count differs from fiducials");
  SuperOperator l;
  l.m = Eigen::MatrixXd::Zero(fiducials.front().m.rows(), fiducials.front().m.cols());
  for (std::size_t i = 0; i < fiducials.size(); ++i) l.m += alpha(static_cast<int>(i)) * fiducials[i].m;
  return l;
}

Eigen::VectorXd finite_difference_edot(const GateSet& gs, const SuperOperator& lindblad,
                                       const std::vector<Sequence>& fiducials, double delta) {
  if (delta <= 0) throw std::invalid_argument("finite_difference_edot: delta must be positive");
  const Eigen::MatrixXd prop = (lindblad.m * delta).exp();
  const Eigen::VectorXd shift = prop * gs.rho.c - gs.rho.c;
  Eigen::VectorXd out(static_cast<Eigen::Index>(fiducials.size()));
  for (std::size_t i = 0; i < fiducials.size(); ++i)
    out(static_cast<int>(i)) =
        gs.effect.c.dot(sequence_superop(gs, fiducials[i]).m * shift) / delta;
  return out;
}

Eigen::VectorXd analytic_edot(const GateSet& gs, const SuperOperator& lindblad,
                              const std::vector<Sequence>& fiducials) {
  const Eigen::VectorXd flow = lindblad.m * gs.rho.c;
  Eigen::VectorXd out(static_cast<Eigen::Index>(fiducials.size()));
  for (std::size_t i = 0; i < fiducials.size(); ++i)
    out(static_cast<int>(i)) = gs.effect.c.dot(sequence_superop(gs, fiducials[i]).m * flow);
  return out;
}

}  // namespace oqt
