#pragma once

#include <vector>

#include <Eigen/Dense>

#include "oqt/gateset/gate_set.hpp"
#include "oqt/linalg/pauli.hpp"

namespace oqt {

// Multiplicative closure candidate built from fiducial superoperators: the
// monomials F_i and binomials F_i*F_j, deduplicated.  product(a, b) indexes
// s_a*s_b inside the set, -1 when the product escapes; closed means no product
// escapes, which is what the finite equations of motion require.
struct FiducialAlgebra {
  std::vector<SuperOperator> elements;
  Eigen::MatrixXi product;
  std::vector<int> fiducial_index;  // fiducial slot -> element index
  bool closed = false;

  int size() const { return static_cast<int>(elements.size()); }
};

FiducialAlgebra close_fiducial_algebra(const std::vector<SuperOperator>& fiducials);

// Expansion of a master-equation generator over the fiducial superoperators,
// L = sum_l alpha_l F_l.
struct LindbladCoefficients {
  Eigen::VectorXd alpha;
  double residual = 0;  // |f_tilde * alpha - e_dot| left by the solve
};

// Solves f_tilde * alpha = e_dot; minimum-norm least squares when singular.
LindbladCoefficients learn_alpha(const Eigen::VectorXd& e_dot, const Eigen::MatrixXd& f_tilde);

SuperOperator lindblad_from_alpha(const std::vector<SuperOperator>& fiducials,
                                  const Eigen::VectorXd& alpha);

// (E~(delta) - E~(0)) / delta with rho advanced by the matrix exponential.
Eigen::VectorXd finite_difference_edot(const GateSet& gs, const SuperOperator& lindblad,
                                       const std::vector<Sequence>& fiducials, double delta);

// Exact instantaneous derivative <<E| F_i L |rho>>, the delta -> 0 limit of the
// finite difference.
Eigen::VectorXd analytic_edot(const GateSet& gs, const SuperOperator& lindblad,
                              const std::vector<Sequence>& fiducials);

}  // namespace oqt
