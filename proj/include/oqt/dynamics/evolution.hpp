#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "oqt/dynamics/fiducial_algebra.hpp"
#include "oqt/gateset/gate_set.hpp"

namespace oqt {

// Observable state of the closed equations of motion: v(a) = <<E| s_a |rho(t)>>
// over algebra elements and, per gate, w[k](i, a) = <<E| F_i G_k s_a |rho(t)>>.
// Both families evolve by the same index action, so the system stays finite.
struct ClosedState {
  Eigen::VectorXd v;
  std::vector<Eigen::MatrixXd> w;
};

ClosedState closed_state_from_gate_set(const GateSet& gs, const std::vector<Sequence>& fiducials,
                                       const FiducialAlgebra& algebra);

// Standard tensors read out of a closed state.
Eigen::VectorXd e_tilde_from_closed(const ClosedState& state, const FiducialAlgebra& algebra);
Eigen::MatrixXd f_tilde_from_closed(const ClosedState& state, const FiducialAlgebra& algebra);
std::vector<Eigen::MatrixXd> g_tilde_from_closed(const ClosedState& state,
                                                 const FiducialAlgebra& algebra);

// Integrates d/dt v_a = sum_l alpha_l v_{g(a, f_l)} (same action on each w
// block) with classical fixed-step RK4; every output step is refined by
// halving until the local relative error is within 1e-8.
std::vector<std::pair<double, ClosedState>> evolve_closed(const ClosedState& initial,
                                                          const FiducialAlgebra& algebra,
                                                          const Eigen::VectorXd& alpha,
                                                          double t_span, int steps);

// Principal-branch Lambert W via Newton iteration on w*e^w = x.
double lambert_w(double x);

// Smallest K with (sum_l |alpha_l| * delta / (K+1))^(K+1) <= eps, seeded by the
// closed form ln(1/eps)/W(ln(1/eps)/rate).  Requires delta <= sum_l |alpha_l|.
int taylor_truncation_order(const Eigen::VectorXd& alpha, double delta, double eps);

// Expectation tensors E~_{i1..ip} = <<E| F_{i1} ... F_{ip} |rho>> for all index
// words up to max_depth.  levels[p] is flat with the rightmost index (earliest
// in time) fastest; level 0 is the scalar <<E|rho>>.
struct ExtendedTensors {
  int nf = 0;
  int max_depth = 0;
  std::vector<Eigen::VectorXd> levels;
};

ExtendedTensors extended_tensors_from_gate_set(const GateSet& gs,
                                               const std::vector<Sequence>& fiducials,
                                               int max_depth);

// Degree-K Taylor step of every tensor the input depth can support: each time
// derivative appends one alpha-contracted index, so the output is K levels
// shallower than the input.
ExtendedTensors evolve_truncated(const ExtendedTensors& tensors, const Eigen::VectorXd& alpha,
                                 double delta, int K);

}  // namespace oqt
