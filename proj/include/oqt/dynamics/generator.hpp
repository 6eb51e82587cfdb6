#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "oqt/gateset/gate_set.hpp"
#include "oqt/linalg/pauli.hpp"

namespace oqt {

// Flattened observable vector [E~_i, F~_ij, G~_kij, G~_kijl].  Every entry is
// <<E| (operator word) |rho(t)>>, so a linear master equation on rho induces a
// linear equation of motion on psi.
struct OpStateVector {
  int nf = 0;
  int ng = 0;
  Eigen::VectorXd psi;

  int dim() const { return nf + nf * nf + ng * nf * nf + ng * nf * nf * nf; }
  double e_entry(int i) const;
  double f_entry(int i, int j) const;
  double g2_entry(int k, int i, int j) const;
  double g3_entry(int k, int i, int j, int l) const;
};

// g3_flat blocks are indexed (i*nf + j)*nf + l per gate.
OpStateVector pack_op_state(const Eigen::VectorXd& e_tilde, const Eigen::MatrixXd& f_tilde,
                            const std::vector<Eigen::MatrixXd>& g2,
                            const std::vector<Eigen::VectorXd>& g3_flat);
void unpack_op_state(const OpStateVector& psi, Eigen::VectorXd& e_tilde, Eigen::MatrixXd& f_tilde,
                     std::vector<Eigen::MatrixXd>& g2, std::vector<Eigen::VectorXd>& g3_flat);

OpStateVector op_state_from_gate_set(const GateSet& gs, const std::vector<Sequence>& fiducials);

// Snapshots psi(s*dt) of a master-equation trajectory, uniformly spaced.
std::vector<std::pair<double, OpStateVector>> generate_op_trajectory(
    const GateSet& gs, const std::vector<Sequence>& fiducials, const SuperOperator& lindblad,
    double dt, int count);

struct GeneratorFit {
  Eigen::MatrixXd k;
  double residual = 0;          // |Y - K X|_F over the finite-difference pairs
  bool rank_deficient = false;  // snapshots span less than the full psi space
};

// Least-squares K from forward differences (psi(t+dt) - psi(t))/dt ~ K psi(t);
// minimum-norm fit (with the rank_deficient flag raised) when the snapshots do
// not span the space.
GeneratorFit learn_generator(const std::vector<std::pair<double, OpStateVector>>& trajectory);

OpStateVector apply_generator(const Eigen::MatrixXd& k, const OpStateVector& psi0, double t);

}  // namespace oqt
