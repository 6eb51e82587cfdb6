#include "oqt/dynamics/generator.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "oqt/linalg/solve.hpp"

namespace oqt {

double OpStateVector::e_entry(int i) const { return psi(i); }

double OpStateVector::f_entry(int i, int j) const { return psi(nf + i * nf + j); }

double OpStateVector::g2_entry(int k, int i, int j) const {
  return psi(nf + nf * nf + (k * nf + i) * nf + j);
}

double OpStateVector::g3_entry(int k, int i, int j, int l) const {
  return psi(nf + nf * nf + ng * nf * nf + ((k * nf + i) * nf + j) * nf + l);
}

OpStateVector pack_op_state(const Eigen::VectorXd& e_tilde, const Eigen::MatrixXd& f_tilde,
                            const std::vector<Eigen::MatrixXd>& g2,
                            const std::vector<Eigen::VectorXd>& g3_flat) {
  OpStateVector out;
  out.nf = static_cast<int>(e_tilde.size());
  out.ng = static_cast<int>(g2.size());
  if (g3_flat.size() != g2.size())
    throw std::invalid_argument("pack_op_state: gate block counts differ");
  if (f_tilde.rows() != out.nf || f_tilde.cols() != out.nf)
    throw std::invalid_argument("pack_op_state: f block shape mismatch");
  out.psi.resize(out.dim());
  Eigen::Index at = 0;
  out.psi.segment(at, out.nf) = e_tilde;
  at += out.nf;
  for (int i = 0; i < out.nf; ++i, at += out.nf) out.psi.segment(at, out.nf) = f_tilde.row(i);
  for (const auto& g : g2) {
    if (g.rows() != out.nf || g.cols() != out.nf)
      throw std::invalid_argument("pack_op_state: g block shape mismatch");
    for (int i = 0; i < out.nf; ++i, at += out.nf) out.psi.segment(at, out.nf) = g.row(i);
  }
  const Eigen::Index cube = static_cast<Eigen::Index>(out.nf) * out.nf * out.nf;
  for (const auto& g : g3_flat) {
    if (g.size() != cube) throw std::invalid_argument("pack_op_state: deep block size mismatch");
    out.psi.segment(at, cube) = g;
    at += cube;
  }
  return out;
}

void unpack_op_state(const OpStateVector& psi, Eigen::VectorXd& e_tilde, Eigen::MatrixXd& f_tilde,
                     std::vector<Eigen::MatrixXd>& g2, std::vector<Eigen::VectorXd>& g3_flat) {
  if (psi.psi.size() != psi.dim()) throw std::invalid_argument("unpack_op_state: stale layout");
  const int nf = psi.nf;
  Eigen::Index at = 0;
  e_tilde = psi.psi.segment(at, nf);
  at += nf;
  f_tilde.resize(nf, nf);
  for (int i = 0; i < nf; ++i, at += nf) f_tilde.row(i) = psi.psi.segment(at, nf);
  g2.assign(psi.ng, Eigen::MatrixXd(nf, nf));
  for (int k = 0; k < psi.ng; ++k)
    for (int i = 0; i < nf; ++i, at += nf) g2[k].row(i) = psi.psi.segment(at, nf);
  const Eigen::Index cube = static_cast<Eigen::Index>(nf) * nf * nf;
  g3_flat.assign(psi.ng, Eigen::VectorXd(cube));
  for (int k = 0; k < psi.ng; ++k, at += cube) g3_flat[k] = psi.psi.segment(at, cube);
}

OpStateVector op_state_from_gate_set(const GateSet& gs, const std::vector<Sequence>& fiducials) {
  const int nf = static_cast<int>(fiducials.size());
  if (nf == 0) throw std::invalid_argument("op_state_from_gate_set: no fiducials");
  const int ng = gs.gate_count();

  std::vector<Eigen::MatrixXd> fid(nf);
  std::vector<Eigen::RowVectorXd> ef(nf);
  std::vector<Eigen::VectorXd> fr(nf);
  for (int i = 0; i < nf; ++i) {
    fid[i] = sequence_superop(gs, fiducials[i]).m;
    ef[i] = gs.effect.c.transpose() * fid[i];
    fr[i] = fid[i] * gs.rho.c;
  }

  Eigen::VectorXd e(nf);
  for (int i = 0; i < nf; ++i) e(i) = ef[i] * gs.rho.c;

  Eigen::MatrixXd f(nf, nf);
  for (int i = 0; i < nf; ++i)
    for (int j = 0; j < nf; ++j) f(i, j) = ef[i] * fr[j];

  std::vector<Eigen::RowVectorXd> efg(static_cast<std::size_t>(ng) * nf);
  for (int k = 0; k < ng; ++k)
    for (int i = 0; i < nf; ++i) efg[k * nf + i] = ef[i] * gs.gates[k].m;

  std::vector<Eigen::MatrixXd> g2(ng, Eigen::MatrixXd(nf, nf));
  for (int k = 0; k < ng; ++k)
    for (int i = 0; i < nf; ++i)
      for (int j = 0; j < nf; ++j) g2[k](i, j) = efg[k * nf + i] * fr[j];

  const Eigen::Index cube = static_cast<Eigen::Index>(nf) * nf * nf;
  std::vector<Eigen::VectorXd> g3(ng, Eigen::VectorXd(cube));
  for (int j = 0; j < nf; ++j)
    for (int l = 0; l < nf; ++l) {
      const Eigen::VectorXd pair_rho = fid[j] * fr[l];
      for (int k = 0; k < ng; ++k)
        for (int i = 0; i < nf; ++i) g3[k]((i * nf + j) * nf + l) = efg[k * nf + i] * pair_rho;
    }
  return pack_op_state(e, f, g2, g3);
}

std::vector<std::pair<double, OpStateVector>> generate_op_trajectory(
    const GateSet& gs, const std::vector<Sequence>& fiducials, const SuperOperator& lindblad,
    double dt, int count) {
  if (count < 1) throw std::invalid_argument("generate_op_trajectory: need snapshots");
  if (dt <= 0) throw std::invalid_argument("generate_op_trajectory: dt must be positive");
  if (lindblad.m.rows() != gs.rho.c.size() || lindblad.m.cols() != gs.rho.c.size())
    throw std::invalid_argument("generate_op_trajectory: generator shape mismatch");
  const Eigen::MatrixXd prop = (lindblad.m * dt).exp();
  GateSet current = gs;
  std::vector<std::pair<double, OpStateVector>> traj;
  traj.reserve(count);
  for (int s = 0; s < count; ++s) {
    traj.emplace_back(dt * s, op_state_from_gate_set(current, fiducials));
    current.rho.c = prop * current.rho.c;
  }
  return traj;
}

GeneratorFit learn_generator(const std::vector<std::pair<double, OpStateVector>>& trajectory) {
  if (trajectory.size() < 2)
    throw std::invalid_argument("learn_generator: need at least two snapshots");
  const Eigen::Index dim = trajectory.front().second.psi.size();
  if (dim != trajectory.front().second.dim())
    throw std::invalid_argument("learn_generator: stale snapshot layout");
  const double dt = trajectory[1].first - trajectory[0].first;
  if (!(dt > 0)) throw std::invalid_argument("learn_generator: snapshots must advance in time");
  for (std::size_t s = 1; s < trajectory.size(); ++s) {
    if (trajectory[s].second.psi.size() != dim)
      throw std::invalid_argument("learn_generator: inconsistent snapshot sizes");
    const double gap = trajectory[s].first - trajectory[s - 1].first;
    if (std::abs(gap - dt) > 1e-9 * std::max(1.0, dt))
      throw std::invalid_argument("learn_generator: snapshots must be uniformly spaced");
  }

  const Eigen::Index n = static_cast<Eigen::Index>(trajectory.size()) - 1;
  Eigen::MatrixXd x(dim, n), y(dim, n);
  for (Eigen::Index s = 0; s < n; ++s) {
    x.col(s) = trajectory[static_cast<std::size_t>(s)].second.psi;
    y.col(s) = (trajectory[static_cast<std::size_t>(s) + 1].second.psi -
                trajectory[static_cast<std::size_t>(s)].second.psi) /
               dt;
  }
  GeneratorFit fit;
  fit.k = y * pinv(x);
  fit.residual = (fit.k * x - y).norm();
  fit.rank_deficient = numerical_rank(x) < dim;
  return fit;
}

OpStateVector apply_generator(const Eigen::MatrixXd& k, const OpStateVector& psi0, double t) {
  if (k.rows() != k.cols() || k.rows() != psi0.psi.size())
    throw std::invalid_argument("apply_generator: generator shape differs from the state");
  OpStateVector out = psi0;
  out.psi = (k * t).exp() * psi0.psi;
  return out;
}

}  // namespace oqt
