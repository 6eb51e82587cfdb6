#include "oqt/dynamics/evolution.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace oqt {

ClosedState closed_state_from_gate_set(const GateSet& gs, const std::vector<Sequence>& fiducials,
                                       const FiducialAlgebra& algebra) {
  if (fiducials.size() != algebra.fiducial_index.size())
    throw std::invalid_argument("closed state: fiducial count differs from the algebra");
  const int n = algebra.size();
  const int nf = static_cast<int>(fiducials.size());
  const int ng = gs.gate_count();

  std::vector<Eigen::VectorXd> element_rho(n);
  for (int a = 0; a < n; ++a) element_rho[a] = algebra.elements[a].m * gs.rho.c;

  ClosedState st;
  st.v.resize(n);
  for (int a = 0; a < n; ++a) st.v(a) = gs.effect.c.dot(element_rho[a]);

  st.w.resize(ng);
  for (int k = 0; k < ng; ++k) {
    st.w[k].resize(nf, n);
    for (int i = 0; i < nf; ++i) {
      const Eigen::RowVectorXd probe =
          gs.effect.c.transpose() * sequence_superop(gs, fiducials[i]).m * gs.gates[k].m;
      for (int a = 0; a < n; ++a) st.w[k](i, a) = probe * element_rho[a];
    }
  }
  return st;
}

Eigen::VectorXd e_tilde_from_closed(const ClosedState& state, const FiducialAlgebra& algebra) {
  const int nf = static_cast<int>(algebra.fiducial_index.size());
  Eigen::VectorXd e(nf);
  for (int i = 0; i < nf; ++i) e(i) = state.v(algebra.fiducial_index[i]);
  return e;
}

Eigen::MatrixXd f_tilde_from_closed(const ClosedState& state, const FiducialAlgebra& algebra) {
  const int nf = static_cast<int>(algebra.fiducial_index.size());
  Eigen::MatrixXd f(nf, nf);
  for (int i = 0; i < nf; ++i)
    for (int j = 0; j < nf; ++j) {
      const int idx = algebra.product(algebra.fiducial_index[i], algebra.fiducial_index[j]);
      if (idx < 0) throw std::invalid_argument("f_tilde_from_closed: algebra is not closed");
      f(i, j) = state.v(idx);
    }
  return f;
}

std::vector<Eigen::MatrixXd> g_tilde_from_closed(const ClosedState& state,
                                                 const FiducialAlgebra& algebra) {
  const int nf = static_cast<int>(algebra.fiducial_index.size());
  std::vector<Eigen::MatrixXd> g(state.w.size());
  for (std::size_t k = 0; k < state.w.size(); ++k) {
    g[k].resize(nf, nf);
    for (int i = 0; i < nf; ++i)
      for (int j = 0; j < nf; ++j) g[k](i, j) = state.w[k](i, algebra.fiducial_index[j]);
  }
  return g;
}

namespace {

// T(a, b) = sum of alpha_l over fiducials l with s_a F_l = s_b.
Eigen::MatrixXd index_generator(const FiducialAlgebra& algebra, const Eigen::VectorXd& alpha) {
  const int n = algebra.size();
  const int nf = static_cast<int>(algebra.fiducial_index.size());
  if (alpha.size() != nf)
    throw std::invalid_argument("evolve_closed: coefficient count differs from fiducials");
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int l = 0; l < nf; ++l) {
      const int b = algebra.product(a, algebra.fiducial_index[l]);
      if (b < 0) throw std::invalid_argument("evolve_closed: algebra is not closed");
      t(a, b) += alpha(l);
    }
  return t;
}

Eigen::MatrixXd rk4_step(const Eigen::MatrixXd& y, const Eigen::MatrixXd& tt, double h) {
  const Eigen::MatrixXd k1 = y * tt;
  const Eigen::MatrixXd k2 = (y + (0.5 * h) * k1) * tt;
  const Eigen::MatrixXd k3 = (y + (0.5 * h) * k2) * tt;
  const Eigen::MatrixXd k4 = (y + h * k3) * tt;
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Eigen::MatrixXd integrate_with(const Eigen::MatrixXd& y0, const Eigen::MatrixXd& tt, double h,
                               long pieces) {
  Eigen::MatrixXd y = y0;
  const double sub = h / static_cast<double>(pieces);
  for (long s = 0; s < pieces; ++s) y = rk4_step(y, tt, sub);
  return y;
}

}  // namespace

std::vector<std::pair<double, ClosedState>> evolve_closed(const ClosedState& initial,
                                                          const FiducialAlgebra& algebra,
                                                          const Eigen::VectorXd& alpha,
                                                          double t_span, int steps) {
  if (!algebra.closed) throw std::invalid_argument("evolve_closed: algebra is not closed");
  if (steps < 1 || t_span < 0) throw std::invalid_argument("evolve_closed: bad time span");
  const int n = algebra.size();
  if (initial.v.size() != n)
    throw std::invalid_argument("evolve_closed: state size differs from the algebra");
  const Eigen::MatrixXd tt = index_generator(algebra, alpha).transpose();

  Eigen::Index rows = 1;
  for (const auto& wk : initial.w) {
    if (wk.cols() != n)
      throw std::invalid_argument("evolve_closed: state size differs from the algebra");
    rows += wk.rows();
  }
  Eigen::MatrixXd y(rows, n);
  y.row(0) = initial.v.transpose();
  Eigen::Index at = 1;
  for (const auto& wk : initial.w) {
    y.middleRows(at, wk.rows()) = wk;
    at += wk.rows();
  }

  auto unpack = [&](const Eigen::MatrixXd& m) {
    ClosedState st;
    st.v = m.row(0).transpose();
    Eigen::Index r = 1;
    st.w.reserve(initial.w.size());
    for (const auto& wk : initial.w) {
      st.w.push_back(m.middleRows(r, wk.rows()));
      r += wk.rows();
    }
    return st;
  };

  std::vector<std::pair<double, ClosedState>> traj;
  traj.reserve(static_cast<std::size_t>(steps) + 1);
  traj.emplace_back(0.0, unpack(y));
  const double h = t_span / steps;
  constexpr double kLocalTol = 1e-8;
  for (int s = 1; s <= steps; ++s) {
    Eigen::MatrixXd coarse = integrate_with(y, tt, h, 1);
    for (long pieces = 2;; pieces *= 2) {
      Eigen::MatrixXd fine = integrate_with(y, tt, h, pieces);
      const double scale = std::max(1.0, fine.cwiseAbs().maxCoeff());
      if ((fine - coarse).cwiseAbs().maxCoeff() <= kLocalTol * scale) {
        y = std::move(fine);
        break;
      }
      if (pieces > (1L << 20)) throw std::runtime_error("evolve_closed: step refinement stalled");
      coarse = std::move(fine);
    }
    traj.emplace_back(h * s, unpack(y));
  }
  return traj;
}

double lambert_w(double x) {
  if (!(x >= 0)) throw std::domain_error("lambert_w: argument below the supported range");
  if (x == 0) return 0;
  double w = x < M_E ? x / (1.0 + x) : std::log(x) - std::log(std::log(x));
  for (int it = 0; it < 50; ++it) {
    const double ew = std::exp(w);
    const double step = (w * ew - x) / (ew * (1.0 + w));
    w -= step;
    if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(w))) break;
  }
  return w;
}

int taylor_truncation_order(const Eigen::VectorXd& alpha, double delta, double eps) {
  if (!(eps > 0 && eps < 1))
    throw std::domain_error("taylor_truncation_order: eps must sit inside (0, 1)");
  if (delta < 0) throw std::domain_error("taylor_truncation_order: negative step");
  const double strength = alpha.cwiseAbs().sum();
  if (delta > strength)
    throw std::domain_error(
        "taylor_truncation_order: step exceeds the summed coefficient magnitude; shrink delta");
  const double rate = strength * delta;
  if (rate == 0) return 0;

  const double l = std::log(1.0 / eps);
  int k = static_cast<int>(std::floor(l / lambert_w(l / rate)));
  if (k < 0) k = 0;
  auto satisfies = [&](int kk) {
    return (kk + 1) * (std::log(rate) - std::log(kk + 1.0)) <= std::log(eps);
  };
  while (!satisfies(k)) ++k;
  while (k > 0 && satisfies(k - 1)) --k;
  return k;
}

ExtendedTensors extended_tensors_from_gate_set(const GateSet& gs,
                                               const std::vector<Sequence>& fiducials,
                                               int max_depth) {
  if (max_depth < 1) throw std::invalid_argument("extended tensors: depth must be at least 1");
  const int nf = static_cast<int>(fiducials.size());
  if (nf == 0) throw std::invalid_argument("extended tensors: no fiducials");
  if (max_depth * std::log(static_cast<double>(nf)) > std::log(1e8))
    throw std::invalid_argument("extended tensors: hierarchy too large to materialize");

  std::vector<Eigen::MatrixXd> fid_ops(nf);
  for (int i = 0; i < nf; ++i) fid_ops[i] = sequence_superop(gs, fiducials[i]).m;

  ExtendedTensors out;
  out.nf = nf;
  out.max_depth = max_depth;
  out.levels.resize(static_cast<std::size_t>(max_depth) + 1);
  out.levels[0].resize(1);
  out.levels[0](0) = gs.effect.c.dot(gs.rho.c);

  // vecs holds F_{i1}...F_{ip} |rho>> per flat word, leftmost index slowest
  Eigen::MatrixXd vecs = gs.rho.c;
  for (int p = 1; p <= max_depth; ++p) {
    const Eigen::Index prev = vecs.cols();
    Eigen::MatrixXd next(vecs.rows(), prev * nf);
    for (int i = 0; i < nf; ++i) next.middleCols(i * prev, prev) = fid_ops[i] * vecs;
    out.levels[p] = (gs.effect.c.transpose() * next).transpose();
    vecs = std::move(next);
  }
  return out;
}

ExtendedTensors evolve_truncated(const ExtendedTensors& tensors, const Eigen::VectorXd& alpha,
                                 double delta, int K) {
  if (K < 0) throw std::invalid_argument("evolve_truncated: negative order");
  if (alpha.size() != tensors.nf)
    throw std::invalid_argument("evolve_truncated: coefficient count differs from fiducials");
  if (tensors.max_depth - K < 1)
    throw std::invalid_argument("evolve_truncated: hierarchy too shallow for the requested order");
  const int nf = tensors.nf;

  auto contract = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    Eigen::Map<const Eigen::MatrixXd> m(v.data(), nf, v.size() / nf);
    return m.transpose() * alpha;
  };

  ExtendedTensors out;
  out.nf = nf;
  out.max_depth = tensors.max_depth - K;
  out.levels.resize(static_cast<std::size_t>(out.max_depth) + 1);
  for (int p = 0; p <= out.max_depth; ++p) {
    Eigen::VectorXd acc = tensors.levels[p + K];
    for (int j = K; j >= 1; --j) acc = tensors.levels[p + j - 1] + (delta / j) * contract(acc);
    out.levels[p] = std::move(acc);
  }
  return out;
}

}  // namespace oqt
