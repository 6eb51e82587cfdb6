#include "oqt/protocols/ramsey.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace oqt {

namespace {

SuperKet ground_state() { return superket_from_bloch(Eigen::Vector3d(0, 0, 1)); }

SuperBra ground_effect() {
  SuperBra e;
  e.c = ground_state().c;
  return e;
}

}  // namespace

GateSet ramsey_gate_set(const RamseyParams& p) {
  GateSet gs;
  gs.labels = {"Rx", "dt"};
  gs.rho = depolarize(ground_state(), p.rho_depol);
  gs.effect = dark_count_effect(ground_effect(), p.effect_depol);
  gs.gates.push_back(rotation_ptm(Axis::x, M_PI / 2 + p.epsilon));
  gs.gates.push_back(rotation_ptm(Axis::z, p.omega * p.dt));
  return gs;
}

std::vector<Sequence> ramsey_fiducials() {
  return {Sequence{}, Sequence{"Rx"}, Sequence{"Rx", "Rx"}, Sequence{"Rx", "dt", "Rx"}};
}

ExperimentDesign ramsey_design(int train_lo, int train_hi, int test_lo, int test_hi,
                               long train_shots, long test_shots) {
  if (train_lo < 0 || train_lo > train_hi || test_lo < 0 || test_lo > test_hi)
    throw std::invalid_argument("ramsey_design: bad length ranges");
  ExperimentDesign d;
  d.labels = {"Rx", "dt"};
  d.fiducials = ramsey_fiducials();
  auto fringe = [](int n) {
    Sequence s;
    s.reserve(static_cast<std::size_t>(n) + 2);
    s.push_back("Rx");
    for (int i = 0; i < n; ++i) s.push_back("dt");
    s.push_back("Rx");
    return s;
  };
  for (int n = train_lo; n <= train_hi; ++n) d.training.push_back({fringe(n), train_shots});
  for (int n = test_lo; n <= test_hi; ++n) d.testing.push_back({fringe(n), test_shots});
  return d;
}

PriorSpec ramsey_prior(double omega_lo, double omega_hi, double pulse_stddev, double spam_depol_hi,
                       double dt) {
  PriorSpec spec;
  spec.labels = {"Rx", "dt"};
  spec.fiducials = ramsey_fiducials();

  spec.state = exact_state_prior(ground_state());
  spec.state.depol_hi = spam_depol_hi;
  spec.effect = exact_effect_prior(ground_effect());
  spec.effect.depol_hi = spam_depol_hi;

  spec.gates.push_back(rotation_gate_prior(Axis::x, 1.0, M_PI / 2, pulse_stddev));

  ChannelPrior wait;
  wait.base = ChannelPrior::Base::rotation_gate;
  wait.axis = Axis::z;
  wait.angle_uniform = true;
  wait.angle_lo = omega_lo * dt;
  wait.angle_hi = omega_hi * dt;
  spec.gates.push_back(wait);
  return spec;
}

FringeFit fit_ramsey_frequency(const std::vector<std::pair<double, double>>& points, double dt) {
  if (points.size() < 4) throw std::invalid_argument("fit_ramsey_frequency: too few points");
  if (dt <= 0) throw std::invalid_argument("fit_ramsey_frequency: dt must be positive");

  double nmax = 0;
  double mean = 0;
  for (const auto& [n, p] : points) {
    nmax = std::max(nmax, std::abs(n));
    mean += p;
  }
  mean /= static_cast<double>(points.size());
  double tss = 0;
  for (const auto& [n, p] : points) tss += (p - mean) * (p - mean);

  // coarse scan: for fixed omega the fringe is linear in (cos, sin)
  // amplitudes, so score each grid point by its linear-solve residual
  const double w_hi = M_PI / dt;
  const double step = 0.1 / std::max(1.0, nmax * dt);
  double best_w = 0, best_phi = 0;
  double best_sse = std::numeric_limits<double>::infinity();
  for (double w = step; w <= w_hi; w += step) {
    double cc = 0, cs = 0, ss = 0, cy = 0, sy = 0;
    for (const auto& [n, p] : points) {
      const double c = std::cos(w * n * dt);
      const double s = std::sin(w * n * dt);
      const double y = p - 0.5;
      cc += c * c;
      cs += c * s;
      ss += s * s;
      cy += c * y;
      sy += s * y;
    }
    const double det = cc * ss - cs * cs;
    if (std::abs(det) < 1e-12) continue;
    const double u = (ss * cy - cs * sy) / det;
    const double v = (cc * sy - cs * cy) / det;
    double sse = 0;
    for (const auto& [n, p] : points) {
      const double r = 0.5 + u * std::cos(w * n * dt) + v * std::sin(w * n * dt) - p;
      sse += r * r;
    }
    if (sse < best_sse) {
      best_sse = sse;
      best_w = w;
      best_phi = std::atan2(-v, u);
    }
  }

  // Gauss-Newton on p(n) = (1 + cos(w*n*dt + phi))/2
  double w = best_w, phi = best_phi;
  bool stepped = false;
  for (int it = 0; it < 200; ++it) {
    double jww = 0, jwp = 0, jpp = 0, gw = 0, gp = 0;
    for (const auto& [n, p] : points) {
      const double x = w * n * dt + phi;
      const double r = 0.5 * (1 + std::cos(x)) - p;
      const double dw = -0.5 * std::sin(x) * n * dt;
      const double dp = -0.5 * std::sin(x);
      jww += dw * dw;
      jwp += dw * dp;
      jpp += dp * dp;
      gw += dw * r;
      gp += dp * r;
    }
    const double det = jww * jpp - jwp * jwp;
    if (std::abs(det) < 1e-18) break;
    const double step_w = -(jpp * gw - jwp * gp) / det;
    const double step_p = -(jww * gp - jwp * gw) / det;
    w += step_w;
    phi += step_p;
    stepped = true;
    if (std::abs(step_w) < 1e-12 && std::abs(step_p) < 1e-12) break;
  }

  double sse = 0;
  for (const auto& [n, p] : points) {
    const double r = 0.5 * (1 + std::cos(w * n * dt + phi)) - p;
    sse += r * r;
  }

  FringeFit fit;
  fit.omega = std::abs(w);
  fit.phase = std::remainder(phi, 2 * M_PI);
  fit.residual = std::sqrt(sse / static_cast<double>(points.size()));
  // a usable fringe must beat the constant forecast
  fit.converged = stepped && sse < tss;
  return fit;
}

}  // namespace oqt
