#include "oqt/protocols/state_tomography.hpp"

#include <cmath>
#include <stdexcept>

#include "oqt/linalg/gates.hpp"

namespace oqt {

std::vector<Sequence> rebit_fiducials() {
  return {Sequence{}, Sequence{"Rx"}, Sequence{"Ry"}, Sequence{"Rx", "Rx"}};
}

SuperOperator rebit_rx(double overshoot) { return rotation_ptm(Axis::x, M_PI / 2 + overshoot); }

SuperOperator rebit_ry(double overshoot) { return rotation_ptm(Axis::y, -(M_PI / 2 + overshoot)); }

PriorSpec rebit_prior(double pulse_stddev, double depol_hi) {
  PriorSpec spec;
  spec.labels = {"Rx", "Ry"};
  spec.fiducials = rebit_fiducials();

  spec.state.base = ChannelPrior::Base::rebit_state;
  spec.state.depol_hi = depol_hi;

  SuperBra e;
  e.c = superket_from_bloch(Eigen::Vector3d(0, 0, 1)).c;
  spec.effect = exact_effect_prior(e);
  spec.effect.depol_hi = depol_hi;

  ChannelPrior rx = rotation_gate_prior(Axis::x, 1.0, M_PI / 2, pulse_stddev);
  rx.depol_hi = depol_hi;
  spec.gates.push_back(rx);

  ChannelPrior ry = rotation_gate_prior(Axis::y, -1.0, M_PI / 2, pulse_stddev);
  ry.depol_hi = depol_hi;
  spec.gates.push_back(ry);
  return spec;
}

ExperimentDesign rebit_design(int count_train, int train_lo, int train_hi, int count_test,
                              int test_lo, int test_hi, long shots, Rng& rng) {
  if (train_lo < 1 || train_lo > train_hi || test_lo < 1 || test_lo > test_hi)
    throw std::invalid_argument("rebit_design: bad length ranges");
  ExperimentDesign d;
  d.labels = {"Rx", "Ry"};
  d.fiducials = rebit_fiducials();

  const auto& fids = d.fiducials;
  auto random_product = [&](int n) {
    Sequence s;
    for (int i = 0; i < n; ++i) {
      const auto& f = fids[rng.integer(fids.size())];
      s.insert(s.end(), f.begin(), f.end());
    }
    return s;
  };

  // lengths cycle lo..hi until the block is full, so counts per length are as
  // even as the total allows
  for (int i = 0; i < count_train; ++i) {
    const int n = train_lo + i % (train_hi - train_lo + 1);
    d.training.push_back({random_product(n), shots});
  }
  for (int i = 0; i < count_test; ++i) {
    const int n = test_lo + i % (test_hi - test_lo + 1);
    d.testing.push_back({random_product(n), shots});
  }
  return d;
}

Eigen::Vector3d pseudo_bloch_from_params(const RepTemplate& tmpl, const Eigen::VectorXd& params) {
  if (tmpl.nf() < 3) throw std::invalid_argument("pseudo_bloch: need the three reader fiducials");
  auto f0 = [&](int j) { return params(tmpl.f_slot(0, j)); };
  return {2 * f0(2) - 1, 2 * f0(1) - 1, 2 * f0(0) - 1};
}

Eigen::Vector3d pseudo_bloch(const OperationalRep& rep) {
  return pseudo_bloch_from_params(*rep.tmpl, rep.params);
}

Eigen::Vector3d pseudo_bloch_from_frequencies(double p_empty, double p_rx, double p_ry) {
  return {2 * p_ry - 1, 2 * p_rx - 1, 2 * p_empty - 1};
}

}  // namespace oqt
