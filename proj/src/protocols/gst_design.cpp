#include "oqt/protocols/gst_design.hpp"

#include <stdexcept>
#include <unordered_set>

#include "oqt/linalg/gates.hpp"

namespace oqt {

namespace {

Sequence repeat_germ(const Sequence& germ, long times) {
  Sequence out;
  out.reserve(germ.size() * static_cast<std::size_t>(times));
  for (long t = 0; t < times; ++t) out.insert(out.end(), germ.begin(), germ.end());
  return out;
}

}  // namespace

ExperimentDesign germ_design(const std::vector<std::string>& labels,
                             const std::vector<Sequence>& fiducials,
                             const std::vector<Sequence>& germs,
                             const std::vector<std::string>& power_germs, int m_max,
                             long train_shots, long test_shots) {
  if (m_max < 1) throw std::invalid_argument("germ_design: m_max must be positive");
  if (fiducials.empty() || germs.empty()) throw std::invalid_argument("germ_design: empty design");

  ExperimentDesign d;
  d.labels = labels;
  d.fiducials = fiducials;

  std::unordered_set<std::string> testing_keys;
  for (const auto& label : power_germs) {
    for (long n = 1; n <= (1L << m_max); n *= 2) {
      Sequence s = repeat_germ(Sequence{label}, n);
      testing_keys.insert(sequence_key(s));
      d.testing.push_back({std::move(s), test_shots});
    }
  }

  std::unordered_set<std::string> seen;
  for (const auto& germ : germs) {
    const long glen = static_cast<long>(germ.size());
    for (int m = 1; m <= m_max; ++m) {
      const long reps = (1L << m) / glen;
      const Sequence core = repeat_germ(germ, reps);
      for (const auto& fj : fiducials) {    // preparation-side fiducial first
        for (const auto& fi : fiducials) {  // measurement side
          Sequence s = fj;
          s.insert(s.end(), core.begin(), core.end());
          s.insert(s.end(), fi.begin(), fi.end());
          const std::string key = sequence_key(s);
          if (testing_keys.count(key) || !seen.insert(key).second) continue;
          d.training.push_back({std::move(s), train_shots});
        }
      }
    }
  }
  return d;
}

const ThreeButtonConfig& three_button_config() {
  static const ThreeButtonConfig cfg = [] {
    ThreeButtonConfig c;
    c.labels = {"Gi", "Gx", "Gy"};
    c.fiducials = {Sequence{}, Sequence{"Gx"}, Sequence{"Gy"}, Sequence{"Gx", "Gx"}};
    c.germs = {
        Sequence{"Gx"},
        Sequence{"Gy"},
        Sequence{"Gi", "Gx", "Gy"},
        Sequence{"Gx", "Gy", "Gi"},
        Sequence{"Gx", "Gi", "Gy"},
        Sequence{"Gx", "Gi", "Gi"},
        Sequence{"Gy", "Gi", "Gi"},
        Sequence{"Gx", "Gx", "Gi", "Gy"},
        Sequence{"Gx", "Gy", "Gy", "Gi"},
        Sequence{"Gx", "Gx", "Gy", "Gx", "Gy", "Gy"},
    };
    c.power_germs = {"Gx", "Gy", "Gi"};
    return c;
  }();
  return cfg;
}

ExperimentDesign three_button_design(int m_max, long train_shots, long test_shots) {
  const auto& cfg = three_button_config();
  return germ_design(cfg.labels, cfg.fiducials, cfg.germs, cfg.power_germs, m_max, train_shots,
                     test_shots);
}

PriorSpec three_button_prior(double gate_eps, double spam_eps) {
  const auto& cfg = three_button_config();
  PriorSpec spec;
  spec.labels = cfg.labels;
  spec.fiducials = cfg.fiducials;

  spec.state = exact_state_prior(superket_from_bloch(Eigen::Vector3d(0, 0, 1)));
  spec.state.base = ChannelPrior::Base::exact;
  spec.state.mix_eps = spam_eps;

  SuperBra e;
  e.c = superket_from_bloch(Eigen::Vector3d(0, 0, 1)).c;
  spec.effect = exact_effect_prior(e);
  spec.effect.mix_eps = spam_eps;

  auto mixed_gate = [&](const SuperOperator& ideal) {
    ChannelPrior p = exact_gate_prior(ideal);
    p.mix_eps = gate_eps;
    return p;
  };
  spec.gates.push_back(mixed_gate(identity_ptm()));
  spec.gates.push_back(mixed_gate(rotation_ptm(Axis::x, M_PI / 2)));
  spec.gates.push_back(mixed_gate(rotation_ptm(Axis::y, M_PI / 2)));
  return spec;
}

}  // namespace oqt
