#pragma once

#include <optional>

#include "oqt/common/rng.hpp"
#include "oqt/gateset/operational_rep.hpp"
#include "oqt/linalg/gates.hpp"

namespace oqt {

// One button's prior. A draw starts from the base and then applies the
// modifiers in a fixed order: convex mixing with fresh random junk first,
// depolarization last (dark-count mixing for effects).
struct ChannelPrior {
  enum class Base {
    exact,           // fixed state/effect/gate, no angle draw
    ginibre_state,   // complex Ginibre density
    rebit_state,     // real Ginibre density (zero Y component)
    rotation_gate,   // rotation about `axis` by sense*(angle0 + angle draw)
    hadamard_gate,   // Hadamard pulse overshot by the angle draw
  };

  Base base = Base::exact;
  SuperKet state0;
  SuperBra effect0;
  SuperOperator gate0;

  Axis axis = Axis::x;
  double sense = 1.0;
  double angle0 = 0.0;
  double angle_stddev = 0.0;            // Gaussian overshoot when > 0
  bool angle_uniform = false;           // U(angle_lo, angle_hi) overshoot instead
  double angle_lo = 0.0, angle_hi = 0.0;

  double mix_eps = 0.0;                 // convex mix with a fresh Ginibre/BCSZ draw
  double depol_lo = 0.0, depol_hi = 0.0;  // p ~ U(lo, hi)

  void validate() const;
};

ChannelPrior exact_state_prior(const SuperKet& k);
ChannelPrior exact_effect_prior(const SuperBra& e);
ChannelPrior exact_gate_prior(const SuperOperator& g);
ChannelPrior rotation_gate_prior(Axis axis, double sense, double angle0, double angle_stddev);

SuperKet sample_state(const ChannelPrior& p, Rng& rng);
SuperBra sample_effect(const ChannelPrior& p, Rng& rng);
SuperOperator sample_gate(const ChannelPrior& p, Rng& rng);

// Gate-set prior: one ChannelPrior per button plus the fiducial set used to
// project draws into operational form.
struct PriorSpec {
  ChannelPrior state;
  ChannelPrior effect;
  std::vector<std::string> labels;
  std::vector<ChannelPrior> gates;
  std::vector<Sequence> fiducials;

  void validate() const;  // label/gate arity, nonempty fiducials
};

GateSet sample_gate_set(const PriorSpec& spec, Rng& rng);

}  // namespace oqt
