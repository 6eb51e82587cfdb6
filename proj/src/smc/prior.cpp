#include "oqt/smc/prior.hpp"

#include <stdexcept>

#include "oqt/linalg/random_channels.hpp"

namespace oqt {

void ChannelPrior::validate() const {
  if (angle_stddev < 0) throw std::invalid_argument("prior: negative angle stddev");
  if (angle_uniform && !(angle_lo <= angle_hi))
    throw std::invalid_argument("prior: empty uniform angle range");
  if (!(mix_eps >= 0 && mix_eps <= 1)) throw std::invalid_argument("prior: mix_eps outside [0, 1]");
  if (!(0 <= depol_lo && depol_lo <= depol_hi && depol_hi <= 1))
    throw std::invalid_argument("prior: depolarization range outside [0, 1]");
}

ChannelPrior exact_state_prior(const SuperKet& k) {
  ChannelPrior p;
  p.base = ChannelPrior::Base::exact;
  p.state0 = k;
  return p;
}

ChannelPrior exact_effect_prior(const SuperBra& e) {
  ChannelPrior p;
  p.base = ChannelPrior::Base::exact;
  p.effect0 = e;
  return p;
}

ChannelPrior exact_gate_prior(const SuperOperator& g) {
  ChannelPrior p;
  p.base = ChannelPrior::Base::exact;
  p.gate0 = g;
  return p;
}

ChannelPrior rotation_gate_prior(Axis axis, double sense, double angle0, double angle_stddev) {
  ChannelPrior p;
  p.base = ChannelPrior::Base::rotation_gate;
  p.axis = axis;
  p.sense = sense;
  p.angle0 = angle0;
  p.angle_stddev = angle_stddev;
  return p;
}

namespace {

double draw_angle(const ChannelPrior& p, Rng& rng) {
  if (p.angle_uniform) return rng.uniform(p.angle_lo, p.angle_hi);
  if (p.angle_stddev > 0) return rng.normal(0.0, p.angle_stddev);
  return 0.0;
}

double draw_depol(const ChannelPrior& p, Rng& rng) {
  if (p.depol_hi <= 0.0) return 0.0;
  return rng.uniform(p.depol_lo, p.depol_hi);
}

}  // namespace

SuperKet sample_state(const ChannelPrior& p, Rng& rng) {
  p.validate();
  SuperKet k;
  switch (p.base) {
    case ChannelPrior::Base::exact:
      k = p.state0;
      break;
    case ChannelPrior::Base::ginibre_state:
      k = sample_ginibre_superket(false, rng);
      break;
    case ChannelPrior::Base::rebit_state:
      k = sample_ginibre_superket(true, rng);
      break;
    default:
      throw std::invalid_argument("sample_state: prior base is not a state");
  }
  if (p.mix_eps > 0) k = convex_mix(k, sample_ginibre_superket(false, rng), p.mix_eps);
  return depolarize(k, draw_depol(p, rng));
}

SuperBra sample_effect(const ChannelPrior& p, Rng& rng) {
  p.validate();
  if (p.base != ChannelPrior::Base::exact)
    throw std::invalid_argument("sample_effect: prior base is not an effect");
  SuperBra e = p.effect0;
  if (p.mix_eps > 0) {
    SuperBra junk;
    junk.c = sample_ginibre_superket(false, rng).c;
    e = convex_mix(e, junk, p.mix_eps);
  }
  return dark_count_effect(e, draw_depol(p, rng));
}

SuperOperator sample_gate(const ChannelPrior& p, Rng& rng) {
  p.validate();
  SuperOperator g;
  switch (p.base) {
    case ChannelPrior::Base::exact:
      g = p.gate0;
      break;
    case ChannelPrior::Base::rotation_gate:
      g = rotation_ptm(p.axis, p.sense * (p.angle0 + draw_angle(p, rng)));
      break;
    case ChannelPrior::Base::hadamard_gate:
      g = overrotated_hadamard(draw_angle(p, rng));
      break;
    default:
      throw std::invalid_argument("sample_gate: prior base is not a gate");
  }
  if (p.mix_eps > 0) g = convex_mix(g, sample_bcsz(2, rng), p.mix_eps);
  return depolarize(g, draw_depol(p, rng));
}

void PriorSpec::validate() const {
  if (labels.size() != gates.size()) throw std::invalid_argument("prior spec: label/gate mismatch");
  if (labels.empty()) throw std::invalid_argument("prior spec: no gate buttons");
  if (fiducials.empty()) throw std::invalid_argument("prior spec: no fiducials");
  state.validate();
  effect.validate();
  for (const auto& g : gates) g.validate();
}

GateSet sample_gate_set(const PriorSpec& spec, Rng& rng) {
  spec.validate();
  GateSet gs;
  gs.labels = spec.labels;
  gs.rho = sample_state(spec.state, rng);
  gs.effect = sample_effect(spec.effect, rng);
  gs.gates.reserve(spec.gates.size());
  for (const auto& g : spec.gates) gs.gates.push_back(sample_gate(g, rng));
  return gs;
}

}  // namespace oqt
