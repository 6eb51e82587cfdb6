#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "oqt/linalg/pauli.hpp"

namespace oqt {

// A sequence is the list of gate-button labels pressed between preparation
// and measurement, in time order (first pressed first).
using Sequence = std::vector<std::string>;

std::string sequence_key(const Sequence& s);  // comma-joined; "()" when empty

struct GateSet {
  SuperKet rho;
  SuperBra effect;
  std::vector<std::string> labels;  // declaration order is the gate index order
  std::vector<SuperOperator> gates;

  int gate_count() const { return static_cast<int>(gates.size()); }
  int index_of(std::string_view label) const;  // -1 when absent
  const SuperOperator& gate(std::string_view label) const;
  void validate() const;  // label/gate count match, consistent dimensions
};

std::vector<int> compile_sequence(const GateSet& gs, const Sequence& s);

// Born rule <<E| G_{s_m} ... G_{s_1} |rho>>, applied in time order. Raw value;
// round-off may leave [0, 1] and is not clipped here.
double sequence_probability(const GateSet& gs, const Sequence& s);
double sequence_probability(const GateSet& gs, const std::vector<int>& compiled);

// Product map of the whole sequence: Phi(s) = G_{s_m} ... G_{s_1}.
SuperOperator sequence_superop(const GateSet& gs, const Sequence& s);

// {B|rho>>, <<E|B^-1, B G_i B^-1}; throws when cond(B) >= 1e12.
GateSet gauge_transform(const GateSet& gs, const SuperOperator& b);

}  // namespace oqt
