#include "oqt/gateset/gate_set.hpp"

#include <stdexcept>

#include "oqt/linalg/solve.hpp"

namespace oqt {

std::string sequence_key(const Sequence& s) {
  if (s.empty()) return "()";
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += s[i];
  }
  return out;
}

int GateSet::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return static_cast<int>(i);
  return -1;
}

const SuperOperator& GateSet::gate(std::string_view label) const {
  const int i = index_of(label);
  if (i < 0) throw std::invalid_argument("gate set: unknown label '" + std::string(label) + "'");
  return gates[static_cast<std::size_t>(i)];
}

void GateSet::validate() const {
  if (labels.size() != gates.size())
    throw std::invalid_argument("gate set: label/gate count mismatch");
  const Eigen::Index n = rho.c.size();
  if (effect.c.size() != n) throw std::invalid_argument("gate set: state/effect dimension mismatch");
  for (const auto& g : gates)
    if (g.m.rows() != n || g.m.cols() != n)
      throw std::invalid_argument("gate set: gate dimension mismatch");
}

std::vector<int> compile_sequence(const GateSet& gs, const Sequence& s) {
  std::vector<int> ids;
  ids.reserve(s.size());
  for (const auto& label : s) {
    const int i = gs.index_of(label);
    if (i < 0) throw std::invalid_argument("sequence: unknown label '" + label + "'");
    ids.push_back(i);
  }
  return ids;
}

double sequence_probability(const GateSet& gs, const std::vector<int>& compiled) {
  Eigen::VectorXd w = gs.rho.c;
  Eigen::VectorXd tmp(w.size());
  for (int id : compiled) {
    tmp.noalias() = gs.gates[static_cast<std::size_t>(id)].m * w;
    w.swap(tmp);
  }
  return gs.effect.c.dot(w);
}

double sequence_probability(const GateSet& gs, const Sequence& s) {
  return sequence_probability(gs, compile_sequence(gs, s));
}

SuperOperator sequence_superop(const GateSet& gs, const Sequence& s) {
  const Eigen::Index n = gs.rho.c.size();
  SuperOperator phi;
  phi.m = Eigen::MatrixXd::Identity(n, n);
  for (int id : compile_sequence(gs, s)) phi.m = gs.gates[static_cast<std::size_t>(id)].m * phi.m;
  return phi;
}

GateSet gauge_transform(const GateSet& gs, const SuperOperator& b) {
  if (condition_number(b.m) >= 1e12)
    throw std::invalid_argument("gauge_transform: basis change is numerically singular");
  const Eigen::MatrixXd binv = b.m.inverse();
  GateSet out;
  out.labels = gs.labels;
  out.rho.c = b.m * gs.rho.c;
  out.effect.c = binv.transpose() * gs.effect.c;
  out.gates.reserve(gs.gates.size());
  for (const auto& g : gs.gates) {
    SuperOperator t;
    t.m = b.m * g.m * binv;
    out.gates.push_back(std::move(t));
  }
  return out;
}

}  // namespace oqt
