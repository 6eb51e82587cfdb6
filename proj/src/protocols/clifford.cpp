#include "oqt/protocols/clifford.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "oqt/linalg/gates.hpp"

namespace oqt {

int CliffordTable::index_of(const SuperOperator& g, double tol) const {
  for (int i = 0; i < size(); ++i)
    if ((elements[static_cast<std::size_t>(i)].m - g.m).cwiseAbs().maxCoeff() <= tol) return i;
  return -1;
}

CliffordTable build_clifford_table() {
  CliffordTable t;
  const std::array<std::pair<std::string, SuperOperator>, 2> gens = {
      std::make_pair(std::string("H"), hadamard_ptm()),
      std::make_pair(std::string("S"), phase_ptm())};

  t.elements.push_back(identity_ptm());
  t.words.push_back(Sequence{});
  // breadth-first closure; generator entries are exact integers so products
  // stay exact and membership checks are unambiguous
  for (std::size_t head = 0; head < t.elements.size(); ++head) {
    for (const auto& [label, gen] : gens) {
      SuperOperator next;
      next.m = gen.m * t.elements[head].m;
      if (t.index_of(next) >= 0) continue;
      Sequence word = t.words[head];
      word.push_back(label);
      t.elements.push_back(std::move(next));
      t.words.push_back(std::move(word));
    }
  }
  const int n = static_cast<int>(t.elements.size());
  if (n != 24) throw std::runtime_error("clifford closure: expected 24 elements");

  t.product.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      SuperOperator prod;
      prod.m = t.elements[static_cast<std::size_t>(i)].m * t.elements[static_cast<std::size_t>(j)].m;
      const int k = t.index_of(prod);
      if (k < 0) throw std::runtime_error("clifford closure: product escaped the group");
      t.product(i, j) = k;
    }

  t.inverse.assign(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (t.product(i, j) == 0) {
        t.inverse[static_cast<std::size_t>(i)] = j;
        break;
      }
  for (int i = 0; i < n; ++i)
    if (t.inverse[static_cast<std::size_t>(i)] < 0)
      throw std::runtime_error("clifford closure: missing inverse");
  return t;
}

RbSequence rb_sequence(int m, const CliffordTable& table, Rng& rng) {
  if (m < 1) throw std::invalid_argument("rb_sequence: length must be positive");
  RbSequence seq;
  seq.cliffords.reserve(static_cast<std::size_t>(m));
  int running = 0;  // identity
  for (int t = 0; t < m; ++t) {
    const int idx = static_cast<int>(rng.integer(static_cast<std::uint64_t>(table.size())));
    seq.cliffords.push_back(idx);
    running = table.product(idx, running);
  }
  seq.inversion = table.inverse[static_cast<std::size_t>(running)];
  for (int idx : seq.cliffords) {
    const auto& w = table.words[static_cast<std::size_t>(idx)];
    seq.expanded.insert(seq.expanded.end(), w.begin(), w.end());
  }
  const auto& w = table.words[static_cast<std::size_t>(seq.inversion)];
  seq.expanded.insert(seq.expanded.end(), w.begin(), w.end());
  return seq;
}

std::vector<DesignEntry> RbDesign::entries() const {
  std::vector<DesignEntry> out;
  for (const auto& block : sequences)
    for (const auto& seq : block) out.push_back({seq.expanded, shots});
  return out;
}

RbDesign rb_design(const std::vector<int>& lengths, int count, long shots,
                   const CliffordTable& table, Rng& rng) {
  if (count < 1) throw std::invalid_argument("rb_design: count must be positive");
  RbDesign d;
  d.lengths = lengths;
  d.shots = shots;
  d.sequences.resize(lengths.size());
  for (std::size_t li = 0; li < lengths.size(); ++li) {
    d.sequences[li].reserve(static_cast<std::size_t>(count));
    for (int c = 0; c < count; ++c) d.sequences[li].push_back(rb_sequence(lengths[li], table, rng));
  }
  return d;
}

std::vector<int> rb_test_lengths() {
  const double lo = std::log10(10.0);
  const double hi = std::log10(252.0);
  std::vector<int> lengths;
  // 101 grid points collapse to exactly 87 distinct integers on [10, 252]
  for (int i = 0; i <= 100; ++i) {
    const int v = static_cast<int>(std::lround(std::pow(10.0, lo + (hi - lo) * i / 100.0)));
    if (lengths.empty() || lengths.back() != v) lengths.push_back(v);
  }
  return lengths;
}

}  // namespace oqt
