#pragma once

#include "oqt/protocols/design.hpp"

namespace oqt {

// The 24 single-qubit Clifford transfer matrices generated by the Hadamard
// and phase gates, with group tables and shortest generator words.
struct CliffordTable {
  std::vector<SuperOperator> elements;   // element 0 is the identity
  Eigen::MatrixXi product;               // product(i, j) = index of C_i * C_j
  std::vector<int> inverse;              // per element
  std::vector<Sequence> words;           // shortest word over {"H", "S"},
                                         // breadth-first, H tried before S

  int size() const { return static_cast<int>(elements.size()); }
  int index_of(const SuperOperator& g, double tol = 1e-9) const;  // -1 when absent
};

CliffordTable build_clifford_table();

// One benchmarking run: m uniformly random Cliffords plus the group inverse
// of their product, stored both as Clifford indices and as the expanded
// generator button sequence.
struct RbSequence {
  std::vector<int> cliffords;  // m entries, time order
  int inversion = 0;           // closing element index
  Sequence expanded;           // generator buttons incl. the inversion word
};

RbSequence rb_sequence(int m, const CliffordTable& table, Rng& rng);

// Benchmarking plan: `count` sequences at every length in `lengths`.
struct RbDesign {
  std::vector<int> lengths;
  std::vector<std::vector<RbSequence>> sequences;  // [length index][draw]
  long shots = 1;

  std::vector<DesignEntry> entries() const;  // flattened, training order
};

RbDesign rb_design(const std::vector<int>& lengths, int count, long shots, const CliffordTable& table,
                   Rng& rng);

// 87 distinct log-spaced lengths spanning [10, 252].
std::vector<int> rb_test_lengths();

}  // namespace oqt
