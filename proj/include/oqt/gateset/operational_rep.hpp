#pragma once

#include <memory>

#include "oqt/gateset/gate_set.hpp"

namespace oqt {

// Gauge-free description of a gate set: every stored number is a sequence
// probability. With fiducials F_1..F_n (button sequences) the raw tensors are
//   E~_i      = <<E| F_i |rho>>
//   F~_ij     = <<E| F_i F_j |rho>>        (F_j pressed first)
//   G~(k)_ij  = <<E| F_i G_k F_j |rho>>
// Distinct tensor entries whose full button sequences coincide share one
// parameter slot; the slot order is first occurrence scanning E~, then F~ row
// by row, then each G~(k) in gate order.
struct RepTemplate {
  std::vector<std::string> labels;     // gate buttons, index order
  std::vector<Sequence> fiducials;
  Eigen::VectorXi e_slot;              // nf
  Eigen::MatrixXi f_slot;              // nf x nf, (i, j)
  std::vector<Eigen::MatrixXi> g_slot; // per gate, nf x nf
  std::vector<Sequence> slot_sequences;  // canonical button sequence per slot
  int slot_count = 0;

  int nf() const { return static_cast<int>(fiducials.size()); }
  int ng() const { return static_cast<int>(labels.size()); }
  int raw_entry_count() const;  // nf + nf^2 + ng*nf^2
};

RepTemplate minimal_parameterization(std::vector<std::string> labels,
                                     std::vector<Sequence> fiducials);

struct OperationalRep {
  std::shared_ptr<const RepTemplate> tmpl;
  Eigen::VectorXd params;  // slot_count values, each a sequence probability

  Eigen::VectorXd e_tilde() const;
  Eigen::MatrixXd f_tilde() const;
  Eigen::MatrixXd g_tilde(int gate_index) const;
};

// Probes a gate set with the fiducials. Labels are taken from the gate set.
OperationalRep build_operational_rep(const GateSet& gs, const std::vector<Sequence>& fiducials);

struct CompletenessReport {
  bool complete = false;  // rank(F~) >= d^2
  int rank = 0;
  double condition = 0.0;
};

CompletenessReport informational_completeness(const OperationalRep& rep, int d);

// Linear-inversion reconstruction. The frame b has columns F_j|rho>> (d^2 x
// nf); with the exact frame the original gate set returns up to round-off,
// with any other invertible choice a gauge-equivalent one. The identity
// default requires nf == d^2. Throws when F~ is rank-deficient.
GateSet lgst_reconstruct(const OperationalRep& rep, const Eigen::MatrixXd& b);
GateSet lgst_reconstruct(const OperationalRep& rep);

// Sequence probability evaluated from probabilities alone:
//   p(s) = E~^T (F~+ G~(s_m)) ... (F~+ G~(s_1)) F~+ E~.
// clip snaps the result into [0, 1] (round-off and non-positive reps can
// leave it outside).
double oprep_sequence_probability(const OperationalRep& rep, const Sequence& s, bool clip = false);

struct PositivityReport {
  bool positive = true;
  std::vector<Sequence> violations;  // probes outside [-tol, 1+tol]
};

// Checks predicted probabilities for the given probe sequences; tolerance
// 1e-9 on both sides.
PositivityReport operational_positivity(const OperationalRep& rep,
                                        const std::vector<Sequence>& probes);
PositivityReport operational_positivity(const GateSet& gs, const std::vector<Sequence>& probes);

// Flattened evaluation kernel reused across sequence evaluations: caches
// v = F~+ E~ and M_k = F~+ G~(k). Row-major gate blocks keep the inner loop
// allocation-free.
struct RepEvaluator {
  int nf = 0;
  int ng = 0;
  Eigen::VectorXd e;       // E~
  Eigen::VectorXd v;       // F~+ E~
  std::vector<double> m;   // ng blocks of nf*nf, row-major

  double probability(const int* ids, std::size_t len, bool clip) const;
  double probability(const std::vector<int>& ids, bool clip) const {
    return probability(ids.data(), ids.size(), clip);
  }
};

RepEvaluator make_evaluator(const RepTemplate& tmpl, const Eigen::VectorXd& params);

}  // namespace oqt
