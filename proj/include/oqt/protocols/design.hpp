#pragma once

#include "oqt/smc/inference.hpp"

namespace oqt {

struct DesignEntry {
  Sequence sequence;
  long shots = 1;
};

// A named experiment plan: training sequences feed inference, testing
// sequences are held out for scoring. Fiducials define the operational
// parameterization used by both.
struct ExperimentDesign {
  std::vector<std::string> labels;
  std::vector<Sequence> fiducials;
  std::vector<DesignEntry> training;
  std::vector<DesignEntry> testing;
};

// Draws binomial outcomes for each design entry from the gate set's sequence
// probabilities (clipped into [0, 1] before sampling).
std::vector<Datum> simulate_design(const GateSet& truth, const std::vector<DesignEntry>& entries,
                                   Rng& rng);

// |p_predicted - p_observed| for one sequence, and the sum over a testing
// block using posterior-mean predictions against observed frequencies.
double tvd(double p_predicted, double p_observed);
double tvd_total(const ParticleCloud& cloud, const std::vector<DesignEntry>& testing,
                 const std::vector<Datum>& data);

}  // namespace oqt
