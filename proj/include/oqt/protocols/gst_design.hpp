#pragma once

#include "oqt/protocols/design.hpp"

namespace oqt {

// Long-sequence tomography design: germ powers sandwiched between fiducial
// pairs, (f_i, g^L, f_j), with L = floor(2^m / |g|) for m = 1..m_max. The
// training block keeps unique sequences only and excludes everything in the
// testing block; testing holds the pure gate powers n = 1, 2, 4, ..., 2^m_max
// for each power germ.
ExperimentDesign germ_design(const std::vector<std::string>& labels,
                             const std::vector<Sequence>& fiducials,
                             const std::vector<Sequence>& germs,
                             const std::vector<std::string>& power_germs, int m_max,
                             long train_shots, long test_shots);

// Three-button reference configuration: idle, x and y quarter-turns, the
// standard four fiducials, and a ten-germ amplification set.
struct ThreeButtonConfig {
  std::vector<std::string> labels;       // Gi, Gx, Gy
  std::vector<Sequence> fiducials;
  std::vector<Sequence> germs;
  std::vector<std::string> power_germs;  // Gx, Gy, Gi
};

const ThreeButtonConfig& three_button_config();

ExperimentDesign three_button_design(int m_max, long train_shots, long test_shots);

// Truth/prior for the three-button study: ideal buttons convex-mixed with
// random junk (Ginibre states for SPAM, BCSZ channels for gates).
PriorSpec three_button_prior(double gate_eps, double spam_eps);

}  // namespace oqt
