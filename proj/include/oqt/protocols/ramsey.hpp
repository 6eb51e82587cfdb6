#pragma once

#include "oqt/protocols/design.hpp"

namespace oqt {

// Precession experiment: a pi/2 pulse, n free-evolution steps, a closing
// pi/2 pulse. Buttons are "Rx" (the pulse) and "dt" (one evolution step of
// duration dt, a z rotation by omega*dt).

struct RamseyParams {
  double omega = 0.5;        // precession angular frequency
  double epsilon = 0.0;      // pulse overshoot: Rx rotates by pi/2 + epsilon
  double dt = 1.0;           // step duration
  double rho_depol = 0.0;    // preparation depolarization
  double effect_depol = 0.0; // readout dark-count fraction
};

GateSet ramsey_gate_set(const RamseyParams& p);

std::vector<Sequence> ramsey_fiducials();

// Training fringe at n = n_lo..n_hi (one entry per n), testing likewise.
ExperimentDesign ramsey_design(int train_lo, int train_hi, int test_lo, int test_hi,
                               long train_shots, long test_shots);

// Prior over the same button set: omega ~ U(omega_lo, omega_hi) enters the
// "dt" button, epsilon ~ N(0, pulse_stddev) the pulse, plus SPAM
// depolarization ranges.
PriorSpec ramsey_prior(double omega_lo, double omega_hi, double pulse_stddev, double spam_depol_hi,
                       double dt = 1.0);

struct FringeFit {
  double omega = 0;
  double phase = 0;      // fringe offset at n = 0
  double residual = 0;   // rms misfit
  bool converged = false;
};

// Fits p(n) = (1 + cos(omega*n*dt + phase))/2 by a coarse frequency scan plus
// Gauss-Newton refinement. Data that carry no fringe (flat within noise) are
// flagged as non-converged.
FringeFit fit_ramsey_frequency(const std::vector<std::pair<double, double>>& points, double dt);

}  // namespace oqt
