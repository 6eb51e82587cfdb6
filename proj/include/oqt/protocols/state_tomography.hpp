#pragma once

#include "oqt/protocols/design.hpp"

namespace oqt {

// Planar-state (rebit) tomography with two quarter-turn buttons. Fiducials
// {(), (Rx), (Ry), (Rx,Rx)}; the rotation senses are chosen so that under
// perfect gates the first fiducial row reads the Bloch coordinates directly:
//   a_z = 2*F~(0,0) - 1,  a_y = 2*F~(0,1) - 1,  a_x = 2*F~(0,2) - 1.

std::vector<Sequence> rebit_fiducials();

SuperOperator rebit_rx(double overshoot = 0.0);  // x quarter turn
SuperOperator rebit_ry(double overshoot = 0.0);  // y quarter turn, opposite sense

// Truth/prior: Ginibre rebit state, overrotated quarter turns, ideal readout;
// every button additionally depolarized by U(0, depol_hi) (dark-count mix on
// the readout).
PriorSpec rebit_prior(double pulse_stddev, double depol_hi);

// Training: count_train random fiducial products whose factor counts cycle
// through [train_lo, train_hi]; testing likewise over [test_lo, test_hi].
ExperimentDesign rebit_design(int count_train, int train_lo, int train_hi, int count_test,
                              int test_lo, int test_hi, long shots, Rng& rng);

// Reads the plane coordinates (a_x, a_y, a_z) off an operational
// representation's first fiducial row. With imperfect gates this "naive" read
// can leave the physical disk.
Eigen::Vector3d pseudo_bloch(const OperationalRep& rep);
Eigen::Vector3d pseudo_bloch_from_params(const RepTemplate& tmpl, const Eigen::VectorXd& params);

// Same read from measured frequencies of the sequences (), (Rx), (Ry).
Eigen::Vector3d pseudo_bloch_from_frequencies(double p_empty, double p_rx, double p_ry);

}  // namespace oqt
