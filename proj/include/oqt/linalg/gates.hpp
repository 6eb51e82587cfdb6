#pragma once

#include "oqt/linalg/pauli.hpp"

namespace oqt {

enum class Axis { x, y, z };

// exp(-i theta sigma/2): right-handed Bloch rotation about the +axis.
Eigen::Matrix2cd rotation_unitary(Axis axis, double theta);
SuperOperator rotation_ptm(Axis axis, double theta);

Eigen::Matrix2cd hadamard_unitary();
Eigen::Matrix2cd phase_unitary();

// Exact integer transfer matrices for the Clifford generators; products of
// these stay exact, which the benchmarking tables rely on.
SuperOperator identity_ptm();
SuperOperator hadamard_ptm();
SuperOperator phase_ptm();

// Conjugation by exp(-i(pi/2 + dtheta) H): a Hadamard pulse overshot by
// dtheta. dtheta = 0 gives the Hadamard transfer matrix, dtheta = pi/2 the
// identity.
SuperOperator overrotated_hadamard(double dtheta);

// Left-multiplication by diag(1, 1-p, 1-p, 1-p); p in [0, 1].
SuperOperator depolarize(const SuperOperator& g, double p);
SuperKet depolarize(const SuperKet& k, double p);

// Readout bias toward the unit effect: E -> (1-p)E + p*I. Keeps the POVM
// valid; unlike depolarize it can push fiducial probabilities up.
SuperBra dark_count_effect(const SuperBra& e, double p);

// (1-eps)*a + eps*b elementwise; eps in [0, 1].
SuperOperator convex_mix(const SuperOperator& a, const SuperOperator& b, double eps);
SuperKet convex_mix(const SuperKet& a, const SuperKet& b, double eps);
SuperBra convex_mix(const SuperBra& a, const SuperBra& b, double eps);

}  // namespace oqt
