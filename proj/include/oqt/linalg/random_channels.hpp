#pragma once

#include "oqt/common/rng.hpp"
#include "oqt/linalg/pauli.hpp"

namespace oqt {

// X X' / Tr(X X') with X a d x d complex Ginibre matrix, or d x (d+1) real
// when real_only is set (the real flavour has zero Y component on a qubit).
Eigen::MatrixXcd sample_ginibre_density(int d, bool real_only, Rng& rng);

SuperKet sample_ginibre_superket(bool real_only, Rng& rng);

// Full-rank random CPTP channel: Choi from a d^2 x d^2 complex Ginibre factor,
// normalized on the input marginal. Qubit only (transfer-matrix form).
SuperOperator sample_bcsz(int d, Rng& rng);

// Invertible transfer matrix usable as a basis change: identity mixed with a
// bounded random perturbation, rejected until cond < max_cond.
SuperOperator sample_gauge(Rng& rng, double max_cond = 1e6);

}  // namespace oqt
