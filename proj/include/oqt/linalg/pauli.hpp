#pragma once

#include <Eigen/Dense>
#include <array>

namespace oqt {

// Everything below works in the normalized Pauli basis {I, X, Y, Z}/sqrt(2),
// in that fixed order. A state superket stores coeffs[a] = Tr(P_a rho)/sqrt(2)
// so unit-trace operators always have first entry 1/sqrt(2); effects transpose
// the same coefficients into a row. Transfer matrices of Hermiticity-
// preserving maps are real in this basis.

struct SuperKet {
  Eigen::VectorXd c;
  int dim() const;  // Hilbert dimension d with c.size() == d*d
};

struct SuperBra {
  Eigen::VectorXd c;
  int dim() const;
};

struct SuperOperator {
  Eigen::MatrixXd m;
  int dim() const;
};

inline constexpr double kSingularTol = 1e-10;  // relative SVD cutoff everywhere

const std::array<Eigen::Matrix2cd, 4>& pauli_matrices();

// Columns are vec(P_a)/sqrt(2) (column stacking); unitary by construction.
const Eigen::Matrix4cd& pauli_vec_basis();

SuperKet to_superket(const Eigen::Matrix2cd& rho);
Eigen::Matrix2cd to_density(const SuperKet& k);
SuperBra to_superbra(const Eigen::Matrix2cd& effect);
Eigen::Matrix2cd to_effect(const SuperBra& b);

// a_i = sqrt(2) * c_{i+1} for a unit-trace superket.
Eigen::Vector3d bloch_vector(const SuperKet& k);
SuperKet superket_from_bloch(const Eigen::Vector3d& a);

// Change of basis from a column-stacking superoperator; imaginary residue
// beyond 1e-9 means the map was not Hermiticity-preserving and throws.
SuperOperator ptm_from_vec_superop(const Eigen::Matrix4cd& s);
Eigen::Matrix4cd vec_superop_from_ptm(const SuperOperator& r);

bool is_unitary(const Eigen::Matrix2cd& u, double tol = 1e-10);

// Conjugation channel rho -> U rho U'; throws unless U'U = I to 1e-10.
SuperOperator unitary_superop(const Eigen::Matrix2cd& u);

// Choi matrix J = sum_{ij} |i><j| (x) Lambda(|i><j|), and its inverse.
Eigen::Matrix4cd choi_from_ptm(const SuperOperator& r);
SuperOperator ptm_from_choi(const Eigen::Matrix4cd& j);

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b);

}  // namespace oqt
