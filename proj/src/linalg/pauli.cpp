#include "oqt/linalg/pauli.hpp"

#include <cmath>
#include <stdexcept>

namespace oqt {

namespace {

int dim_of(Eigen::Index n, const char* what) {
  int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
  if (static_cast<Eigen::Index>(d) * d != n)
    throw std::invalid_argument(std::string(what) + ": length is not a perfect square");
  return d;
}

Eigen::Matrix4cd vec_basis_impl() {
  const auto& p = pauli_matrices();
  Eigen::Matrix4cd v;
  // sqrt(0.5) is the upward-rounded 1/sqrt(2): ideal SPAM overlaps then land
  // one ulp above 1 and clip to exactly 1 instead of falling one ulp short.
  const double inv = std::sqrt(0.5);
  for (int a = 0; a < 4; ++a) {
    // column stacking: (m00, m10, m01, m11)
    v(0, a) = p[a](0, 0) * inv;
    v(1, a) = p[a](1, 0) * inv;
    v(2, a) = p[a](0, 1) * inv;
    v(3, a) = p[a](1, 1) * inv;
  }
  return v;
}

}  // namespace

int SuperKet::dim() const { return dim_of(c.size(), "superket"); }
int SuperBra::dim() const { return dim_of(c.size(), "superbra"); }

int SuperOperator::dim() const {
  if (m.rows() != m.cols()) throw std::invalid_argument("superoperator: not square");
  return dim_of(m.rows(), "superoperator");
}

const std::array<Eigen::Matrix2cd, 4>& pauli_matrices() {
  static const std::array<Eigen::Matrix2cd, 4> p = [] {
    std::array<Eigen::Matrix2cd, 4> q;
    const std::complex<double> i(0.0, 1.0);
    q[0] << 1, 0, 0, 1;
    q[1] << 0, 1, 1, 0;
    q[2] << 0, -i, i, 0;
    q[3] << 1, 0, 0, -1;
    return q;
  }();
  return p;
}

const Eigen::Matrix4cd& pauli_vec_basis() {
  static const Eigen::Matrix4cd v = vec_basis_impl();
  return v;
}

SuperKet to_superket(const Eigen::Matrix2cd& rho) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("to_superket: operator is not Hermitian");
  const auto& p = pauli_matrices();
  SuperKet k;
  k.c.resize(4);
  const double inv = std::sqrt(0.5);
  for (int a = 0; a < 4; ++a) k.c(a) = ((p[a] * rho).trace()).real() * inv;
  return k;
}

Eigen::Matrix2cd to_density(const SuperKet& k) {
  if (k.c.size() != 4) throw std::invalid_argument("to_density: need a qubit superket");
  const auto& p = pauli_matrices();
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  const double inv = std::sqrt(0.5);
  for (int a = 0; a < 4; ++a) rho += k.c(a) * inv * p[a];
  return rho;
}

SuperBra to_superbra(const Eigen::Matrix2cd& effect) {
  SuperBra b;
  b.c = to_superket(effect).c;
  return b;
}

Eigen::Matrix2cd to_effect(const SuperBra& b) {
  SuperKet k;
  k.c = b.c;
  return to_density(k);
}

Eigen::Vector3d bloch_vector(const SuperKet& k) {
  if (k.c.size() != 4) throw std::invalid_argument("bloch_vector: need a qubit superket");
  const double t = k.c(0) * std::sqrt(2.0);
  if (std::abs(t) < 1e-12) throw std::invalid_argument("bloch_vector: traceless operator");
  return Eigen::Vector3d(k.c(1), k.c(2), k.c(3)) * std::sqrt(2.0) / t;
}

SuperKet superket_from_bloch(const Eigen::Vector3d& a) {
  SuperKet k;
  k.c.resize(4);
  const double inv = std::sqrt(0.5);
  k.c << inv, a.x() * inv, a.y() * inv, a.z() * inv;
  return k;
}

SuperOperator ptm_from_vec_superop(const Eigen::Matrix4cd& s) {
  const Eigen::Matrix4cd& v = pauli_vec_basis();
  Eigen::Matrix4cd r = v.adjoint() * s * v;
  if (r.imag().cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("ptm_from_vec_superop: map is not Hermiticity-preserving");
  SuperOperator out;
  out.m = r.real();
  return out;
}

Eigen::Matrix4cd vec_superop_from_ptm(const SuperOperator& r) {
  const Eigen::Matrix4cd& v = pauli_vec_basis();
  return v * r.m.cast<std::complex<double>>() * v.adjoint();
}

bool is_unitary(const Eigen::Matrix2cd& u, double tol) {
  return (u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <= tol;
}

SuperOperator unitary_superop(const Eigen::Matrix2cd& u) {
  if (!is_unitary(u)) throw std::invalid_argument("unitary_superop: matrix is not unitary");
  // vec(U rho U') = (conj(U) (x) U) vec(rho)
  return ptm_from_vec_superop(kron2(u.conjugate(), u));
}

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Eigen::Matrix4cd choi_from_ptm(const SuperOperator& r) {
  if (r.m.rows() != 4) throw std::invalid_argument("choi_from_ptm: need a qubit map");
  const Eigen::Matrix4cd s = vec_superop_from_ptm(r);
  Eigen::Matrix4cd j = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      // vec(|i><k|) has a single 1 at column-stacked index k*2+i
      Eigen::Vector4cd e = Eigen::Vector4cd::Zero();
      e(k * 2 + i) = 1.0;
      const Eigen::Vector4cd lam = s * e;  // vec(Lambda(|i><k|))
      Eigen::Matrix2cd l;
      l << lam(0), lam(2), lam(1), lam(3);
      j.block<2, 2>(2 * i, 2 * k) += l;
    }
  return j;
}

SuperOperator ptm_from_choi(const Eigen::Matrix4cd& j) {
  const auto& p = pauli_matrices();
  SuperOperator r;
  r.m.resize(4, 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const Eigen::Matrix4cd op = kron2(p[b].transpose(), p[a]);
      r.m(a, b) = 0.5 * (j * op).trace().real();
    }
  return r;
}

}  // namespace oqt
