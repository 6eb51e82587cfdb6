#include "oqt/linalg/gates.hpp"

#include <cmath>
#include <stdexcept>

namespace oqt {

namespace {

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(std::string(what) + ": p outside [0, 1]");
}

void check_mix(double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("convex_mix: eps outside [0, 1]");
}

}  // namespace

Eigen::Matrix2cd rotation_unitary(Axis axis, double theta) {
  const auto& p = pauli_matrices();
  const Eigen::Matrix2cd& sigma = p[axis == Axis::x ? 1 : axis == Axis::y ? 2 : 3];
  const std::complex<double> i(0.0, 1.0);
  return std::cos(theta / 2) * p[0] - i * std::sin(theta / 2) * sigma;
}

SuperOperator rotation_ptm(Axis axis, double theta) {
  return unitary_superop(rotation_unitary(axis, theta));
}

Eigen::Matrix2cd hadamard_unitary() {
  Eigen::Matrix2cd h;
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return h;
}

Eigen::Matrix2cd phase_unitary() {
  Eigen::Matrix2cd s;
  s << 1, 0, 0, std::complex<double>(0.0, 1.0);
  return s;
}

SuperOperator identity_ptm() {
  SuperOperator g;
  g.m = Eigen::Matrix4d::Identity();
  return g;
}

SuperOperator hadamard_ptm() {
  // X <-> Z, Y -> -Y
  SuperOperator g;
  g.m.setZero(4, 4);
  g.m(0, 0) = 1;
  g.m(1, 3) = 1;
  g.m(2, 2) = -1;
  g.m(3, 1) = 1;
  return g;
}

SuperOperator phase_ptm() {
  // X -> Y, Y -> -X, Z -> Z
  SuperOperator g;
  g.m.setZero(4, 4);
  g.m(0, 0) = 1;
  g.m(2, 1) = 1;
  g.m(1, 2) = -1;
  g.m(3, 3) = 1;
  return g;
}

SuperOperator overrotated_hadamard(double dtheta) {
  const std::complex<double> i(0.0, 1.0);
  const Eigen::Matrix2cd h = hadamard_unitary();
  const Eigen::Matrix2cd u =
      std::cos(dtheta) * h - i * std::sin(dtheta) * Eigen::Matrix2cd::Identity();
  // u = exp(-i(pi/2 + dtheta) H) up to global phase; H is involutive so the
  // series truncates to cos/sin of the angle.
  return unitary_superop(u);
}

SuperOperator depolarize(const SuperOperator& g, double p) {
  check_probability(p, "depolarize");
  SuperOperator out = g;
  out.m.bottomRows(3) *= (1.0 - p);
  return out;
}

SuperKet depolarize(const SuperKet& k, double p) {
  check_probability(p, "depolarize");
  SuperKet out = k;
  out.c.tail(3) *= (1.0 - p);
  return out;
}

SuperBra dark_count_effect(const SuperBra& e, double p) {
  check_probability(p, "dark_count_effect");
  SuperBra unit;
  unit.c = Eigen::Vector4d(std::sqrt(2.0), 0, 0, 0);
  return convex_mix(e, unit, p);
}

SuperOperator convex_mix(const SuperOperator& a, const SuperOperator& b, double eps) {
  check_mix(eps);
  if (a.m.rows() != b.m.rows() || a.m.cols() != b.m.cols())
    throw std::invalid_argument("convex_mix: shape mismatch");
  SuperOperator out;
  out.m = (1.0 - eps) * a.m + eps * b.m;
  return out;
}

SuperKet convex_mix(const SuperKet& a, const SuperKet& b, double eps) {
  check_mix(eps);
  if (a.c.size() != b.c.size()) throw std::invalid_argument("convex_mix: shape mismatch");
  SuperKet out;
  out.c = (1.0 - eps) * a.c + eps * b.c;
  return out;
}

SuperBra convex_mix(const SuperBra& a, const SuperBra& b, double eps) {
  check_mix(eps);
  if (a.c.size() != b.c.size()) throw std::invalid_argument("convex_mix: shape mismatch");
  SuperBra out;
  out.c = (1.0 - eps) * a.c + eps * b.c;
  return out;
}

}  // namespace oqt
