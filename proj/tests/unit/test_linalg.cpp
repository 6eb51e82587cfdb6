#include <doctest.h>

#include <cmath>
#include <complex>

#include "oqt/common/rng.hpp"
#include "oqt/linalg/gates.hpp"
#include "oqt/linalg/pauli.hpp"
#include "oqt/linalg/random_channels.hpp"
#include "oqt/linalg/solve.hpp"

using namespace oqt;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

Eigen::Matrix2cd random_density(Rng& rng) {
  Eigen::Matrix2cd x;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) x(i, j) = std::complex<double>(rng.normal(0, 1), rng.normal(0, 1));
  Eigen::Matrix2cd rho = x * x.adjoint();
  rho /= rho.trace().real();
  return rho;
}

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("pauli basis is orthonormal after the 1/sqrt(2) scaling") {
  const auto& p = pauli_matrices();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const double overlap = ((p[a].adjoint() * p[b]).trace() / 2.0).real();
      CHECK(overlap == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-14));
    }
  const Eigen::Matrix4cd v = pauli_vec_basis();
  CHECK((v.adjoint() * v - Eigen::Matrix4cd::Identity()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("superket coefficients of reference states") {
  Eigen::Matrix2cd ground;
  ground << 1, 0, 0, 0;
  const SuperKet g = to_superket(ground);
  CHECK(g.c(0) == doctest::Approx(kInvSqrt2).epsilon(1e-15));
  CHECK(g.c(1) == doctest::Approx(0.0));
  CHECK(g.c(2) == doctest::Approx(0.0));
  CHECK(g.c(3) == doctest::Approx(kInvSqrt2).epsilon(1e-15));

  const SuperKet mixed = to_superket(Eigen::Matrix2cd::Identity() * 0.5);
  CHECK(mixed.c(0) == doctest::Approx(kInvSqrt2).epsilon(1e-15));
  CHECK(mixed.c.tail(3).cwiseAbs().maxCoeff() < 1e-15);

  Eigen::Matrix2cd plus;
  plus << 0.5, 0.5, 0.5, 0.5;
  const SuperKet pk = to_superket(plus);
  CHECK(pk.c(1) == doctest::Approx(kInvSqrt2).epsilon(1e-15));
  CHECK(pk.c(2) == doctest::Approx(0.0));
  CHECK(pk.c(3) == doctest::Approx(0.0));
}

TEST_CASE("density round trip and pairing reproduce Tr(E rho)") {
  Rng rng(11);
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::Matrix2cd rho = random_density(rng);
    const SuperKet k = to_superket(rho);
    CHECK((to_density(k) - rho).cwiseAbs().maxCoeff() < 1e-12);

    const Eigen::Matrix2cd effect = random_density(rng);  // eigenvalues in [0, 1]
    const SuperBra b = to_superbra(effect);
    const double paired = b.c.dot(k.c);
    const double direct = (effect * rho).trace().real();
    CHECK(paired == doctest::Approx(direct).epsilon(1e-12));
  }
  Eigen::Matrix2cd skew;
  skew << 0, 1, 0, 0;
  CHECK_THROWS_AS(to_superket(skew), std::invalid_argument);
}

TEST_CASE("bloch coordinates round trip") {
  const Eigen::Vector3d a(0.3, -0.5, 0.7);
  CHECK((bloch_vector(superket_from_bloch(a)) - a).norm() < 1e-14);
  SuperKet traceless;
  traceless.c = Eigen::Vector4d(0, 1, 0, 0);
  CHECK_THROWS_AS(bloch_vector(traceless), std::invalid_argument);
}

TEST_CASE("unitary conjugation as a transfer matrix") {
  SUBCASE("identity maps to the identity matrix") {
    const SuperOperator u = unitary_superop(Eigen::Matrix2cd::Identity());
    CHECK(max_abs(u.m - Eigen::Matrix4d::Identity()) < 1e-14);
  }
  SUBCASE("quarter turn about z permutes the equatorial axes") {
    const SuperOperator r = rotation_ptm(Axis::z, M_PI / 2);
    Eigen::Matrix4d expect;
    expect << 1, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 1;
    CHECK(max_abs(r.m - expect) < 1e-15);
  }
  SUBCASE("hadamard unitary reproduces the exact generator table") {
    CHECK(max_abs(unitary_superop(hadamard_unitary()).m - hadamard_ptm().m) < 1e-14);
    CHECK(max_abs(unitary_superop(phase_unitary()).m - phase_ptm().m) < 1e-14);
  }
  SUBCASE("action matches U rho U' on random states") {
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::Matrix2cd u = rotation_unitary(Axis::y, rng.uniform(0, 2 * M_PI)) *
                                 rotation_unitary(Axis::z, rng.uniform(0, 2 * M_PI));
      const Eigen::Matrix2cd rho = random_density(rng);
      SuperKet out;
      out.c = unitary_superop(u).m * to_superket(rho).c;
      CHECK((to_density(out) - u * rho * u.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SUBCASE("composition is a homomorphism") {
    Rng rng(6);
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::Matrix2cd u = rotation_unitary(Axis::x, rng.uniform(0, 2 * M_PI));
      const Eigen::Matrix2cd v = rotation_unitary(Axis::y, rng.uniform(0, 2 * M_PI));
      CHECK(max_abs(unitary_superop(u * v).m - unitary_superop(u).m * unitary_superop(v).m) <
            1e-10);
    }
  }
  SUBCASE("non-unitary input is rejected") {
    Eigen::Matrix2cd bad = Eigen::Matrix2cd::Identity() * 1.5;
    CHECK_THROWS_AS(unitary_superop(bad), std::invalid_argument);
  }
}

TEST_CASE("rotation transfer matrices follow the right-hand rule") {
  const SuperKet up = superket_from_bloch(Eigen::Vector3d(0, 0, 1));
  SuperKet out;
  out.c = rotation_ptm(Axis::x, M_PI / 2).m * up.c;
  CHECK((bloch_vector(out) - Eigen::Vector3d(0, -1, 0)).norm() < 1e-14);
  out.c = rotation_ptm(Axis::y, M_PI / 2).m * up.c;
  CHECK((bloch_vector(out) - Eigen::Vector3d(1, 0, 0)).norm() < 1e-14);
  out.c = rotation_ptm(Axis::x, M_PI).m * up.c;
  CHECK((bloch_vector(out) - Eigen::Vector3d(0, 0, -1)).norm() < 1e-14);
}

TEST_CASE("overrotated hadamard pulse") {
  SUBCASE("zero overshoot gives the exact hadamard") {
    CHECK(max_abs(overrotated_hadamard(0.0).m - hadamard_ptm().m) < 1e-15);
  }
  SUBCASE("pi/2 overshoot closes a full turn") {
    CHECK(max_abs(overrotated_hadamard(M_PI / 2).m - Eigen::Matrix4d::Identity()) < 1e-15);
  }
  SUBCASE("matches conjugation by the axis-angle unitary") {
    const double d = 0.01;
    const std::complex<double> i(0, 1);
    Eigen::Matrix2cd h;
    h << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
    const Eigen::Matrix2cd u =
        std::cos(M_PI / 2 + d) * Eigen::Matrix2cd::Identity() - i * std::sin(M_PI / 2 + d) * h;
    CHECK(max_abs(overrotated_hadamard(d).m - unitary_superop(u).m) < 1e-12);
  }
  SUBCASE("opposite overshoots cancel") {
    const double d = 0.137;
    CHECK(max_abs((overrotated_hadamard(d).m * overrotated_hadamard(-d).m) -
                  Eigen::Matrix4d::Identity()) < 1e-10);
  }
}

TEST_CASE("depolarization scales only the traceless block") {
  const SuperKet up = superket_from_bloch(Eigen::Vector3d(0, 0, 1));
  SUBCASE("p = 0 is the identity") {
    CHECK((depolarize(up, 0.0).c - up.c).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("p = 1 erases the bloch vector") {
    const SuperKet k = depolarize(up, 1.0);
    CHECK(k.c(0) == doctest::Approx(kInvSqrt2));
    CHECK(k.c.tail(3).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("p = 0.1 shrinks z to 0.9") {
    const SuperKet k = depolarize(up, 0.1);
    CHECK(k.c(3) == doctest::Approx(0.9 * kInvSqrt2).epsilon(1e-15));
  }
  SUBCASE("gate form keeps the trace row intact") {
    Rng rng(3);
    const SuperOperator g = sample_bcsz(2, rng);
    const SuperOperator d = depolarize(g, 0.25);
    CHECK(max_abs(d.m.row(0) - g.m.row(0)) == 0.0);
    CHECK(max_abs(d.m.bottomRows(3) - 0.75 * g.m.bottomRows(3)) < 1e-15);
    const Eigen::Vector4d eig =
        Eigen::EigenSolver<Eigen::Matrix4d>(depolarize(identity_ptm(), 0.1).m)
            .eigenvalues()
            .real();
    CHECK(eig.maxCoeff() == doctest::Approx(1.0));
    CHECK(eig.minCoeff() == doctest::Approx(0.9));
  }
  SUBCASE("p outside [0, 1] is rejected") {
    CHECK_THROWS_AS(depolarize(up, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(depolarize(up, 1.1), std::invalid_argument);
  }
}

TEST_CASE("dark counts mix the effect toward the unit observable") {
  Eigen::Matrix2cd ground;
  ground << 1, 0, 0, 0;
  const SuperBra e = to_superbra(ground);
  const SuperBra mixed = dark_count_effect(e, 0.3);
  const Eigen::Matrix2cd expect =
      0.7 * ground + 0.3 * Eigen::Matrix2cd::Identity();
  CHECK((to_effect(mixed) - expect).cwiseAbs().maxCoeff() < 1e-12);
  // unlike depolarization this raises the empty-sequence probability
  const SuperKet up = superket_from_bloch(Eigen::Vector3d(0, 0, 1));
  CHECK(mixed.c.dot(up.c) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("convex mixing is elementwise and endpoint-exact") {
  Rng rng(9);
  const SuperOperator a = sample_bcsz(2, rng);
  const SuperOperator b = sample_bcsz(2, rng);
  CHECK(max_abs(convex_mix(a, b, 0.0).m - a.m) == 0.0);
  CHECK(max_abs(convex_mix(a, b, 1.0).m - b.m) == 0.0);
  const SuperOperator mid = convex_mix(a, b, 0.25);
  CHECK(max_abs(mid.m - (0.75 * a.m + 0.25 * b.m)) < 1e-15);
  // trace preservation survives mixing: both rows are (1, 0, 0, 0)
  Eigen::RowVector4d tp(1, 0, 0, 0);
  CHECK(max_abs(mid.m.row(0) - tp) < 1e-12);
  CHECK_THROWS_AS(convex_mix(a, b, 1.5), std::invalid_argument);
}

TEST_CASE("ginibre states are valid density matrices") {
  Rng rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::MatrixXcd rho = sample_ginibre_density(2, false, rng);
    CHECK(std::abs(rho.trace().real() - 1.0) < 1e-12);
    CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho);
    CHECK(es.eigenvalues().minCoeff() > -1e-12);
  }
  SUBCASE("real flavour has no y component") {
    for (int trial = 0; trial < 50; ++trial) {
      const SuperKet k = sample_ginibre_superket(true, rng);
      CHECK(std::abs(k.c(2)) < 1e-14);
      CHECK(bloch_vector(k).norm() <= 1.0 + 1e-12);
    }
  }
  SUBCASE("ensemble mean sits at the maximally mixed state") {
    Eigen::Vector3d acc = Eigen::Vector3d::Zero();
    const int n = 100000;
    for (int trial = 0; trial < n; ++trial) acc += bloch_vector(sample_ginibre_superket(false, rng));
    CHECK((acc / n).norm() < 0.02);
  }
}

TEST_CASE("random full-rank channels are trace preserving and completely positive") {
  Rng rng(22);
  for (int trial = 0; trial < 25; ++trial) {
    const SuperOperator g = sample_bcsz(2, rng);
    Eigen::RowVector4d tp(1, 0, 0, 0);
    CHECK(max_abs(g.m.row(0) - tp) < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(choi_from_ptm(g));
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
  }
  SUBCASE("composition stays trace preserving and maps states to states") {
    const SuperOperator a = sample_bcsz(2, rng);
    const SuperOperator b = sample_bcsz(2, rng);
    SuperOperator ab;
    ab.m = a.m * b.m;
    Eigen::RowVector4d tp(1, 0, 0, 0);
    CHECK(max_abs(ab.m.row(0) - tp) < 1e-12);
    SuperKet out;
    out.c = ab.m * sample_ginibre_superket(false, rng).c;
    const Eigen::Matrix2cd rho = to_density(out);
    CHECK(std::abs(rho.trace().real() - 1.0) < 1e-9);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho);
    CHECK(es.eigenvalues().minCoeff() > -1e-9);
  }
}

TEST_CASE("sampled basis changes are well conditioned") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const SuperOperator b = sample_gauge(rng);
    CHECK(condition_number(b.m) < 1e6);
  }
  const SuperOperator tight = sample_gauge(rng, 50.0);
  CHECK(condition_number(tight.m) < 50.0);
}

TEST_CASE("pseudoinverse and rank respect the relative cutoff") {
  Eigen::MatrixXd d = Eigen::Vector2d(2.0, 1e-15).asDiagonal();
  const Eigen::MatrixXd dp = pinv(d);
  CHECK(dp(0, 0) == doctest::Approx(0.5));
  CHECK(dp(1, 1) == 0.0);
  CHECK(numerical_rank(d) == 1);

  Rng rng(31);
  Eigen::Vector4d u, v;
  for (int i = 0; i < 4; ++i) {
    u(i) = rng.normal(0, 1);
    v(i) = rng.normal(0, 1);
  }
  const Eigen::Matrix4d low = u * u.transpose() + v * v.transpose();
  CHECK(numerical_rank(low) == 2);
  const Eigen::MatrixXd lp = pinv(low);
  CHECK(max_abs(low * lp * low - low) < 1e-10);
  CHECK(max_abs(lp * low * lp - lp) < 1e-10);

  CHECK(condition_number(Eigen::Matrix4d::Identity()) == doctest::Approx(1.0));
  // rank-2 Gram matrix: SVD returns tiny but positive trailing values, so the
  // reported condition number is finite and huge
  CHECK(condition_number(low) > 1e12);
  const Eigen::Matrix4d exact_singular = Eigen::Vector4d(1, 1, 1, 0).asDiagonal();
  CHECK(std::isinf(condition_number(exact_singular)));
}

TEST_CASE("choi matrix of the identity channel and round trips") {
  const Eigen::Matrix4cd j = choi_from_ptm(identity_ptm());
  Eigen::Matrix4cd expect = Eigen::Matrix4cd::Zero();
  expect(0, 0) = expect(0, 3) = expect(3, 0) = expect(3, 3) = 1.0;
  CHECK((j - expect).cwiseAbs().maxCoeff() < 1e-14);

  Rng rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    const SuperOperator g = sample_bcsz(2, rng);
    CHECK(max_abs(ptm_from_choi(choi_from_ptm(g)).m - g.m) < 1e-12);
  }
}
