#include <doctest.h>

#include <random>

#include "gbflow/tensor_state.hpp"

using namespace gbflow;

namespace {

const IdealGasEos kEos{1.4, 1.0, 1.0};

Mat3 random_dev(std::mt19937& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Mat3 A;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) A(i, j) = d(rng);
  const Mat3 S = 0.5 * (A + A.transpose());
  return S - (S.trace() / 3.0) * Mat3::Identity();
}

PhysicalState random_state(std::mt19937& rng) {
  std::uniform_real_distribution<double> rt(0.1, 10.0), small(-1.0, 1.0);
  PhysicalState p;
  p.rho = rt(rng);
  p.theta = rt(rng);
  for (int a = 0; a < 3; ++a) p.u[a] = small(rng);
  for (int m = 0; m < 5; ++m) p.Sigma[m] = small(rng);
  p.sigma = small(rng);
  for (int a = 0; a < 3; ++a) p.q[a] = small(rng);
  return p;
}

}  // namespace

TEST_CASE("dev basis is orthonormal under the Frobenius inner product") {
  const auto& B = dev_basis();
  for (int m = 0; m < 5; ++m) {
    CHECK(B[m].trace() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK((B[m] - B[m].transpose()).norm() == 0.0);
    for (int k = 0; k < 5; ++k) {
      const double dot = (B[m].array() * B[k].array()).sum();
      CHECK(dot == doctest::Approx(m == k ? 1.0 : 0.0).scale(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("pack_dev examples") {
  CHECK(pack_dev(Mat3::Zero()).norm() == 0.0);
  Mat3 B1 = Vec3(2, -1, -1).asDiagonal();
  B1 /= std::sqrt(6.0);
  const Vec5 s = pack_dev(B1);
  CHECK(s[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.tail<4>().norm() == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));

  Mat3 bad = Mat3::Identity();
  CHECK_THROWS_AS(pack_dev(bad), std::invalid_argument);
  Mat3 nonsym = Mat3::Zero();
  nonsym(0, 1) = 1.0;
  CHECK_THROWS_AS(pack_dev(nonsym), std::invalid_argument);
}

TEST_CASE("pack/unpack is a linear isometry") {
  std::mt19937 rng(11);
  for (int k = 0; k < 200; ++k) {
    const Mat3 T = random_dev(rng);
    const Vec5 s = pack_dev(T);
    CHECK((unpack_dev(s) - T).norm() <= 1e-14 * std::max(1.0, T.norm()));
    CHECK(s.norm() == doctest::Approx(T.norm()).epsilon(1e-13));
    // Frobenius product preserved: Sigma:Sigma = sum s_m^2
    CHECK((T.array() * T.array()).sum() == doctest::Approx(s.squaredNorm()).epsilon(1e-13));
  }
}

TEST_CASE("equilibrium normalization maps to the zero vector") {
  PhysicalState p;  // rho = theta = 1, everything else zero
  const Vec14 Y = to_godunov(p, kEos, RelaxationParams{});
  Vec14 expected = Vec14::Zero();
  expected[idx::theta] = -1.0;
  CHECK((Y - expected).norm() <= 1e-14);
}

TEST_CASE("to_godunov formula spot checks") {
  RelaxationParams rp;
  PhysicalState p;
  p.u = Vec3(0.2, 0.0, 0.0);
  const Vec14 Y = to_godunov(p, kEos, rp);
  CHECK(Y[idx::u] == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(Y[idx::psi] == doctest::Approx(-0.02).epsilon(1e-13));

  PhysicalState p2;
  p2.sigma = 0.3;
  const Vec14 Y2 = to_godunov(p2, kEos, rp);
  CHECK(Y2[idx::bulk] == doctest::Approx(0.3).epsilon(1e-14));
  const PhysicalState back = from_godunov(Y2, kEos, rp);
  CHECK(back.sigma == doctest::Approx(0.3).epsilon(1e-12));

  CHECK_THROWS_AS(to_godunov(PhysicalState{-1.0}, kEos, rp), std::domain_error);
}

TEST_CASE("from_godunov recovers temperature from theta~") {
  RelaxationParams rp;
  Vec14 Y = Vec14::Zero();
  Y[idx::theta] = -0.5;
  Y[idx::psi] = psi_from_rho_theta(kEos, 1.0, 2.0);
  const PhysicalState p = from_godunov(Y, kEos, rp);
  CHECK(p.theta == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(p.rho == doctest::Approx(1.0).epsilon(1e-12));

  Y[idx::theta] = 0.5;
  CHECK_THROWS_AS(from_godunov(Y, kEos, rp), std::domain_error);
}

TEST_CASE("to_godunov and from_godunov are mutually inverse") {
  std::mt19937 rng(23);
  RelaxationParams rp;
  rp.tau0_bar = 0.7;
  rp.tau1_bar = 1.3;
  rp.tau2_bar = 0.4;
  for (int k = 0; k < 1000; ++k) {
    const PhysicalState p = random_state(rng);
    const Vec14 Y = to_godunov(p, kEos, rp);
    const PhysicalState back = from_godunov(Y, kEos, rp);
    CHECK(back.rho == doctest::Approx(p.rho).epsilon(1e-12));
    CHECK(back.theta == doctest::Approx(p.theta).epsilon(1e-12));
    CHECK((back.u - p.u).norm() <= 1e-12 * std::max(1.0, p.u.norm()));
    CHECK((back.Sigma - p.Sigma).norm() <= 1e-12 * std::max(1.0, p.Sigma.norm()));
    CHECK(back.sigma == doctest::Approx(p.sigma).epsilon(1e-12).scale(1.0));
    CHECK((back.q - p.q).norm() <= 1e-12 * std::max(1.0, p.q.norm()));
    // round trip on the extended potential
    CHECK(extended_potential(Y, rp) ==
          doctest::Approx(psi_from_rho_theta(kEos, p.rho, p.theta)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("extended potential equals psi~ plus the quadratic corrections") {
  std::mt19937 rng(5);
  RelaxationParams rp;
  rp.epsilon = 0.37;
  for (int k = 0; k < 100; ++k) {
    const PhysicalState p = random_state(rng);
    const Vec14 Y = to_godunov(p, kEos, rp);
    const double theta = -1.0 / Y[idx::theta];
    const double direct = Y[idx::psi] + 0.5 * theta * Y.segment<3>(idx::u).squaredNorm() +
                          0.5 * rp.tau1() * Y.segment<5>(idx::sig).squaredNorm() +
                          0.5 * rp.tau2() * Y[idx::bulk] * Y[idx::bulk] +
                          0.5 * rp.tau0() * Y.segment<3>(idx::q).squaredNorm();
    CHECK(extended_potential(Y, rp) == doctest::Approx(direct).epsilon(1e-14).scale(1.0));
  }
}

TEST_CASE("relaxation params validate positivity") {
  RelaxationParams rp;
  CHECK_NOTHROW(rp.validate());
  rp.epsilon = 0.0;
  CHECK_NOTHROW(rp.validate());  // epsilon >= 0 allowed at the type level
  rp.eta = 0.0;
  CHECK_THROWS_AS(rp.validate(), std::domain_error);
}
