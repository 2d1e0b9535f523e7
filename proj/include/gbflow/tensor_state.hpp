#pragma once

#include <array>
#include <stdexcept>

#include <Eigen/Dense>

#include "gbflow/eos.hpp"

namespace gbflow {

using Vec3 = Eigen::Vector3d;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Vec14 = Eigen::Matrix<double, 14, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat14 = Eigen::Matrix<double, 14, 14>;

template <class T>
using Vec14T = Eigen::Matrix<T, 14, 1>;

/// Layout of the 14-component main-field vector
/// [psi~, u~ (3), theta~, s1..s5 (packed Sigma~), sigma~, q~ (3)].
namespace idx {
inline constexpr int psi = 0;
inline constexpr int u = 1;      // 1..3
inline constexpr int theta = 4;
inline constexpr int sig = 5;    // 5..9
inline constexpr int bulk = 10;
inline constexpr int q = 11;     // 11..13
inline constexpr int n_diss = 9; // sig..q span, the source-affected block
}  // namespace idx

/// Orthonormal (Frobenius) basis of symmetric trace-free 3x3 matrices.
inline const std::array<Mat3, 5>& dev_basis() {
  static const std::array<Mat3, 5> basis = [] {
    std::array<Mat3, 5> b;
    const double s6 = std::sqrt(6.0), s2 = std::sqrt(2.0);
    b[0] = Vec3(2, -1, -1).asDiagonal();
    b[0] /= s6;
    b[1] = Vec3(0, 1, -1).asDiagonal();
    b[1] /= s2;
    b[2].setZero();
    b[2](0, 1) = b[2](1, 0) = 1.0 / s2;
    b[3].setZero();
    b[3](0, 2) = b[3](2, 0) = 1.0 / s2;
    b[4].setZero();
    b[4](1, 2) = b[4](2, 1) = 1.0 / s2;
    return b;
  }();
  return basis;
}

/// Coordinates of a symmetric trace-free matrix in the dev_basis. A linear
/// isometry: |T|_F = |pack_dev(T)|_2.
inline Vec5 pack_dev(const Mat3& T) {
  const double scale = std::max(T.norm(), 1e-300);
  if ((T - T.transpose()).norm() > 1e-12 * scale)
    throw std::invalid_argument("pack_dev: matrix not symmetric");
  if (std::abs(T.trace()) > 1e-12 * scale)
    throw std::invalid_argument("pack_dev: matrix not trace-free");
  Vec5 s;
  const auto& B = dev_basis();
  for (int m = 0; m < 5; ++m) s[m] = (T.array() * B[m].array()).sum();
  return s;
}

inline Mat3 unpack_dev(const Vec5& s) {
  Mat3 T = Mat3::Zero();
  const auto& B = dev_basis();
  for (int m = 0; m < 5; ++m) T += s[m] * B[m];
  return T;
}

/// Laboratory-variable state. Sigma holds the packed coordinates of the
/// trace-free part of the viscous stress; the full viscous stress is
/// -(Sigma + sigma * I).
struct PhysicalState {
  double rho{1.0};
  Vec3 u{Vec3::Zero()};
  double theta{1.0};
  Vec5 Sigma{Vec5::Zero()};
  double sigma{0.0};
  Vec3 q{Vec3::Zero()};
};

/// Relaxation moduli tau = epsilon * tau_bar plus the transport coefficients
/// entering the source.
struct RelaxationParams {
  double tau0_bar{1.0};
  double tau1_bar{1.0};
  double tau2_bar{1.0};
  double epsilon{1.0};
  double eta{1.0};   ///< shear viscosity
  double zeta{1.0};  ///< bulk coefficient (source term -sigma / (3 zeta))
  double chi{1.0};   ///< heat conductivity

  double tau0() const { return epsilon * tau0_bar; }
  double tau1() const { return epsilon * tau1_bar; }
  double tau2() const { return epsilon * tau2_bar; }

  void validate() const {
    if (!(tau0_bar > 0.0 && tau1_bar > 0.0 && tau2_bar > 0.0 && eta > 0.0 &&
          zeta > 0.0 && chi > 0.0 && epsilon >= 0.0))
      throw std::domain_error("RelaxationParams: positivity violated");
  }
};

/// Temperature from the main-field component theta~ = -1/theta.
template <class T>
T theta_of(const Vec14T<T>& Y) {
  if (!(value_of(Y[idx::theta]) < 0.0))
    throw std::domain_error("godunov state: theta~ must be negative");
  return -1.0 / Y[idx::theta];
}

/// The EOS argument psi = psi~ + theta u~^2 / 2 + tau1 S~:S~ / 2
/// + tau2 sigma~^2 / 2 + tau0 q~^2 / 2.
template <class T>
T extended_potential(const Vec14T<T>& Y, const RelaxationParams& rp) {
  const T theta = theta_of(Y);
  T usq(0.0), ssq(0.0), qsq(0.0);
  for (int a = 0; a < 3; ++a) usq += Y[idx::u + a] * Y[idx::u + a];
  for (int m = 0; m < 5; ++m) ssq += Y[idx::sig + m] * Y[idx::sig + m];
  for (int a = 0; a < 3; ++a) qsq += Y[idx::q + a] * Y[idx::q + a];
  const T sb = Y[idx::bulk];
  return Y[idx::psi] + 0.5 * theta * usq + 0.5 * rp.tau1() * ssq +
         0.5 * rp.tau2() * sb * sb + 0.5 * rp.tau0() * qsq;
}

inline Vec14 to_godunov(const PhysicalState& p, const IdealGasEos& eos,
                        const RelaxationParams& rp) {
  if (!(p.rho > 0.0) || !(p.theta > 0.0))
    throw std::domain_error("to_godunov: require rho > 0, theta > 0");
  const double th = p.theta;
  Vec14 Y;
  Y[idx::theta] = -1.0 / th;
  Y.segment<3>(idx::u) = p.u / th;
  Y.segment<5>(idx::sig) = p.Sigma / th;
  Y[idx::bulk] = p.sigma / th;
  Y.segment<3>(idx::q) = p.q / (th * th);
  const double psi = psi_from_rho_theta(eos, p.rho, th);
  Y[idx::psi] = psi - 0.5 * th * Y.segment<3>(idx::u).squaredNorm() -
                0.5 * rp.tau1() * Y.segment<5>(idx::sig).squaredNorm() -
                0.5 * rp.tau2() * Y[idx::bulk] * Y[idx::bulk] -
                0.5 * rp.tau0() * Y.segment<3>(idx::q).squaredNorm();
  return Y;
}

inline PhysicalState from_godunov(const Vec14& Y, const IdealGasEos& eos,
                                  const RelaxationParams& rp) {
  const double th = theta_of(Y);
  const double psi = extended_potential(Y, rp);
  PhysicalState p;
  p.theta = th;
  p.u = th * Y.segment<3>(idx::u);
  p.Sigma = th * Y.segment<5>(idx::sig);
  p.sigma = th * Y[idx::bulk];
  p.q = th * th * Y.segment<3>(idx::q);
  p.rho = density_energy(eos, th, psi).rho;
  return p;
}

/// Main-field vector of the homogeneous equilibrium with the given density
/// and temperature (u = Sigma = sigma = q = 0).
inline Vec14 equilibrium_godunov(double rho, double theta, const IdealGasEos& eos) {
  Vec14 Y = Vec14::Zero();
  Y[idx::theta] = -1.0 / theta;
  Y[idx::psi] = psi_from_rho_theta(eos, rho, theta);
  return Y;
}

}  // namespace gbflow
