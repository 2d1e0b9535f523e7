#pragma once

#include <Eigen/Dense>

#include "gbflow/tensor_state.hpp"

namespace gbflow {

/// Generating potentials of the balance-law system: X0 whose gradient is the
/// conserved density vector and X = (X1,X2,X3) whose gradients are the fluxes.
/// All pressure evaluations use the extended potential (including the
/// quadratic tau-terms).

template <class T>
T x0(const Vec14T<T>& Y, const IdealGasEos& eos, const RelaxationParams& rp) {
  const T theta = theta_of(Y);
  return pressure(eos, theta, extended_potential(Y, rp)) / theta;
}

template <class T>
Eigen::Matrix<T, 3, 1> xj(const Vec14T<T>& Y, const IdealGasEos& eos,
                          const RelaxationParams& rp) {
  const T theta = theta_of(Y);
  const T p = pressure(eos, theta, extended_potential(Y, rp));
  const auto& B = dev_basis();
  Eigen::Matrix<T, 3, 1> X;
  for (int j = 0; j < 3; ++j) {
    T sig_u(0.0);  // (Sigma~ u~)_j
    for (int m = 0; m < 5; ++m)
      for (int a = 0; a < 3; ++a) sig_u += Y[idx::sig + m] * B[m](j, a) * Y[idx::u + a];
    X[j] = p * Y[idx::u + j] + theta * sig_u + theta * Y[idx::bulk] * Y[idx::u + j] +
           theta * Y[idx::q + j];
  }
  return X;
}

/// Gradient of X0: the conserved vector
/// [rho, rho u, rho e + rho u^2/2, tau1 rho Sigma/theta, tau2 rho sigma/theta,
///  tau0 rho q/theta^2] in packed coordinates.
template <class T>
Vec14T<T> grad_x0(const Vec14T<T>& Y, const IdealGasEos& eos,
                  const RelaxationParams& rp) {
  const T theta = theta_of(Y);
  const EosPartials<T> d = pressure_partials(eos, theta, extended_potential(Y, rp));
  T usq(0.0);
  for (int a = 0; a < 3; ++a) usq += Y[idx::u + a] * Y[idx::u + a];
  const T rho = d.p_psi / theta;

  Vec14T<T> G;
  G[idx::psi] = rho;
  for (int a = 0; a < 3; ++a) G[idx::u + a] = d.p_psi * Y[idx::u + a];
  G[idx::theta] = theta * d.p_theta + 0.5 * theta * d.p_psi * usq - d.p;
  for (int m = 0; m < 5; ++m) G[idx::sig + m] = rho * rp.tau1() * Y[idx::sig + m];
  G[idx::bulk] = rho * rp.tau2() * Y[idx::bulk];
  for (int a = 0; a < 3; ++a) G[idx::q + a] = rho * rp.tau0() * Y[idx::q + a];
  return G;
}

/// Gradients of X1, X2, X3: column j is the flux vector in direction j.
template <class T>
Eigen::Matrix<T, 14, 3> grad_xj(const Vec14T<T>& Y, const IdealGasEos& eos,
                                const RelaxationParams& rp) {
  const T theta = theta_of(Y);
  const EosPartials<T> d = pressure_partials(eos, theta, extended_potential(Y, rp));
  const auto& B = dev_basis();
  T usq(0.0);
  for (int a = 0; a < 3; ++a) usq += Y[idx::u + a] * Y[idx::u + a];

  Eigen::Matrix<T, 14, 3> F;
  for (int j = 0; j < 3; ++j) {
    const T uj = Y[idx::u + j];
    F(idx::psi, j) = d.p_psi * uj;
    for (int a = 0; a < 3; ++a) {
      T sig_aj(0.0);  // Sigma~_{aj}
      for (int m = 0; m < 5; ++m) sig_aj += Y[idx::sig + m] * B[m](a, j);
      F(idx::u + a, j) = d.p_psi * theta * Y[idx::u + a] * uj + theta * sig_aj;
      if (a == j) F(idx::u + a, j) += d.p + theta * Y[idx::bulk];
    }
    T sig_u(0.0);  // (Sigma~ u~)_j
    for (int m = 0; m < 5; ++m)
      for (int a = 0; a < 3; ++a) sig_u += Y[idx::sig + m] * B[m](j, a) * Y[idx::u + a];
    F(idx::theta, j) = theta * theta *
                       ((d.p_theta + 0.5 * d.p_psi * usq) * uj + sig_u +
                        Y[idx::bulk] * uj + Y[idx::q + j]);
    for (int m = 0; m < 5; ++m) {
      T Bu_j(0.0);
      for (int a = 0; a < 3; ++a) Bu_j += B[m](j, a) * Y[idx::u + a];
      F(idx::sig + m, j) = d.p_psi * rp.tau1() * Y[idx::sig + m] * uj + theta * Bu_j;
    }
    F(idx::bulk, j) = d.p_psi * rp.tau2() * Y[idx::bulk] * uj + theta * uj;
    for (int a = 0; a < 3; ++a) {
      F(idx::q + a, j) = d.p_psi * rp.tau0() * Y[idx::q + a] * uj;
      if (a == j) F(idx::q + a, j) += theta;
    }
  }
  return F;
}

namespace detail {

template <class GradFn>
Mat14 dual_jacobian(const Vec14& Y, GradFn&& grad) {
  Mat14 H;
  Vec14T<Dual> Yd;
  for (int i = 0; i < 14; ++i) Yd[i] = Dual(Y[i], 0.0);
  for (int j = 0; j < 14; ++j) {
    Yd[j].d = 1.0;
    const Vec14T<Dual> col = grad(Yd);
    for (int i = 0; i < 14; ++i) H(i, j) = col[i].d;
    Yd[j].d = 0.0;
  }
  return H;
}

}  // namespace detail

/// Hessian of X0 (the symmetrizer), by forward-mode differentiation of the
/// analytic gradient.
inline Mat14 hess_x0(const Vec14& Y, const IdealGasEos& eos, const RelaxationParams& rp) {
  return detail::dual_jacobian(
      Y, [&](const Vec14T<Dual>& Yd) { return grad_x0(Yd, eos, rp); });
}

/// Hessian of n . X for a unit direction n.
inline Mat14 hess_x_dir(const Vec14& Y, const Vec3& n, const IdealGasEos& eos,
                        const RelaxationParams& rp) {
  return detail::dual_jacobian(Y, [&](const Vec14T<Dual>& Yd) -> Vec14T<Dual> {
    const Eigen::Matrix<Dual, 14, 3> F = grad_xj(Yd, eos, rp);
    Vec14T<Dual> g;
    for (int i = 0; i < 14; ++i)
      g[i] = n[0] * F(i, 0) + n[1] * F(i, 1) + n[2] * F(i, 2);
    return g;
  });
}

/// Relaxation source: zero on the equilibrium block, -Sigma/(2 eta),
/// -sigma/(3 zeta), -q/chi on the dissipative block, written in main-field
/// components (Sigma = theta Sigma~, q = theta^2 q~).
inline Vec14 source(const Vec14& Y, const RelaxationParams& rp) {
  const double theta = theta_of(Y);
  Vec14 I = Vec14::Zero();
  I.segment<5>(idx::sig) = -theta / (2.0 * rp.eta) * Y.segment<5>(idx::sig);
  I[idx::bulk] = -theta / (3.0 * rp.zeta) * Y[idx::bulk];
  I.segment<3>(idx::q) = -theta * theta / rp.chi * Y.segment<3>(idx::q);
  return I;
}

/// Exact Jacobian of the source in main-field variables. At equilibrium it is
/// diagonal; away from it the theta~-column picks up the theta-dependence of
/// the coefficients (d theta / d theta~ = theta^2).
inline Mat14 source_jacobian(const Vec14& Y, const RelaxationParams& rp) {
  const double theta = theta_of(Y);
  Mat14 J = Mat14::Zero();
  for (int m = 0; m < 5; ++m) {
    J(idx::sig + m, idx::sig + m) = -theta / (2.0 * rp.eta);
    J(idx::sig + m, idx::theta) = -theta * theta * Y[idx::sig + m] / (2.0 * rp.eta);
  }
  J(idx::bulk, idx::bulk) = -theta / (3.0 * rp.zeta);
  J(idx::bulk, idx::theta) = -theta * theta * Y[idx::bulk] / (3.0 * rp.zeta);
  for (int a = 0; a < 3; ++a) {
    J(idx::q + a, idx::q + a) = -theta * theta / rp.chi;
    J(idx::q + a, idx::theta) = -2.0 * theta * theta * theta * Y[idx::q + a] / rp.chi;
  }
  return J;
}

/// Entropy production of the source, Y_diss . I(Y) <= 0 with equality iff the
/// dissipative fields vanish.
inline double source_entropy_production(const Vec14& Y, const RelaxationParams& rp) {
  const Vec14 I = source(Y, rp);
  return Y.segment<idx::n_diss>(idx::sig).dot(I.segment<idx::n_diss>(idx::sig));
}

}  // namespace gbflow
