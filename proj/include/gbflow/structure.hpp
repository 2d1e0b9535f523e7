#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "gbflow/potentials.hpp"

namespace gbflow {

/// Structural checks certifying decay to equilibrium: positivity of
/// the symmetrizer, dissipativity of the source, and the coupling (Kawashima)
/// condition that no wave mode of the symmetric pencil lies in the source
/// kernel.

struct SpdResult {
  double min_eig{0.0};
  bool pass{false};
};

struct KawashimaResult {
  double margin{0.0};
  bool pass{false};
};

struct DissipativityResult {
  double max_eig_sym{0.0};
  bool at_equilibrium{false};
  bool pass{true};  ///< verdict only meaningful at equilibrium states
};

struct StructureReport {
  double symmetry_residual{0.0};
  double min_eig_h0{0.0};
  double kawashima_margin{0.0};
  double dissipativity_max{0.0};
  bool symmetry_pass{false};
  bool spd_pass{false};
  bool kawashima_pass{false};
  bool dissipativity_pass{false};
  double spd_tol{1e-12};
  double cluster_tol{1e-8};
  double rank_tol{1e-8};
  double symmetry_tol{1e-12};

  bool all_pass() const {
    return symmetry_pass && spd_pass && kawashima_pass && dissipativity_pass;
  }
};

inline bool is_equilibrium_state(const Vec14& Y, double tol = 1e-12) {
  return Y.segment<idx::n_diss>(idx::sig).norm() <= tol * std::max(1.0, Y.norm());
}

/// Smallest eigenvalue of the symmetrizer D^2 X0; pass iff > tol * ||H||.
inline SpdResult check_spd(const Vec14& Y, const IdealGasEos& eos,
                           const RelaxationParams& rp, double tol = 1e-12) {
  const Mat14 H = hess_x0(Y, eos, rp);
  Eigen::SelfAdjointEigenSolver<Mat14> es(H, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("check_spd: eigensolver failed");
  const double min_eig = es.eigenvalues().minCoeff();
  return {min_eig, min_eig > tol * H.norm()};
}

/// Generalized eigenvalues of the pencil (D^2(n.X), D^2 X0), i.e. the
/// characteristic speeds in direction n. Requires the symmetrizer SPD; solved
/// by Cholesky congruence, so the spectrum is real by construction.
inline Vec14 characteristic_speeds(const Vec14& Y, const Vec3& n,
                                   const IdealGasEos& eos, const RelaxationParams& rp) {
  const Mat14 A = hess_x_dir(Y, n, eos, rp);
  const Mat14 B = hess_x0(Y, eos, rp);
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat14> es(A, B, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("characteristic_speeds: generalized eigensolver failed");
  return es.eigenvalues();
}

/// Coupling condition at an equilibrium state: solve the symmetric-definite
/// pencil, group eigenvalues into clusters (relative gap <= cluster_tol),
/// and for each cluster's B-orthonormal eigenbasis V compute the smallest
/// singular value of the rows belonging to the 9 dissipative coordinates.
/// A positive margin certifies that no eigenvector lies in ker(DI), which at
/// equilibrium is exactly the span of the first five coordinates.
/// With source_enabled = false the kernel is everything and the margin is 0
/// (control case).
inline KawashimaResult kawashima_check(const Vec14& Y_eq, const Vec3& n,
                                       const IdealGasEos& eos,
                                       const RelaxationParams& rp,
                                       double cluster_tol = 1e-8,
                                       double rank_tol = 1e-8,
                                       bool source_enabled = true) {
  if (!is_equilibrium_state(Y_eq, 1e-10))
    throw std::invalid_argument("kawashima_check: state is not an equilibrium");
  if (!source_enabled) return {0.0, false};

  const Mat14 A = hess_x_dir(Y_eq, n, eos, rp);
  const Mat14 B = hess_x0(Y_eq, eos, rp);
  {
    Eigen::SelfAdjointEigenSolver<Mat14> es(B, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success || !(es.eigenvalues().minCoeff() > 0.0))
      throw std::runtime_error("kawashima_check: symmetrizer not SPD");
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat14> es(A, B);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("kawashima_check: generalized eigensolver failed");
  const Vec14 lam = es.eigenvalues();
  const Mat14 V = es.eigenvectors();  // B-orthonormal columns, lam ascending

  const double rad = std::max(lam.cwiseAbs().maxCoeff(), 1e-300);
  double margin = std::numeric_limits<double>::infinity();
  int lo = 0;
  while (lo < 14) {
    int hi = lo;
    while (hi + 1 < 14 && lam[hi + 1] - lam[hi] <= cluster_tol * rad) ++hi;
    const int k = hi - lo + 1;
    const Eigen::MatrixXd P = V.block(idx::sig, lo, idx::n_diss, k);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(P);
    const double smin =
        (k > idx::n_diss) ? 0.0 : svd.singularValues().minCoeff();
    margin = std::min(margin, smin);
    lo = hi + 1;
  }
  return {margin, margin > rank_tol};
}

/// Largest eigenvalue of the symmetric part of the source Jacobian. The
/// verdict applies at equilibrium only; off equilibrium the value is reported
/// without one.
inline DissipativityResult check_dissipativity(const Vec14& Y,
                                               const RelaxationParams& rp,
                                               double tol = 1e-12) {
  const Mat14 J = source_jacobian(Y, rp);
  const Mat14 S = 0.5 * (J + J.transpose());
  Eigen::SelfAdjointEigenSolver<Mat14> es(S, Eigen::EigenvaluesOnly);
  DissipativityResult r;
  r.max_eig_sym = es.eigenvalues().maxCoeff();
  r.at_equilibrium = is_equilibrium_state(Y);
  r.pass = !r.at_equilibrium || r.max_eig_sym <= tol;
  return r;
}

}  // namespace gbflow
