#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "gbflow/solver1d.hpp"

namespace gbflow {

/// Reference 1D compressible Navier-Stokes-Fourier solver, the epsilon = 0
/// target of the relaxation system. The effective coefficients follow from
/// the formal tau -> 0 balance of the flux and source rows of the dissipative
/// fields: Sigma_11 = -(4/3) eta du/dx, sigma = -3 zeta du/dx,
/// q1 = -chi dtheta/dx, hence
///   mu_eff = (4/3) eta + 3 zeta,   kappa = chi.

struct NsfCoeffs {
  double eta{1.0};
  double zeta{1.0};
  double chi{1.0};

  double mu_eff() const { return 4.0 / 3.0 * eta + 3.0 * zeta; }
  double kappa() const { return chi; }

  static NsfCoeffs from(const RelaxationParams& rp) { return {rp.eta, rp.zeta, rp.chi}; }
};

struct NsfField {
  Grid1D grid;
  std::vector<double> rho, mom, E;  ///< density, momentum, total energy
};

struct NsfClosure {
  std::vector<double> Sigma11, sigma, q1;
};

/// Limit closure fields from (u, theta) by periodic centered differences.
inline NsfClosure nsf_closure(const std::vector<double>& u, const std::vector<double>& theta,
                              const NsfCoeffs& c, const Grid1D& grid) {
  const int n = grid.n;
  NsfClosure out{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
  const double two_dx = 2.0 * grid.dx();
  for (int i = 0; i < n; ++i) {
    const int im = grid.wrap(i - 1), ip = grid.wrap(i + 1);
    const double dudx = (u[ip] - u[im]) / two_dx;
    const double dthdx = (theta[ip] - theta[im]) / two_dx;
    out.Sigma11[i] = -4.0 / 3.0 * c.eta * dudx;
    out.sigma[i] = -3.0 * c.zeta * dudx;
    out.q1[i] = -c.kappa() * dthdx;
  }
  return out;
}

namespace detail {

struct NsfPrim {
  std::vector<double> u, theta, p, c;
};

inline NsfPrim nsf_primitives(const NsfField& f, const IdealGasEos& eos) {
  const int n = f.grid.n;
  NsfPrim pr{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n),
             std::vector<double>(n)};
  for (int i = 0; i < n; ++i) {
    if (!(f.rho[i] > 0.0)) throw std::runtime_error("nsf: non-positive density");
    const double u = f.mom[i] / f.rho[i];
    const double e = f.E[i] / f.rho[i] - 0.5 * u * u;
    if (!(e > 0.0)) throw std::runtime_error("nsf: non-positive internal energy");
    pr.u[i] = u;
    pr.theta[i] = e / eos.cv();
    pr.p[i] = f.rho[i] * eos.R * pr.theta[i];
    pr.c[i] = std::sqrt(eos.gamma * eos.R * pr.theta[i]);
  }
  return pr;
}

/// Forward-Euler right-hand side evaluation (conservative flux differences).
/// Second-order interior scheme: unlimited central (Fromm) slopes for the
/// Euler flux, centered differences for the viscous/heat fluxes.
inline void nsf_rhs(const NsfField& f, const IdealGasEos& eos, const NsfCoeffs& cf,
                    std::vector<double>& d_rho, std::vector<double>& d_mom,
                    std::vector<double>& d_E) {
  const int n = f.grid.n;
  const double dx = f.grid.dx();
  const NsfPrim pr = nsf_primitives(f, eos);

  auto slope = [&](const std::vector<double>& w, int i) {
    return 0.5 * (w[f.grid.wrap(i + 1)] - w[f.grid.wrap(i - 1)]);
  };
  auto euler_flux = [&](double rho, double u, double p, double E, double& frho,
                        double& fmom, double& fE) {
    frho = rho * u;
    fmom = rho * u * u + p;
    fE = (E + p) * u;
  };

  std::vector<double> F0(n), F1(n), F2(n);  // interface i+1/2
  for (int i = 0; i < n; ++i) {
    const int ip = f.grid.wrap(i + 1);
    // reconstructed conservative states at the interface
    const double rhoL = f.rho[i] + 0.5 * slope(f.rho, i);
    const double momL = f.mom[i] + 0.5 * slope(f.mom, i);
    const double EL = f.E[i] + 0.5 * slope(f.E, i);
    const double rhoR = f.rho[ip] - 0.5 * slope(f.rho, ip);
    const double momR = f.mom[ip] - 0.5 * slope(f.mom, ip);
    const double ER = f.E[ip] - 0.5 * slope(f.E, ip);
    const double uL = momL / rhoL, uR = momR / rhoR;
    const double pL = (eos.gamma - 1.0) * (EL - 0.5 * momL * uL);
    const double pR = (eos.gamma - 1.0) * (ER - 0.5 * momR * uR);
    const double s = std::max(std::abs(pr.u[i]) + pr.c[i], std::abs(pr.u[ip]) + pr.c[ip]);
    double f0L, f1L, f2L, f0R, f1R, f2R;
    euler_flux(rhoL, uL, pL, EL, f0L, f1L, f2L);
    euler_flux(rhoR, uR, pR, ER, f0R, f1R, f2R);
    F0[i] = 0.5 * (f0L + f0R) - 0.5 * s * (rhoR - rhoL);
    F1[i] = 0.5 * (f1L + f1R) - 0.5 * s * (momR - momL);
    F2[i] = 0.5 * (f2L + f2R) - 0.5 * s * (ER - EL);

    // viscous stress and heat flux at the interface
    const double dudx = (pr.u[ip] - pr.u[i]) / dx;
    const double dthdx = (pr.theta[ip] - pr.theta[i]) / dx;
    const double u_face = 0.5 * (pr.u[i] + pr.u[ip]);
    const double tau_visc = -cf.mu_eff() * dudx;  // Sigma11 + sigma
    F1[i] += tau_visc;
    F2[i] += tau_visc * u_face - cf.kappa() * dthdx;
  }
  d_rho.resize(n);
  d_mom.resize(n);
  d_E.resize(n);
  for (int i = 0; i < n; ++i) {
    const int im = f.grid.wrap(i - 1);
    d_rho[i] = -(F0[i] - F0[im]) / dx;
    d_mom[i] = -(F1[i] - F1[im]) / dx;
    d_E[i] = -(F2[i] - F2[im]) / dx;
  }
}

}  // namespace detail

/// Stable explicit step size: hyperbolic CFL against |u| + c and parabolic
/// bound against the largest diffusivity.
inline double nsf_stable_dt(const NsfField& f, const IdealGasEos& eos, const NsfCoeffs& cf,
                            double cfl) {
  const detail::NsfPrim pr = detail::nsf_primitives(f, eos);
  double s_max = 0.0, nu_max = 0.0;
  for (int i = 0; i < f.grid.n; ++i) {
    s_max = std::max(s_max, std::abs(pr.u[i]) + pr.c[i]);
    nu_max = std::max(nu_max, std::max(cf.mu_eff() / f.rho[i],
                                       cf.kappa() / (f.rho[i] * eos.cv())));
  }
  const double dx = f.grid.dx();
  const double dt_h = cfl * dx / std::max(s_max, 1e-14);
  const double dt_p = 0.4 * dx * dx / std::max(nu_max, 1e-300);
  return std::min(dt_h, dt_p);
}

/// Heun (two-stage) step of the conservative update.
inline void nsf_step(NsfField& f, double dt, const IdealGasEos& eos, const NsfCoeffs& cf) {
  const int n = f.grid.n;
  std::vector<double> k0, k1, k2;
  detail::nsf_rhs(f, eos, cf, k0, k1, k2);
  NsfField stage = f;
  for (int i = 0; i < n; ++i) {
    stage.rho[i] += dt * k0[i];
    stage.mom[i] += dt * k1[i];
    stage.E[i] += dt * k2[i];
  }
  std::vector<double> m0, m1, m2;
  detail::nsf_rhs(stage, eos, cf, m0, m1, m2);
  for (int i = 0; i < n; ++i) {
    f.rho[i] += 0.5 * dt * (k0[i] + m0[i]);
    f.mom[i] += 0.5 * dt * (k1[i] + m1[i]);
    f.E[i] += 0.5 * dt * (k2[i] + m2[i]);
  }
}

inline void nsf_advance(NsfField& f, double t_end, const IdealGasEos& eos,
                        const NsfCoeffs& cf, double cfl,
                        const std::function<void(double, const NsfField&)>& on_step = {}) {
  double t = 0.0;
  while (t < t_end) {
    double dt = std::min(nsf_stable_dt(f, eos, cf, cfl), t_end - t);
    nsf_step(f, dt, eos, cf);
    t += dt;
    if (on_step) on_step(t, f);
  }
}

inline NsfField make_nsf_field(const Grid1D& grid,
                               const std::function<void(double, double&, Vec3&, double&)>& ic,
                               const IdealGasEos& eos) {
  grid.validate();
  NsfField f;
  f.grid = grid;
  f.rho.resize(grid.n);
  f.mom.resize(grid.n);
  f.E.resize(grid.n);
  for (int i = 0; i < grid.n; ++i) {
    double rho, theta;
    Vec3 u;
    ic(grid.x_center(i), rho, u, theta);
    f.rho[i] = rho;
    f.mom[i] = rho * u[0];
    f.E[i] = rho * eos.cv() * theta + 0.5 * rho * u[0] * u[0];
  }
  return f;
}

/// Total entropy (diagnostic; non-decreasing on smooth solutions).
inline double nsf_total_entropy(const NsfField& f, const IdealGasEos& eos) {
  const detail::NsfPrim pr = detail::nsf_primitives(f, eos);
  double total = 0.0;
  for (int i = 0; i < f.grid.n; ++i)
    total += f.rho[i] * specific_entropy(eos, f.rho[i], pr.theta[i]);
  return total * f.grid.dx();
}

}  // namespace gbflow
