#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "gbflow/newton.hpp"
#include "gbflow/structure.hpp"

namespace gbflow {

/// One-dimensional finite-volume IMEX solver for the full 14-component
/// system under planar symmetry: explicit transport of the conservative form
/// d/dt grad X0 + d/dx grad X1 = I, Strang-split against an exact
/// frozen-coefficient integration of the stiff relaxation source.

struct Grid1D {
  int n{100};
  double xmin{0.0};
  double xmax{1.0};

  double dx() const { return (xmax - xmin) / n; }
  double x_center(int i) const { return xmin + (i + 0.5) * dx(); }
  int wrap(int i) const { return ((i % n) + n) % n; }

  void validate() const {
    if (n <= 3 || !(xmax > xmin)) throw std::domain_error("Grid1D: need n > 3, xmax > xmin");
  }
};

struct Field1D {
  Grid1D grid;
  std::vector<Vec14> U;  ///< conserved vectors
  std::vector<Vec14> Y;  ///< cached main-field states (last Newton solution)
};

struct SolverOptions {
  double cfl{0.5};
  int order{2};  ///< 1: Rusanov, 2: minmod-limited MUSCL in main-field variables
  NewtonOptions newton{};
};

/// Physically motivated cold-start guess for the Newton inversion, ignoring
/// the quadratic extended-potential corrections.
inline Vec14 initial_guess_from_conserved(const Vec14& U, const IdealGasEos& eos,
                                          const RelaxationParams& rp) {
  const double rho = U[0];
  if (!(rho > 0.0)) throw InversionError("initial guess: non-positive density");
  const Vec3 u = U.segment<3>(idx::u) / rho;
  const double e = (U[idx::theta] - 0.5 * rho * u.squaredNorm()) / rho;
  if (!(e > 0.0)) throw InversionError("initial guess: non-positive internal energy");
  const double theta = e / eos.cv();
  PhysicalState p;
  p.rho = rho;
  p.u = u;
  p.theta = theta;
  p.Sigma = U.segment<5>(idx::sig) * theta / (rp.tau1() * rho);
  p.sigma = U[idx::bulk] * theta / (rp.tau2() * rho);
  p.q = U.segment<3>(idx::q) * theta * theta / (rp.tau0() * rho);
  return to_godunov(p, eos, rp);
}

/// Rusanov (local Lax-Friedrichs) flux from left/right main-field states.
inline Vec14 rusanov_flux(const Vec14& YL, const Vec14& YR, double s_max,
                          const IdealGasEos& eos, const RelaxationParams& rp) {
  const Vec14 FL = grad_xj(YL, eos, rp).col(0);
  const Vec14 FR = grad_xj(YR, eos, rp).col(0);
  const Vec14 UL = grad_x0(YL, eos, rp);
  const Vec14 UR = grad_x0(YR, eos, rp);
  return 0.5 * (FL + FR) - 0.5 * s_max * (UR - UL);
}

/// Two-point numerical flux on conserved states (cold-start inversion).
inline Vec14 numerical_flux(const Vec14& UL, const Vec14& UR, const IdealGasEos& eos,
                            const RelaxationParams& rp) {
  const Vec14 YL = conserved_to_godunov(UL, initial_guess_from_conserved(UL, eos, rp), eos, rp);
  const Vec14 YR = conserved_to_godunov(UR, initial_guess_from_conserved(UR, eos, rp), eos, rp);
  const Vec3 e1 = Vec3::UnitX();
  const double s_max = std::max(characteristic_speeds(YL, e1, eos, rp).cwiseAbs().maxCoeff(),
                                characteristic_speeds(YR, e1, eos, rp).cwiseAbs().maxCoeff());
  return rusanov_flux(YL, YR, s_max, eos, rp);
}

/// Exact frozen-coefficient integration of the relaxation source over dt:
/// the conserved dissipative components decay exponentially with rates
/// theta/(2 eta tau1 rho), theta/(3 zeta tau2 rho), theta^2/(chi tau0 rho),
/// coefficients frozen at the substep start; components 1-5 are untouched.
inline Vec14 relax_substep_cell(const Vec14& U, double dt, double rho, double theta,
                                const RelaxationParams& rp) {
  Vec14 out = U;
  const double r_sig = theta / (2.0 * rp.eta * rp.tau1() * rho);
  const double r_blk = theta / (3.0 * rp.zeta * rp.tau2() * rho);
  const double r_q = theta * theta / (rp.chi * rp.tau0() * rho);
  out.segment<5>(idx::sig) *= std::exp(-dt * r_sig);
  out[idx::bulk] *= std::exp(-dt * r_blk);
  out.segment<3>(idx::q) *= std::exp(-dt * r_q);
  return out;
}

inline void relax_substep(Field1D& f, double dt, const IdealGasEos& eos,
                          const RelaxationParams& rp, const NewtonOptions& opts = {}) {
  for (int i = 0; i < f.grid.n; ++i) {
    const double theta = theta_of(f.Y[i]);
    const double rho = f.U[i][0];
    const Vec14 U_new = relax_substep_cell(f.U[i], dt, rho, theta, rp);
    if ((U_new - f.U[i]).norm() > 0.0)
      f.Y[i] = conserved_to_godunov(U_new, f.Y[i], eos, rp, opts);
    f.U[i] = U_new;
  }
}

inline double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

/// Per-cell spectral radius of the pencil in the x-direction.
inline std::vector<double> cell_speeds(const Field1D& f, const IdealGasEos& eos,
                                       const RelaxationParams& rp) {
  std::vector<double> s(f.grid.n);
  const Vec3 e1 = Vec3::UnitX();
  for (int i = 0; i < f.grid.n; ++i)
    s[i] = characteristic_speeds(f.Y[i], e1, eos, rp).cwiseAbs().maxCoeff();
  return s;
}

namespace detail {

/// One forward-Euler transport update; fills U_out from the states in f.
inline void transport_euler(const Field1D& f, const std::vector<double>& rad, double dt,
                            int order, const IdealGasEos& eos, const RelaxationParams& rp,
                            std::vector<Vec14>& U_out) {
  const int n = f.grid.n;
  const double lam = dt / f.grid.dx();
  std::vector<Vec14> flux(n);  // flux[i] lives at interface i+1/2
  if (order <= 1) {
    for (int i = 0; i < n; ++i) {
      const int ip = f.grid.wrap(i + 1);
      const double s = std::max(rad[i], rad[ip]);
      flux[i] = rusanov_flux(f.Y[i], f.Y[ip], s, eos, rp);
    }
  } else {
    std::vector<Vec14> slope(n);
    for (int i = 0; i < n; ++i) {
      const int im = f.grid.wrap(i - 1), ip = f.grid.wrap(i + 1);
      for (int c = 0; c < 14; ++c)
        slope[i][c] = minmod(f.Y[i][c] - f.Y[im][c], f.Y[ip][c] - f.Y[i][c]);
    }
    for (int i = 0; i < n; ++i) {
      const int ip = f.grid.wrap(i + 1);
      const Vec14 YL = f.Y[i] + 0.5 * slope[i];
      const Vec14 YR = f.Y[ip] - 0.5 * slope[ip];
      const double s = std::max(rad[i], rad[ip]);
      flux[i] = rusanov_flux(YL, YR, s, eos, rp);
    }
  }
  U_out.resize(n);
  for (int i = 0; i < n; ++i) {
    const int im = f.grid.wrap(i - 1);
    U_out[i] = f.U[i] - lam * (flux[i] - flux[im]);
  }
}

inline void invert_all(Field1D& f, const IdealGasEos& eos, const RelaxationParams& rp,
                       const NewtonOptions& opts) {
  for (int i = 0; i < f.grid.n; ++i) {
    try {
      f.Y[i] = conserved_to_godunov(f.U[i], f.Y[i], eos, rp, opts);
    } catch (const InversionError& err) {
      std::ostringstream msg;
      msg << "cell " << i << " (x = " << f.grid.x_center(i) << "): " << err.what();
      throw InversionError(msg.str());
    }
  }
}

}  // namespace detail

/// One Strang-split step: half source, full transport (Heun two-stage when
/// order 2), half source. dt must satisfy the hyperbolic CFL bound.
inline void step(Field1D& f, double dt, const IdealGasEos& eos, const RelaxationParams& rp,
                 const SolverOptions& opts = {}) {
  relax_substep(f, 0.5 * dt, eos, rp, opts.newton);

  const std::vector<double> rad = cell_speeds(f, eos, rp);
  std::vector<Vec14> U1;
  detail::transport_euler(f, rad, dt, opts.order, eos, rp, U1);
  if (opts.order <= 1) {
    f.U = std::move(U1);
    detail::invert_all(f, eos, rp, opts.newton);
  } else {
    Field1D stage{f.grid, std::move(U1), f.Y};
    detail::invert_all(stage, eos, rp, opts.newton);
    const std::vector<double> rad1 = cell_speeds(stage, eos, rp);
    std::vector<Vec14> U2;
    detail::transport_euler(stage, rad1, dt, opts.order, eos, rp, U2);
    for (int i = 0; i < f.grid.n; ++i) f.U[i] = 0.5 * (f.U[i] + U2[i]);
    f.Y = std::move(stage.Y);
    detail::invert_all(f, eos, rp, opts.newton);
  }

  relax_substep(f, 0.5 * dt, eos, rp, opts.newton);
}

/// Advance to t_end under the CFL condition, invoking the callback after
/// every step with the current time.
inline void advance(Field1D& f, double t_end, const IdealGasEos& eos,
                    const RelaxationParams& rp, const SolverOptions& opts,
                    const std::function<void(double, const Field1D&)>& on_step = {}) {
  if (!(opts.cfl > 0.0 && opts.cfl <= 0.9))
    throw std::domain_error("advance: cfl must lie in (0, 0.9]");
  rp.validate();
  if (!(rp.epsilon > 0.0))
    throw std::domain_error("advance: relaxation solver requires epsilon > 0");
  double t = 0.0;
  while (t < t_end) {
    const std::vector<double> rad = cell_speeds(f, eos, rp);
    const double s_max = *std::max_element(rad.begin(), rad.end());
    double dt = opts.cfl * f.grid.dx() / std::max(s_max, 1e-14);
    dt = std::min(dt, t_end - t);
    step(f, dt, eos, rp, opts);
    t += dt;
    if (on_step) on_step(t, f);
  }
}

/// Build a field from pointwise (rho, u, theta) data with "well-prepared"
/// dissipative fields: Sigma = -2 eta devsym(grad u), sigma = -3 zeta div u,
/// q = -chi grad theta, derivatives by periodic centered differences.
inline Field1D make_prepared_field(const Grid1D& grid,
                                   const std::function<void(double, double&, Vec3&, double&)>& ic,
                                   const IdealGasEos& eos, const RelaxationParams& rp) {
  grid.validate();
  const int n = grid.n;
  std::vector<double> rho(n), theta(n);
  std::vector<Vec3> u(n);
  for (int i = 0; i < n; ++i) ic(grid.x_center(i), rho[i], u[i], theta[i]);

  Field1D f;
  f.grid = grid;
  f.U.resize(n);
  f.Y.resize(n);
  const double two_dx = 2.0 * grid.dx();
  for (int i = 0; i < n; ++i) {
    const int im = grid.wrap(i - 1), ip = grid.wrap(i + 1);
    const Vec3 dudx = (u[ip] - u[im]) / two_dx;
    const double dthdx = (theta[ip] - theta[im]) / two_dx;
    Mat3 gradu = Mat3::Zero();
    gradu.row(0) = dudx.transpose();  // d/dx only, planar symmetry
    const Mat3 sym = 0.5 * (gradu + gradu.transpose());
    const Mat3 dev = sym - (sym.trace() / 3.0) * Mat3::Identity();
    PhysicalState p;
    p.rho = rho[i];
    p.u = u[i];
    p.theta = theta[i];
    p.Sigma = -2.0 * rp.eta * pack_dev(dev);
    p.sigma = -3.0 * rp.zeta * dudx[0];
    p.q = Vec3(-rp.chi * dthdx, 0.0, 0.0);
    f.Y[i] = to_godunov(p, eos, rp);
    f.U[i] = grad_x0(f.Y[i], eos, rp);
  }
  return f;
}

/// Cell-sum of the source entropy production (non-positive at every state).
inline double total_entropy_production(const Field1D& f, const RelaxationParams& rp) {
  double total = 0.0;
  for (int i = 0; i < f.grid.n; ++i) total += source_entropy_production(f.Y[i], rp);
  return total * f.grid.dx();
}

}  // namespace gbflow
