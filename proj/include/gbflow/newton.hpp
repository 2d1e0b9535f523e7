#pragma once

#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "gbflow/potentials.hpp"

namespace gbflow {

/// Failure of the conserved -> main-field inversion, with diagnostics.
struct InversionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NewtonOptions {
  double tol{1e-12};
  int max_iter{50};
};

/// Invert the Legendre-type map U = grad X0(Y) by Newton iteration with the
/// SPD Hessian as Jacobian. Steps are halved until the iterate keeps
/// theta~ < 0; convergence when ||grad X0(Y) - U|| <= tol * ||U||.
inline Vec14 conserved_to_godunov(const Vec14& U, const Vec14& guess,
                                  const IdealGasEos& eos, const RelaxationParams& rp,
                                  const NewtonOptions& opts = {}) {
  Vec14 Y = guess;
  const double u_norm = std::max(U.norm(), 1e-300);
  double res = (grad_x0(Y, eos, rp) - U).norm();
  for (int it = 0; it < opts.max_iter; ++it) {
    if (res <= opts.tol * u_norm) return Y;
    const Vec14 G = grad_x0(Y, eos, rp) - U;
    const Mat14 H = hess_x0(Y, eos, rp);
    const Vec14 step = H.ldlt().solve(-G);
    double alpha = 1.0;
    Vec14 Y_new;
    double res_new = std::numeric_limits<double>::infinity();
    bool ok = false;
    for (int halvings = 0; halvings < 40; ++halvings) {
      Y_new = Y + alpha * step;
      if (Y_new[idx::theta] < 0.0) {
        try {
          res_new = (grad_x0(Y_new, eos, rp) - U).norm();
          ok = true;
        } catch (const std::domain_error&) {
          ok = false;
        }
      }
      // accept the first admissible iterate that does not increase the
      // residual; after a few tries accept any admissible one
      if (ok && (res_new < res || halvings >= 8)) break;
      ok = false;
      alpha *= 0.5;
    }
    if (!ok) break;
    Y = Y_new;
    res = res_new;
  }
  if (res <= opts.tol * u_norm) return Y;
  std::ostringstream msg;
  msg << "conserved_to_godunov: no convergence, residual " << res / u_norm
      << " (relative), U = [" << U.transpose() << "]";
  throw InversionError(msg.str());
}

}  // namespace gbflow
