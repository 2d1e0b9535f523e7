#pragma once

#include <cmath>
#include <stdexcept>

#include "gbflow/dual.hpp"

namespace gbflow {

/// Ideal-gas equation of state in the (temperature, thermodynamic potential)
/// variables:
///
///   p(theta, psi) = p_ref * theta^(gamma/(gamma-1)) * exp(psi / R)
///
/// This is the unique closed form (up to constants) satisfying
///   p_psi = rho * theta            with rho = p / (R * theta)
///   theta * p_theta = rho * e + p  with e = c_v * theta, c_v = R/(gamma-1),
/// with the entropy constant fixed so that psi = 0 at rho = theta = p_ref = 1.
struct IdealGasEos {
  double gamma{1.4};  ///< adiabatic index, > 1
  double R{1.0};      ///< specific gas constant, > 0
  double p_ref{1.0};  ///< reference pressure, > 0

  double cv() const { return R / (gamma - 1.0); }
  double cp() const { return gamma * R / (gamma - 1.0); }
  /// theta-exponent gamma/(gamma-1) of the closed form.
  double alpha() const { return gamma / (gamma - 1.0); }

  void validate() const {
    if (!(gamma > 1.0) || !(R > 0.0) || !(p_ref > 0.0))
      throw std::domain_error("IdealGasEos: require gamma > 1, R > 0, p_ref > 0");
  }
};

namespace detail {
template <class T>
void require_positive_theta(const T& theta) {
  if (!(value_of(theta) > 0.0))
    throw std::domain_error("eos: temperature must be positive");
}
}  // namespace detail

template <class T>
T pressure(const IdealGasEos& eos, const T& theta, const T& psi) {
  detail::require_positive_theta(theta);
  using std::exp;
  using std::pow;
  return eos.p_ref * pow(theta, eos.alpha()) * exp(psi / eos.R);
}

/// Pressure together with all partials up to second order.
template <class T>
struct EosPartials {
  T p;
  T p_psi;
  T p_theta;
  T p_psipsi;
  T p_thetapsi;
  T p_thetatheta;
};

template <class T>
EosPartials<T> pressure_partials(const IdealGasEos& eos, const T& theta, const T& psi) {
  const T p = pressure(eos, theta, psi);
  const double a = eos.alpha();
  EosPartials<T> out;
  out.p = p;
  out.p_psi = p / eos.R;
  out.p_theta = a * p / theta;
  out.p_psipsi = p / (eos.R * eos.R);
  out.p_thetapsi = a * p / (eos.R * theta);
  out.p_thetatheta = a * (a - 1.0) * p / (theta * theta);
  return out;
}

/// Density and specific internal energy implied by the two identities:
/// rho = p_psi / theta, e = (theta p_theta - p) / rho.
template <class T>
struct DensityEnergy {
  T rho;
  T e;
};

template <class T>
DensityEnergy<T> density_energy(const IdealGasEos& eos, const T& theta, const T& psi) {
  const EosPartials<T> d = pressure_partials(eos, theta, psi);
  const T rho = d.p_psi / theta;
  return {rho, (theta * d.p_theta - d.p) / rho};
}

/// Inverse map: the potential psi at which density_energy returns the given
/// density. Closed form for the ideal gas.
inline double psi_from_rho_theta(const IdealGasEos& eos, double rho, double theta) {
  if (!(rho > 0.0) || !(theta > 0.0))
    throw std::domain_error("psi_from_rho_theta: require rho > 0, theta > 0");
  return eos.R * std::log(rho * eos.R * theta / (eos.p_ref * std::pow(theta, eos.alpha())));
}

/// Specific entropy, normalized consistently with psi = (g - e - p/rho)/... :
/// s = cv log(theta) - R log(rho) + cp. Used only for diagnostics.
inline double specific_entropy(const IdealGasEos& eos, double rho, double theta) {
  return eos.cv() * std::log(theta) - eos.R * std::log(rho) + eos.cp();
}

}  // namespace gbflow
