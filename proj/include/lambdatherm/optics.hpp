#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "lambdatherm/constants.hpp"
#include "lambdatherm/errors.hpp"

namespace lambdatherm {

// Single-oscillator Drude-Lorentz permittivity
//   eps(w) = eps_inf (wL^2 - w^2 - i g w) / (wT^2 - w^2 - i g w)
// with the exp(-i w t) convention, so Im eps >= 0 for a passive medium.
template <typename Scalar>
struct DielectricModel {
  Scalar eps_inf = 1;
  Scalar omega_L = 0;     // longitudinal optical frequency [rad/s]
  Scalar omega_T = 0;     // transverse (resonance) frequency [rad/s]
  Scalar gamma_damp = 0;  // damping rate [rad/s]

  void validate() const {
    if (!(eps_inf >= 1)) throw ConfigError("eps_inf", "must be >= 1");
    if (!(omega_T > 0)) throw ConfigError("omega_T", "must be positive");
    if (!(omega_L > omega_T)) throw ConfigError("omega_L", "must exceed omega_T");
    if (!(gamma_damp >= 0)) throw ConfigError("gamma_damp", "must be non-negative");
  }
};

enum class Polarization { TE, TM };

/// Square root on the branch Im >= 0 (decaying / outgoing waves).
template <typename Scalar>
std::complex<Scalar> upper_sqrt(const std::complex<Scalar>& value) {
  std::complex<Scalar> root = std::sqrt(value);
  if (root.imag() < 0) root = -root;
  return root;
}

template <typename Scalar>
std::complex<Scalar> permittivity(const DielectricModel<Scalar>& model, Scalar omega) {
  using Complex = std::complex<Scalar>;
  if (!(omega > 0)) throw NumericalError("permittivity requires omega > 0");
  const Complex loss(0, model.gamma_damp * omega);
  const Complex numerator = Complex(model.omega_L * model.omega_L - omega * omega) - loss;
  const Complex denominator = Complex(model.omega_T * model.omega_T - omega * omega) - loss;
  if (denominator == Complex(0)) throw NumericalError("lossless resonance singularity");
  return model.eps_inf * numerator / denominator;
}

// Transverse wavevector k and vacuum normal component k_z of one field mode.
// k_z is stored rather than recomputed from k so that sqrt(w^2/c^2 - k^2)
// does not lose precision near grazing incidence.
template <typename Scalar>
struct Wavevector {
  Scalar omega = 0;
  Scalar k = 0;
  std::complex<Scalar> kz;

  static Scalar vacuum_wavenumber(Scalar omega) {
    return omega / static_cast<Scalar>(constants::speed_of_light);
  }

  static Wavevector from_k(Scalar k, Scalar omega) {
    if (!(omega > 0) || !(k >= 0)) throw NumericalError("wavevector requires omega > 0 and k >= 0");
    const Scalar q = vacuum_wavenumber(omega);
    return {omega, k, upper_sqrt(std::complex<Scalar>((q - k) * (q + k)))};
  }

  /// Propagative mode at polar angle theta: k = q sin(theta), k_z = q cos(theta).
  static Wavevector propagative(Scalar theta, Scalar omega) {
    const Scalar q = vacuum_wavenumber(omega);
    return {omega, q * std::sin(theta), std::complex<Scalar>(q * std::cos(theta), 0)};
  }

  /// Evanescent mode with decay constant kappa = Im k_z.
  static Wavevector evanescent(Scalar kappa, Scalar omega) {
    const Scalar q = vacuum_wavenumber(omega);
    return {omega, std::hypot(q, kappa), std::complex<Scalar>(0, kappa)};
  }

  bool is_propagative() const { return kz.imag() == 0; }

  /// Normal wavevector inside a medium of permittivity eps, Im >= 0.
  /// Written as (eps - 1) q^2 + k_z^2 so that eps = 1 gives k_zm = k_z exactly.
  std::complex<Scalar> kz_medium(const std::complex<Scalar>& eps) const {
    const Scalar q = vacuum_wavenumber(omega);
    return upper_sqrt((eps - Scalar(1)) * (q * q) + kz * kz);
  }
};

template <typename Scalar>
struct PlaneWaveMode {
  Polarization polarization = Polarization::TE;
  Wavevector<Scalar> wave;
};

template <typename Scalar>
struct FresnelCoefficients {
  std::complex<Scalar> r;      // reflection, vacuum side
  std::complex<Scalar> t;      // vacuum -> medium
  std::complex<Scalar> t_bar;  // medium -> vacuum
};

// Single-interface amplitudes. TM uses the magnetic-field convention; both
// polarizations satisfy t * t_bar = 1 - r^2 identically.
template <typename Scalar>
FresnelCoefficients<Scalar> fresnel(const PlaneWaveMode<Scalar>& mode, const std::complex<Scalar>& eps) {
  using Complex = std::complex<Scalar>;
  const Complex kz = mode.wave.kz;
  const Complex kzm = mode.wave.kz_medium(eps);
  const Complex outer = mode.polarization == Polarization::TE ? kz : eps * kz;
  const Complex denominator = outer + kzm;
  if (denominator == Complex(0)) throw NumericalError("grazing degenerate mode");
  return {(outer - kzm) / denominator, Scalar(2) * outer / denominator, Scalar(2) * kzm / denominator};
}

template <typename Scalar>
struct SlabCoefficients {
  std::complex<Scalar> rho;
  std::complex<Scalar> tau;  // physical for propagative incidence only
};

/// Reflection and transmission of a free-standing slab of thickness delta
/// (multiple internal reflections summed).
template <typename Scalar>
SlabCoefficients<Scalar> slab_coefficients(const PlaneWaveMode<Scalar>& mode,
                                           const std::complex<Scalar>& eps, Scalar delta) {
  using Complex = std::complex<Scalar>;
  if (!(delta >= 0)) throw NumericalError("slab thickness must be non-negative");
  if (delta == 0) return {Complex(0), Complex(1)};

  const FresnelCoefficients<Scalar> f = fresnel(mode, eps);
  const Complex kzm = mode.wave.kz_medium(eps);
  const Complex i(0, 1);
  const Complex round_trip = std::exp(Scalar(2) * i * kzm * delta);
  const Complex r2 = f.r * f.r;
  const Complex denominator = Scalar(1) - r2 * round_trip;
  if (std::abs(denominator) <= 4 * std::numeric_limits<Scalar>::epsilon() * (1 + std::abs(r2 * round_trip)))
    throw NumericalError("slab resonance");
  const Complex rho = f.r * (Scalar(1) - round_trip) / denominator;
  const Complex tau = f.t * f.t_bar * std::exp(i * (kzm - mode.wave.kz) * delta) / denominator;
  return {rho, tau};
}

template <typename Scalar>
SlabCoefficients<Scalar> slab_coefficients(const PlaneWaveMode<Scalar>& mode,
                                           const DielectricModel<Scalar>& model, Scalar delta) {
  return slab_coefficients(mode, permittivity(model, mode.wave.omega), delta);
}

}  // namespace lambdatherm
