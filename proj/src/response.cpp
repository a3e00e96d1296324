#include "lambdatherm/response.hpp"

#include <cmath>

namespace lambdatherm {

namespace {

using Complex = std::complex<double>;
using Eigen::Vector3d;

struct ModeWeights {
  Vector3d te;
  Vector3d tm;
};

// M_1 = (1, 1, 0); M_2^phi = (phi |k_z|^2, phi |k_z|^2, 2 k^2) / q^2.
ModeWeights mode_weights(const Wavevector<double>& wave, double q, double phi) {
  const double kz2 = std::norm(wave.kz) / (q * q);
  const double k2 = wave.k * wave.k / (q * q);
  return {Vector3d(1.0, 1.0, 0.0), Vector3d(phi * kz2, phi * kz2, 2.0 * k2)};
}

struct SlabPair {
  SlabCoefficients<double> te;
  SlabCoefficients<double> tm;
};

SlabPair slab_pair(const Wavevector<double>& wave, const Complex& eps, double delta) {
  return {slab_coefficients(PlaneWaveMode<double>{Polarization::TE, wave}, eps, delta),
          slab_coefficients(PlaneWaveMode<double>{Polarization::TM, wave}, eps, delta)};
}

}  // namespace

void GeometryPoint::validate() const {
  if (!(z > 0)) throw ConfigError("z", "atom height must be positive");
  if (!(delta >= 0)) throw ConfigError("delta", "slab thickness must be non-negative");
}

void validate_dipole_weights(const Eigen::Vector3d& weights, const std::string& key) {
  if ((weights.array() < 0).any() || !weights.allFinite()) throw ConfigError(key, "weights must be non-negative");
  if (std::abs(weights.sum() - 1.0) > 1e-9) throw ConfigError(key, "weights must sum to 1");
}

std::vector<double> slab_breakpoints(double omega, double delta, const Complex& eps) {
  std::vector<double> k_values;
  if (!(delta > 0)) return k_values;
  const double q = Wavevector<double>::vacuum_wavenumber(omega);

  // Fabry-Perot / guided-wave ripples, only while the round trip is not
  // already damped away.
  const double round_trip_damping = std::exp(-2.0 * upper_sqrt(eps).imag() * q * delta);
  if (eps.real() > 0 && round_trip_damping > 1e-8) {
    constexpr long kMaxRipples = 4000;
    const double step = constants::pi / (2.0 * delta);
    const double k_max = std::sqrt(eps.real()) * q;
    const long count = static_cast<long>(k_max / step);
    const long stride = count / kMaxRipples + 1;
    for (long m = stride; m <= count; m += stride) {
      const double k2 = k_max * k_max - (m * step) * (m * step);
      if (k2 > 0) k_values.push_back(std::sqrt(k2));
    }
  }
  if (eps.real() < -1) {
    // Single-interface surface polariton and the thin-slab coupled mode.
    k_values.push_back(q * std::sqrt(eps / (eps + 1.0)).real());
    const double coupled = std::log(std::abs((eps - 1.0) / (eps + 1.0))) / delta;
    if (coupled > q) k_values.push_back(coupled);
  }
  return k_values;
}

ResponseVectors response_vectors(double omega, const GeometryPoint& geom, const DielectricModel<double>& model,
                                 const QuadratureSpec& spec) {
  return response_vectors(omega, geom, permittivity(model, omega), spec);
}

ResponseVectors response_vectors(double omega, const GeometryPoint& geom, const Complex& eps,
                                 const QuadratureSpec& spec) {
  geom.validate();
  if (!(omega > 0)) throw NumericalError("response requires omega > 0");
  const double q = Wavevector<double>::vacuum_wavenumber(omega);
  const double delta = geom.delta;
  const double z = geom.z;
  const std::vector<double> breaks = slab_breakpoints(omega, delta, eps);

  const ModeIntegrand b_kernel = [&](const Wavevector<double>& wave) -> Vector3d {
    const SlabPair s = slab_pair(wave, eps, delta);
    const ModeWeights m = mode_weights(wave, q, +1.0);
    const double jacobian = wave.k / wave.kz.real();
    return jacobian * (m.te * (std::norm(s.te.rho) + std::norm(s.te.tau)) +
                       m.tm * (std::norm(s.tm.rho) + std::norm(s.tm.tau)));
  };
  const ModeIntegrand c_kernel = [&](const Wavevector<double>& wave) -> Vector3d {
    const SlabPair s = slab_pair(wave, eps, delta);
    const ModeWeights m = mode_weights(wave, q, -1.0);
    const Complex phase = std::exp(Complex(0.0, 2.0 * wave.kz.real() * z));
    const double jacobian = wave.k / wave.kz.real();
    return jacobian * (m.te * (s.te.rho * phase).real() + m.tm * (s.tm.rho * phase).real());
  };
  const ModeIntegrand d_kernel = [&](const Wavevector<double>& wave) -> Vector3d {
    const SlabPair s = slab_pair(wave, eps, delta);
    const ModeWeights m = mode_weights(wave, q, +1.0);
    const double kappa = wave.kz.imag();
    const double factor = wave.k / kappa * std::exp(-2.0 * kappa * z);
    return factor * (m.te * s.te.rho.imag() + m.tm * s.tm.rho.imag());
  };

  const double prefactor = 3.0 / (4.0 * q);
  ResponseVectors out;
  out.B = prefactor * integrate_propagative(b_kernel, omega, spec, breaks).value;
  out.C = prefactor * integrate_oscillatory(c_kernel, omega, z, spec, breaks).value;
  out.D = prefactor * integrate_evanescent(d_kernel, omega, z, spec, breaks).value;
  return out;
}

AlphaPair assemble_alphas(const ResponseVectors& r, const Eigen::Vector3d& weights, double tolerance) {
  const Vector3d ones = Vector3d::Ones();
  AlphaPair a{0.5 * (ones + r.B + 2.0 * r.C).dot(weights), 0.5 * (ones - r.B + 2.0 * r.D).dot(weights)};
  for (double* value : {&a.alpha_W, &a.alpha_M}) {
    if (*value < -tolerance)
      throw NumericalError("passivity violation: negative channel weight " + std::to_string(*value));
    if (*value < 0) *value = 0;
  }
  return a;
}

AlphaPair alpha_pair(double omega, const GeometryPoint& geom, const DielectricModel<double>& model,
                     const Eigen::Vector3d& dipole_weights, const QuadratureSpec& spec) {
  return alpha_pair(omega, geom, permittivity(model, omega), dipole_weights, spec);
}

AlphaPair alpha_pair(double omega, const GeometryPoint& geom, const Complex& eps, const Eigen::Vector3d& dipole_weights,
                     const QuadratureSpec& spec) {
  validate_dipole_weights(dipole_weights);
  const ResponseVectors r = response_vectors(omega, geom, eps, spec);
  const Vector3d scale = Vector3d::Ones() + r.B.cwiseAbs() + 2.0 * (r.C.cwiseAbs() + r.D.cwiseAbs());
  const double tolerance = 100.0 * spec.rel_tol * scale.dot(dipole_weights) + 1e-12;
  return assemble_alphas(r, dipole_weights, tolerance);
}

double crossover_distance(double omega, double delta, const DielectricModel<double>& model,
                          std::pair<double, double> bracket, const Eigen::Vector3d& dipole_weights,
                          const QuadratureSpec& spec) {
  return crossover_distance(omega, delta, permittivity(model, omega), bracket, dipole_weights, spec);
}

double crossover_distance(double omega, double delta, const Complex& eps, std::pair<double, double> bracket,
                          const Eigen::Vector3d& dipole_weights, const QuadratureSpec& spec) {
  auto [z_lo, z_hi] = bracket;
  if (!(z_lo > 0) || !(z_hi > z_lo)) throw NumericalError("crossover bracket must satisfy 0 < z_lo < z_hi");
  auto difference = [&](double log_z) {
    const AlphaPair a = alpha_pair(omega, {std::exp(log_z), delta}, eps, dipole_weights, spec);
    return std::pair{a.alpha_W - a.alpha_M, a.total()};
  };

  double lo = std::log(z_lo);
  double hi = std::log(z_hi);
  const auto [f_lo, s_lo] = difference(lo);
  const auto [f_hi, s_hi] = difference(hi);
  if (f_lo == 0) return z_lo;
  if (f_hi == 0) return z_hi;
  if ((f_lo > 0) == (f_hi > 0)) throw NumericalError("no crossover in bracket");

  const bool lo_positive = f_lo > 0;
  double mid = 0.5 * (lo + hi);
  for (int i = 0; i < 200; ++i) {
    mid = 0.5 * (lo + hi);
    const auto [f, total] = difference(mid);
    if (std::abs(f) < 1e-9 * total) break;
    ((f > 0) == lo_positive ? lo : hi) = mid;
    if (hi - lo < 1e-15) break;
  }
  return std::exp(mid);
}

}  // namespace lambdatherm
