#pragma once

#include <cmath>
#include <string>

#include <Eigen/Core>

#include "lambdatherm/constants.hpp"
#include "lambdatherm/response.hpp"

namespace lambdatherm {

/// Mean photon number n(w, T) = 1 / (exp(hbar w / kB T) - 1); zero at T = 0.
template <typename Scalar>
Scalar bose_occupation(Scalar omega, Scalar temperature) {
  if (!(temperature > 0)) return Scalar(0);
  const Scalar x = static_cast<Scalar>(constants::hbar / constants::boltzmann) * omega / temperature;
  return Scalar(1) / std::expm1(x);
}

/// Inverse of bose_occupation in T: the temperature whose occupation at w is n.
template <typename Scalar>
Scalar effective_temperature(Scalar omega, Scalar occupation) {
  if (!(occupation > 0)) return Scalar(0);
  return static_cast<Scalar>(constants::hbar / constants::boltzmann) * omega / std::log1p(Scalar(1) / occupation);
}

/// Channel-weighted average of the wall and body occupations.
double effective_occupation(double omega, double T_W, double T_M, const AlphaPair& alphas);

/// Spontaneous emission rate in vacuum, w^3 |d|^2 / (3 pi eps0 hbar c^3).
double vacuum_decay_rate(double omega, double dipole);

/// Dipole magnitude [C m] giving a vacuum rate of 1/s at `omega`.
double unit_rate_dipole(double omega);

enum class Transition { k31, k32 };

const char* to_string(Transition t);

// Lambda scheme: |1> and |2> both couple only to |3>.
struct AtomModel {
  double omega_31 = 0;
  double omega_32 = 0;
  double d31 = 0;  // |d_13| [C m]
  double d32 = 0;  // |d_23| [C m]
  Eigen::Vector3d weights_31 = isotropic_weights();
  Eigen::Vector3d weights_32 = isotropic_weights();

  void validate() const;

  double omega(Transition t) const { return t == Transition::k31 ? omega_31 : omega_32; }
  double dipole(Transition t) const { return t == Transition::k31 ? d31 : d32; }
  const Eigen::Vector3d& weights(Transition t) const { return t == Transition::k31 ? weights_31 : weights_32; }

  /// Both dipoles set so that the vacuum rate at `reference_omega` is 1/s.
  static AtomModel with_unit_rate(double omega_31, double omega_32, double reference_omega);
};

struct TransitionRates {
  double down = 0;  // Gamma(+w): emission, upper -> lower
  double up = 0;    // Gamma(-w): absorption, lower -> upper
};

struct TransitionEnvironment {
  double alpha_W = 0;
  double alpha_M = 0;
  double n_eff = 0;
  double T_eff = 0;
  double gamma_down = 0;
  double gamma_up = 0;
  double gamma0 = 0;

  TransitionRates rates() const { return {gamma_down, gamma_up}; }
};

TransitionEnvironment transition_rates(const AtomModel& atom, Transition which, const AlphaPair& alphas, double T_W,
                                       double T_M);

/// Diagonal of the atomic density matrix.
struct Populations {
  Eigen::Vector3d p = Eigen::Vector3d(1.0, 0.0, 0.0);

  Populations() = default;
  explicit Populations(const Eigen::Vector3d& values) : p(values) {}
  Populations(double p1, double p2, double p3) : p(p1, p2, p3) {}

  double p1() const { return p[0]; }
  double p2() const { return p[1]; }
  double p3() const { return p[2]; }
  double trace() const { return p.sum(); }

  /// Throws ConfigError unless every entry is in [0, 1] and the sum is 1.
  void validate(double tolerance = 1e-12) const;
};

/// Closed-form stationary populations for occupations n31, n32.
Populations steady_state(double n31, double n32);

/// Generator G of dp/dt = G p for the three populations. Columns sum to zero.
Eigen::Matrix3d rate_generator(const TransitionRates& r31, const TransitionRates& r32);

/// p(t) = exp(G t) p(0).
Populations evolve_populations(const Populations& initial, const TransitionRates& r31, const TransitionRates& r32,
                               double t);

/// True when the steady state puts more weight on |2> than on |1>.
inline bool inversion_predicate(double n31, double n32) { return n32 < n31; }

}  // namespace lambdatherm
