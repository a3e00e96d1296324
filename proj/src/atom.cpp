#include "lambdatherm/atom.hpp"

#include <unsupported/Eigen/MatrixFunctions>

namespace lambdatherm {

double effective_occupation(double omega, double T_W, double T_M, const AlphaPair& alphas) {
  const double total = alphas.total();
  if (!(total > 0)) throw NumericalError("vanishing total coupling");
  return (bose_occupation(omega, T_W) * alphas.alpha_W + bose_occupation(omega, T_M) * alphas.alpha_M) / total;
}

double vacuum_decay_rate(double omega, double dipole) {
  using namespace constants;
  return omega * omega * omega * dipole * dipole /
         (3.0 * pi * vacuum_permittivity * hbar * speed_of_light * speed_of_light * speed_of_light);
}

double unit_rate_dipole(double omega) { return 1.0 / std::sqrt(vacuum_decay_rate(omega, 1.0)); }

const char* to_string(Transition t) { return t == Transition::k31 ? "31" : "32"; }

void AtomModel::validate() const {
  if (!(omega_32 > 0)) throw ConfigError("omega_32", "must be positive");
  if (!(omega_31 > 0)) throw ConfigError("omega_31", "must be positive");
  if (omega_31 == omega_32) throw ConfigError("omega_31", "omega_31 and omega_32 must differ");
  if (!(omega_31 > omega_32)) throw ConfigError("omega_31", "level |2> must lie above |1>: need omega_31 > omega_32");
  if (!(d31 > 0)) throw ConfigError("d31", "must be positive");
  if (!(d32 > 0)) throw ConfigError("d32", "must be positive");
  validate_dipole_weights(weights_31, "weights_31");
  validate_dipole_weights(weights_32, "weights_32");
}

AtomModel AtomModel::with_unit_rate(double omega_31, double omega_32, double reference_omega) {
  AtomModel atom;
  atom.omega_31 = omega_31;
  atom.omega_32 = omega_32;
  atom.d31 = atom.d32 = unit_rate_dipole(reference_omega);
  return atom;
}

TransitionEnvironment transition_rates(const AtomModel& atom, Transition which, const AlphaPair& alphas, double T_W,
                                       double T_M) {
  const double omega = atom.omega(which);
  TransitionEnvironment env;
  env.alpha_W = alphas.alpha_W;
  env.alpha_M = alphas.alpha_M;
  env.n_eff = effective_occupation(omega, T_W, T_M, alphas);
  env.T_eff = effective_temperature(omega, env.n_eff);
  env.gamma0 = vacuum_decay_rate(omega, atom.dipole(which));
  const double coupled = env.gamma0 * alphas.total();
  env.gamma_down = coupled * (1.0 + env.n_eff);
  env.gamma_up = coupled * env.n_eff;
  return env;
}

void Populations::validate(double tolerance) const {
  if (!p.allFinite() || (p.array() < -tolerance).any() || (p.array() > 1.0 + tolerance).any())
    throw ConfigError("populations", "entries must lie in [0, 1]");
  if (std::abs(trace() - 1.0) > tolerance) throw ConfigError("populations", "entries must sum to 1");
}

Populations steady_state(double n31, double n32) {
  if (!(n31 >= 0) || !(n32 >= 0)) throw NumericalError("occupations must be non-negative");
  const double z = 3.0 * n31 * n32 + n31 + n32;
  if (z < 1e-300) throw NumericalError("steady state not unique at zero temperature");
  if (n31 > 1 && n32 > 1) {
    // Divide through by n31 n32 to stay finite in the high-temperature limit.
    const Eigen::Vector3d scaled(1.0 + 1.0 / n31, 1.0 + 1.0 / n32, 1.0);
    return Populations(scaled / scaled.sum());
  }
  return Populations(Eigen::Vector3d(n32 * (1.0 + n31), n31 * (1.0 + n32), n31 * n32) / z);
}

Eigen::Matrix3d rate_generator(const TransitionRates& r31, const TransitionRates& r32) {
  for (double rate : {r31.down, r31.up, r32.down, r32.up})
    if (!(rate >= 0)) throw NumericalError("transition rates must be non-negative");
  Eigen::Matrix3d g;
  // clang-format off
  g << -r31.up,  0.0,     r31.down,
        0.0,    -r32.up,  r32.down,
        r31.up,  r32.up, -(r31.down + r32.down);
  // clang-format on
  return g;
}

Populations evolve_populations(const Populations& initial, const TransitionRates& r31, const TransitionRates& r32,
                               double t) {
  if (!(t >= 0)) throw NumericalError("evolution time must be non-negative");
  const Eigen::Matrix3d g = rate_generator(r31, r32);
  if (t == 0) return initial;
  const Eigen::Matrix3d propagator = (g * t).exp();
  return Populations(propagator * initial.p);
}

}  // namespace lambdatherm
