#include "lambdatherm/analysis.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

namespace lambdatherm {

Populations thermal_populations(const AtomModel& atom, double T) {
  if (!(T > 0)) throw NumericalError("thermal populations require T > 0");
  const double beta = constants::hbar / (constants::boltzmann * T);
  const Eigen::Vector3d weights(1.0, std::exp(-beta * (atom.omega_31 - atom.omega_32)), std::exp(-beta * atom.omega_31));
  return Populations(weights / weights.sum());
}

double distance_to_thermal(const Populations& p, const AtomModel& atom, double T) {
  return (p.p - thermal_populations(atom, T).p).norm();
}

namespace {

// Golden-section search for a minimum of f on [a, b], in log T.
double golden_section(const std::function<double(double)>& f, double log_a, double log_b, double tolerance_T) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = log_b - inv_phi * (log_b - log_a);
  double d = log_a + inv_phi * (log_b - log_a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < 200 && std::exp(log_b) - std::exp(log_a) > tolerance_T; ++i) {
    if (fc <= fd) {
      log_b = d;
      d = c;
      fd = fc;
      c = log_b - inv_phi * (log_b - log_a);
      fc = f(c);
    } else {
      log_a = c;
      c = d;
      fc = fd;
      d = log_a + inv_phi * (log_b - log_a);
      fd = f(d);
    }
  }
  return 0.5 * (log_a + log_b);
}

}  // namespace

ThermalComparison closest_thermal(const Populations& p, const AtomModel& atom, TemperatureBracket search,
                                  double thermal_threshold) {
  if (!(search.lo > 0) || !(search.hi > search.lo)) throw NumericalError("temperature bracket must satisfy 0 < lo < hi");
  const auto squared = [&](double log_T) { return (p.p - thermal_populations(atom, std::exp(log_T)).p).squaredNorm(); };

  constexpr int kSamples = 64;
  const double log_lo = std::log(search.lo);
  const double log_hi = std::log(search.hi);
  std::array<double, kSamples> log_T{};
  std::array<double, kSamples> value{};
  for (int i = 0; i < kSamples; ++i) {
    log_T[i] = log_lo + (log_hi - log_lo) * i / (kSamples - 1);
    value[i] = squared(log_T[i]);
  }

  double best_log_T = log_T[0];
  double best_value = value[0];
  for (int i = 0; i < kSamples; ++i) {
    const bool left_ok = i == 0 || value[i] <= value[i - 1];
    const bool right_ok = i == kSamples - 1 || value[i] <= value[i + 1];
    if (!left_ok || !right_ok) continue;
    const double a = log_T[std::max(i - 1, 0)];
    const double b = log_T[std::min(i + 1, kSamples - 1)];
    const double candidate = golden_section(squared, a, b, 1e-3);
    const double candidate_value = squared(candidate);
    if (candidate_value < best_value) {
      best_value = candidate_value;
      best_log_T = candidate;
    }
  }

  ThermalComparison out;
  out.closest_T = std::exp(best_log_T);
  out.distance = std::sqrt(best_value);
  out.is_thermal = out.distance < thermal_threshold;
  out.at_boundary = out.closest_T - search.lo < 0.01 || search.hi - out.closest_T < 0.01;
  return out;
}

void SystemConfig::validate() const {
  material.validate();
  atom.validate();
  if (!(T_W >= 0)) throw ConfigError("T_W", "must be non-negative");
  if (!(T_M >= 0)) throw ConfigError("T_M", "must be non-negative");
  quadrature.validate();
  if (!(search.lo > 0) || !(search.hi > search.lo)) throw ConfigError("T_search", "need 0 < lo < hi");
  if (!(thermal_threshold > 0)) throw ConfigError("thermal_threshold", "must be positive");
}

PointRecord evaluate_point(const SystemConfig& system, double z, double delta) {
  PointRecord record;
  record.z = z;
  record.delta = delta;
  try {
    const GeometryPoint geom{z, delta};
    for (Transition t : {Transition::k31, Transition::k32}) {
      const AlphaPair alphas =
          alpha_pair(system.atom.omega(t), geom, system.material, system.atom.weights(t), system.quadrature);
      (t == Transition::k31 ? record.env31 : record.env32) =
          transition_rates(system.atom, t, alphas, system.T_W, system.T_M);
    }
    record.populations = steady_state(record.env31.n_eff, record.env32.n_eff);
    record.thermal = closest_thermal(record.populations, system.atom, system.search, system.thermal_threshold);
  } catch (const std::exception& e) {
    record.error = e.what();
  }
  return record;
}

ScanResult scan(const SystemConfig& system, const ScanGrid& grid, unsigned threads) {
  ScanResult result;
  result.grid = grid;
  result.records.resize(grid.size());
  const std::size_t nz = grid.z.size();

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < result.records.size(); i = next++)
      result.records[i] = evaluate_point(system, grid.z[i % nz], grid.delta[i / nz]);
  };

  const unsigned count = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(grid.size(), 1)));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(count);
    for (unsigned i = 0; i < count; ++i) pool.emplace_back(worker);
  }
  return result;
}

}  // namespace lambdatherm
