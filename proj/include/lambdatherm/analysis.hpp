#pragma once

#include <string>
#include <vector>

#include "lambdatherm/atom.hpp"
#include "lambdatherm/optics.hpp"
#include "lambdatherm/quadrature.hpp"

namespace lambdatherm {

/// Boltzmann populations for level energies (0, hbar(w31 - w32), hbar w31).
Populations thermal_populations(const AtomModel& atom, double T);

/// Frobenius distance between diagonal density matrices.
double distance_to_thermal(const Populations& p, const AtomModel& atom, double T);

struct TemperatureBracket {
  double lo = 1.0;
  double hi = 5000.0;
};

struct ThermalComparison {
  double closest_T = 0;
  double distance = 0;
  bool is_thermal = false;
  bool at_boundary = false;  // minimum sits on the search bracket edge
};

/// Global minimum of distance_to_thermal over T in the bracket: 64-point
/// log-spaced pre-scan, then golden-section refinement of every local
/// minimum to within 0.001 K.
ThermalComparison closest_thermal(const Populations& p, const AtomModel& atom, TemperatureBracket search = {},
                                  double thermal_threshold = 1e-3);

// Everything needed to evaluate one (z, delta) point.
struct SystemConfig {
  DielectricModel<double> material;
  AtomModel atom;
  double T_W = 0;
  double T_M = 0;
  QuadratureSpec quadrature;
  TemperatureBracket search;
  double thermal_threshold = 1e-3;

  void validate() const;
};

struct PointRecord {
  double z = 0;
  double delta = 0;
  TransitionEnvironment env31;
  TransitionEnvironment env32;
  Populations populations;
  ThermalComparison thermal;
  std::string error;  // empty on success

  bool ok() const { return error.empty(); }
};

PointRecord evaluate_point(const SystemConfig& system, double z, double delta);

struct ScanGrid {
  std::vector<double> z;
  std::vector<double> delta;

  std::size_t size() const { return z.size() * delta.size(); }
};

// Records are stored delta-major: index = i_delta * z.size() + i_z.
struct ScanResult {
  ScanGrid grid;
  std::vector<PointRecord> records;
};

/// Evaluates every grid point on up to `threads` workers. Output order and
/// values do not depend on the thread count. Failures are recorded per point.
ScanResult scan(const SystemConfig& system, const ScanGrid& grid, unsigned threads = 1);

}  // namespace lambdatherm
