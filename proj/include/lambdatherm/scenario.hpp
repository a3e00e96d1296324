#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lambdatherm/analysis.hpp"

namespace lambdatherm {

enum class OutputFormat { csv, json };

OutputFormat parse_format(std::string_view text);
const char* to_string(OutputFormat format);

// A fully resolved run description. Built from a flat key/value file:
//
//   material = sic                # bundled preset name or path to a .mat file
//   omega_31 = omega_p            # number [rad/s] or products/quotients of
//   omega_32 = omega_r            #   numbers with omega_r, omega_p
//   T_W = 570                     # [K]
//   T_M = 170
//   z = 0.36e-6                   # list "a, b, ..." or z_min/z_max/z_points (log)
//   delta = 1e-2                  # same forms; default 1 cm
//
// Optional: weights, weights_31, weights_32, d31, d32, rel_tol, abs_tol,
// max_subdivisions, format, T_search_min, T_search_max, thermal_threshold,
// t_max, t_points, initial, crossover_z_min, crossover_z_max.
struct ScenarioConfig {
  std::string material_name = "sic";
  DielectricModel<double> material;
  double omega_r = 0;  // transverse resonance of the material
  double omega_p = 0;  // surface-polariton frequency of the material
  std::string omega_31_expr;
  std::string omega_32_expr;
  AtomModel atom;
  double T_W = 0;
  double T_M = 0;
  std::vector<double> z;  // empty when the file gives none
  std::vector<double> delta = {1e-2};
  QuadratureSpec quadrature;
  OutputFormat format = OutputFormat::csv;
  TemperatureBracket search;
  double thermal_threshold = 1e-3;
  std::optional<double> t_max;
  int t_points = 101;
  Populations initial;
  double crossover_z_min = 1e-9;
  double crossover_z_max = 1e-2;

  SystemConfig system() const;

  /// Every resolved setting, defaults included, as ordered key/value text.
  std::vector<std::pair<std::string, std::string>> resolved_settings() const;
};

ScenarioConfig parse_config(std::istream& in, std::string_view source);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Evaluates "2*omega_r", "omega_p", "omega_r/2", "1.2e14", ...
double parse_frequency(std::string_view expression, double omega_r, double omega_p, const std::string& key);

/// `points` log-spaced values from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, int points);

/// Fixed-width textual form used for all numbers in metadata and CSV output.
std::string format_number(double value);

}  // namespace lambdatherm
