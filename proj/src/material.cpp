#include "lambdatherm/material.hpp"

#include <cstdlib>
#include <fstream>
#include <map>

#include "lambdatherm/keyvalue.hpp"

#ifndef LAMBDATHERM_DATA_DIR
#define LAMBDATHERM_DATA_DIR "data"
#endif

namespace lambdatherm {

DielectricModel<double> parse_material(std::istream& in, std::string_view source) {
  std::map<std::string, double*> slots;
  DielectricModel<double> model;
  slots["eps_inf"] = &model.eps_inf;
  slots["omega_L"] = &model.omega_L;
  slots["omega_T"] = &model.omega_T;
  slots["gamma_damp"] = &model.gamma_damp;

  std::map<std::string, bool> seen;
  for (const auto& entry : parse_key_values(in, source)) {
    auto slot = slots.find(entry.key);
    if (slot == slots.end()) throw ConfigError(entry.key, "unknown material key in " + std::string(source));
    *slot->second = parse_number(entry.value, entry.key);
    seen[entry.key] = true;
  }
  for (const auto& [key, _] : slots)
    if (!seen[key]) throw ConfigError(key, "missing from material " + std::string(source));
  model.validate();
  return model;
}

DielectricModel<double> read_material(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("material", "cannot open " + path.string());
  return parse_material(in, path.string());
}

std::filesystem::path data_directory() {
  if (const char* env = std::getenv("LAMBDATHERM_DATA_DIR"); env && *env) return env;
  return LAMBDATHERM_DATA_DIR;
}

DielectricModel<double> load_material(std::string_view name) {
  const std::filesystem::path preset = data_directory() / "materials" / (std::string(name) + ".mat");
  if (name.find('/') == std::string_view::npos && std::filesystem::exists(preset)) return read_material(preset);
  return read_material(std::filesystem::path(name));
}

double surface_mode_frequency(const DielectricModel<double>& model) {
  // With damping Re eps dips below -1 just above omega_T and climbs back
  // through -1 before omega_L; the upper crossing is the surface mode.
  auto f = [&](double w) { return permittivity(model, w).real() + 1.0; };
  constexpr int samples = 4096;
  const double span = model.omega_L - model.omega_T;
  double lo = 0, hi = 0;
  for (int i = samples; i > 0; --i) {
    const double a = model.omega_T + span * (i - 1) / samples;
    const double b = model.omega_T + span * i / samples;
    if (a > model.omega_T && f(a) < 0 && f(b) >= 0) {
      lo = a;
      hi = b;
      break;
    }
  }
  if (hi == 0) throw NumericalError("no surface mode: Re eps stays above -1");
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace lambdatherm
