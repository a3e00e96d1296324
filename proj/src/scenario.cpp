#include "lambdatherm/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "lambdatherm/keyvalue.hpp"
#include "lambdatherm/material.hpp"

namespace lambdatherm {

namespace {

const std::set<std::string> kKnownKeys = {
    "material",     "omega_31",     "omega_32",     "T_W",         "T_M",          "z",
    "z_min",        "z_max",        "z_points",     "delta",       "delta_min",    "delta_max",
    "delta_points", "weights",      "weights_31",   "weights_32",  "d31",          "d32",
    "rel_tol",      "abs_tol",      "max_subdivisions", "format",  "T_search_min", "T_search_max",
    "thermal_threshold", "t_max",   "t_points",     "initial",     "crossover_z_min", "crossover_z_max"};

class Entries {
 public:
  explicit Entries(const std::vector<KeyValueEntry>& entries) {
    for (const auto& e : entries) {
      if (!kKnownKeys.count(e.key)) throw ConfigError(e.key, "unknown key");
      values_[e.key] = e.value;
    }
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::string& text(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError(key, "missing required key");
    return it->second;
  }

  double positive(const std::string& key) const {
    const double v = parse_number(text(key), key);
    if (!(v > 0) || !std::isfinite(v)) throw ConfigError(key, "must be positive");
    return v;
  }
  double positive_or(const std::string& key, double fallback) const { return has(key) ? positive(key) : fallback; }

  int count(const std::string& key, int minimum) const {
    const double v = parse_number(text(key), key);
    if (v != std::floor(v) || v < minimum || v > 1e7)
      throw ConfigError(key, "must be an integer >= " + std::to_string(minimum));
    return static_cast<int>(v);
  }

  Eigen::Vector3d triple(const std::string& key) const {
    const auto items = split_list(text(key));
    if (items.size() != 3) throw ConfigError(key, "expected three comma-separated values");
    return {parse_number(items[0], key), parse_number(items[1], key), parse_number(items[2], key)};
  }

  // Either an explicit list `key = a, b, ...` or key_min/key_max/key_points.
  std::optional<std::vector<double>> grid(const std::string& key) const {
    const bool listed = has(key);
    const bool ranged = has(key + "_min") || has(key + "_max") || has(key + "_points");
    if (listed && ranged) throw ConfigError(key, "give either a list or a _min/_max/_points range, not both");
    std::vector<double> values;
    if (listed) {
      for (const auto& item : split_list(text(key))) values.push_back(parse_number(item, key));
    } else if (ranged) {
      const double lo = positive(key + "_min");
      const double hi = positive(key + "_max");
      const int points = count(key + "_points", 1);
      if (points > 1 && !(hi > lo)) throw ConfigError(key + "_max", "must exceed " + key + "_min");
      values = log_grid(lo, hi, points);
    } else {
      return std::nullopt;
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!(values[i] > 0) || !std::isfinite(values[i])) throw ConfigError(key, "grid values must be positive");
      if (i > 0 && !(values[i] > values[i - 1])) throw ConfigError(key, "grid must be strictly increasing");
    }
    return values;
  }

 private:
  std::map<std::string, std::string> values_;
};

std::string join(const Eigen::Vector3d& v) {
  return format_number(v[0]) + ", " + format_number(v[1]) + ", " + format_number(v[2]);
}

std::string join(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ", " : "") + format_number(values[i]);
  return out;
}

}  // namespace

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw ConfigError("format", "expected csv or json, got '" + std::string(text) + "'");
}

const char* to_string(OutputFormat format) { return format == OutputFormat::csv ? "csv" : "json"; }

std::string format_number(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return buffer;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (points < 1) throw ConfigError("", "grid needs at least one point");
  if (points == 1) return {lo};
  std::vector<double> values(static_cast<std::size_t>(points));
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < points; ++i) values[i] = std::exp(a + (b - a) * i / (points - 1));
  values.front() = lo;
  values.back() = hi;
  return values;
}

double parse_frequency(std::string_view expression, double omega_r, double omega_p, const std::string& key) {
  double value = 1.0;
  char op = '*';
  std::size_t start = 0;
  bool empty = true;
  while (start <= expression.size()) {
    const std::size_t stop = expression.find_first_of("*/", start);
    const std::string token = trim(expression.substr(start, stop == std::string_view::npos ? expression.npos : stop - start));
    if (token.empty()) throw ConfigError(key, "malformed frequency expression '" + std::string(expression) + "'");
    double factor = 0;
    if (token == "omega_r")
      factor = omega_r;
    else if (token == "omega_p")
      factor = omega_p;
    else
      factor = parse_number(token, key);
    value = op == '*' ? value * factor : value / factor;
    empty = false;
    if (stop == std::string_view::npos) break;
    op = expression[stop];
    start = stop + 1;
  }
  if (empty || !(value > 0) || !std::isfinite(value)) throw ConfigError(key, "must be a positive frequency");
  return value;
}

ScenarioConfig parse_config(std::istream& in, std::string_view source) {
  const Entries e(parse_key_values(in, source));
  ScenarioConfig cfg;

  if (e.has("material")) cfg.material_name = e.text("material");
  try {
    cfg.material = load_material(cfg.material_name);
  } catch (const ConfigError& err) {
    throw ConfigError("material", err.what());
  }
  cfg.omega_r = cfg.material.omega_T;
  cfg.omega_p = surface_mode_frequency(cfg.material);

  cfg.omega_31_expr = e.text("omega_31");
  cfg.omega_32_expr = e.text("omega_32");
  const double omega_31 = parse_frequency(cfg.omega_31_expr, cfg.omega_r, cfg.omega_p, "omega_31");
  const double omega_32 = parse_frequency(cfg.omega_32_expr, cfg.omega_r, cfg.omega_p, "omega_32");
  cfg.atom = AtomModel::with_unit_rate(omega_31, omega_32, cfg.omega_r);
  if (e.has("d31")) cfg.atom.d31 = e.positive("d31");
  if (e.has("d32")) cfg.atom.d32 = e.positive("d32");
  if (e.has("weights")) cfg.atom.weights_31 = cfg.atom.weights_32 = e.triple("weights");
  if (e.has("weights_31")) cfg.atom.weights_31 = e.triple("weights_31");
  if (e.has("weights_32")) cfg.atom.weights_32 = e.triple("weights_32");
  cfg.atom.validate();

  cfg.T_W = e.positive("T_W");
  cfg.T_M = e.positive("T_M");

  if (auto z = e.grid("z")) cfg.z = std::move(*z);
  if (auto delta = e.grid("delta")) cfg.delta = std::move(*delta);

  cfg.quadrature.rel_tol = e.positive_or("rel_tol", cfg.quadrature.rel_tol);
  if (e.has("abs_tol")) {
    cfg.quadrature.abs_tol = parse_number(e.text("abs_tol"), "abs_tol");
    if (!(cfg.quadrature.abs_tol >= 0)) throw ConfigError("abs_tol", "must be non-negative");
  }
  if (e.has("max_subdivisions")) cfg.quadrature.max_subdivisions = e.count("max_subdivisions", 1);
  if (e.has("format")) cfg.format = parse_format(e.text("format"));

  cfg.search.lo = e.positive_or("T_search_min", cfg.search.lo);
  cfg.search.hi = e.positive_or("T_search_max", cfg.search.hi);
  if (!(cfg.search.hi > cfg.search.lo)) throw ConfigError("T_search_max", "must exceed T_search_min");
  cfg.thermal_threshold = e.positive_or("thermal_threshold", cfg.thermal_threshold);

  if (e.has("t_max")) cfg.t_max = e.positive("t_max");
  if (e.has("t_points")) cfg.t_points = e.count("t_points", 2);
  if (e.has("initial")) {
    cfg.initial = Populations(e.triple("initial"));
    try {
      cfg.initial.validate(1e-9);
    } catch (const ConfigError& err) {
      throw ConfigError("initial", err.what());
    }
  }
  cfg.crossover_z_min = e.positive_or("crossover_z_min", cfg.crossover_z_min);
  cfg.crossover_z_max = e.positive_or("crossover_z_max", cfg.crossover_z_max);
  if (!(cfg.crossover_z_max > cfg.crossover_z_min))
    throw ConfigError("crossover_z_max", "must exceed crossover_z_min");
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  return parse_config(in, path.string());
}

SystemConfig ScenarioConfig::system() const {
  SystemConfig s;
  s.material = material;
  s.atom = atom;
  s.T_W = T_W;
  s.T_M = T_M;
  s.quadrature = quadrature;
  s.search = search;
  s.thermal_threshold = thermal_threshold;
  return s;
}

std::vector<std::pair<std::string, std::string>> ScenarioConfig::resolved_settings() const {
  std::vector<std::pair<std::string, std::string>> out = {
      {"material", material_name},
      {"eps_inf", format_number(material.eps_inf)},
      {"omega_L", format_number(material.omega_L)},
      {"omega_T", format_number(material.omega_T)},
      {"gamma_damp", format_number(material.gamma_damp)},
      {"omega_r", format_number(omega_r)},
      {"omega_p", format_number(omega_p)},
      {"omega_31", omega_31_expr + " = " + format_number(atom.omega_31)},
      {"omega_32", omega_32_expr + " = " + format_number(atom.omega_32)},
      {"d31", format_number(atom.d31)},
      {"d32", format_number(atom.d32)},
      {"weights_31", join(atom.weights_31)},
      {"weights_32", join(atom.weights_32)},
      {"T_W", format_number(T_W)},
      {"T_M", format_number(T_M)},
      {"z", join(z)},
      {"delta", join(delta)},
      {"rel_tol", format_number(quadrature.rel_tol)},
      {"abs_tol", format_number(quadrature.abs_tol)},
      {"max_subdivisions", std::to_string(quadrature.max_subdivisions)},
      {"format", to_string(format)},
      {"T_search_min", format_number(search.lo)},
      {"T_search_max", format_number(search.hi)},
      {"thermal_threshold", format_number(thermal_threshold)},
      {"t_max", t_max ? format_number(*t_max) : std::string("auto")},
      {"t_points", std::to_string(t_points)},
      {"initial", join(initial.p)},
      {"crossover_z_min", format_number(crossover_z_min)},
      {"crossover_z_max", format_number(crossover_z_max)},
  };
  return out;
}

}  // namespace lambdatherm
