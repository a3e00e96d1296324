#include "lambdatherm/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>

#include "lambdatherm/keyvalue.hpp"

#ifndef LAMBDATHERM_VERSION
#define LAMBDATHERM_VERSION "0.0.0"
#endif

namespace lambdatherm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::map<std::string, std::string> kDescriptions = {
    {"rates", "z-scan of channel weights, effective occupations and rates Gamma(+-w) per transition"},
    {"teff-map", "effective temperatures of both transitions over the z x delta grid"},
    {"steady", "steady-state populations over the grid"},
    {"thermal-track", "steady state against its closest thermal state over the grid"},
    {"evolve", "time trace of the populations at a single (z, delta) point"},
    {"crossover", "height z* where alpha_W = alpha_M, per transition and slab thickness"},
};

std::vector<std::string> per_transition(std::initializer_list<const char*> names) {
  std::vector<std::string> out;
  for (const char* t : {"31", "32"})
    for (const char* name : names) out.push_back(std::string(name) + "_" + t);
  return out;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

double value_or_nan(const PointRecord& r, double v) { return r.ok() ? v : kNaN; }

std::vector<Cell> row_for(const std::string& command, const PointRecord& r) {
  std::vector<Cell> row = {r.z, r.delta};
  auto env_cells = [&](std::initializer_list<double TransitionEnvironment::*> fields) {
    for (const TransitionEnvironment* env : {&r.env31, &r.env32})
      for (auto field : fields) row.emplace_back(value_or_nan(r, env->*field));
  };
  if (command == "rates") {
    for (const TransitionEnvironment* env : {&r.env31, &r.env32}) {
      row.emplace_back(value_or_nan(r, env->alpha_W));
      row.emplace_back(value_or_nan(r, env->alpha_M));
      row.emplace_back(value_or_nan(r, env->n_eff));
      row.emplace_back(value_or_nan(r, env->T_eff));
      row.emplace_back(value_or_nan(r, env->gamma0));
      row.emplace_back(value_or_nan(r, env->gamma_down));
      row.emplace_back(value_or_nan(r, env->gamma_up));
      row.emplace_back(value_or_nan(r, env->gamma_down / env->gamma0));
      row.emplace_back(value_or_nan(r, env->gamma_up / env->gamma0));
    }
  } else if (command == "teff-map") {
    env_cells({&TransitionEnvironment::T_eff, &TransitionEnvironment::n_eff, &TransitionEnvironment::alpha_W,
               &TransitionEnvironment::alpha_M});
  } else if (command == "steady") {
    for (int i = 0; i < 3; ++i) row.emplace_back(value_or_nan(r, r.populations.p[i]));
    env_cells({&TransitionEnvironment::T_eff});
    row.emplace_back(r.ok() && inversion_predicate(r.env31.n_eff, r.env32.n_eff));
  } else if (command == "thermal-track") {
    for (int i = 0; i < 3; ++i) row.emplace_back(value_or_nan(r, r.populations.p[i]));
    env_cells({&TransitionEnvironment::T_eff});
    row.emplace_back(value_or_nan(r, r.thermal.closest_T));
    row.emplace_back(value_or_nan(r, r.thermal.distance));
    row.emplace_back(r.ok() && r.thermal.is_thermal);
    row.emplace_back(r.ok() && r.thermal.at_boundary);
  }
  row.emplace_back(r.error);
  return row;
}

std::string point_label(double z, double delta) {
  return "z=" + format_number(z) + " delta=" + format_number(delta);
}

CommandOutput run_grid(const std::string& command, const ScenarioConfig& config, unsigned threads) {
  if (config.z.empty()) throw ConfigError("z", "missing required key");
  const ScanResult result = scan(config.system(), {config.z, config.delta}, threads);
  CommandOutput out;
  out.table.columns = command_columns(command);
  for (const PointRecord& r : result.records) {
    out.table.rows.push_back(row_for(command, r));
    if (!r.ok()) out.failures.push_back(point_label(r.z, r.delta) + ": " + r.error);
  }
  return out;
}

CommandOutput run_evolve(const ScenarioConfig& config) {
  if (config.z.size() != 1) throw ConfigError("z", "evolve needs exactly one z value");
  if (config.delta.size() != 1) throw ConfigError("delta", "evolve needs exactly one delta value");
  CommandOutput out;
  out.table.columns = command_columns("evolve");
  const PointRecord point = evaluate_point(config.system(), config.z.front(), config.delta.front());
  if (!point.ok()) {
    out.failures.push_back(point_label(point.z, point.delta) + ": " + point.error);
    return out;
  }
  const TransitionRates r31 = point.env31.rates();
  const TransitionRates r32 = point.env32.rates();

  double t_max = config.t_max.value_or(0.0);
  if (!config.t_max) {
    // Ten times the slowest relaxation time of the rate generator.
    const Eigen::Vector3cd eigenvalues = rate_generator(r31, r32).eigenvalues();
    double slowest = std::numeric_limits<double>::infinity();
    const double scale = eigenvalues.cwiseAbs().maxCoeff();
    for (const auto& lambda : eigenvalues)
      if (std::abs(lambda) > 1e-12 * scale) slowest = std::min(slowest, std::abs(lambda.real()));
    t_max = std::isfinite(slowest) && slowest > 0 ? 10.0 / slowest : 1.0;
  }
  for (int i = 0; i < config.t_points; ++i) {
    const double t = t_max * i / (config.t_points - 1);
    const Populations p = evolve_populations(config.initial, r31, r32, t);
    out.table.rows.push_back({t, p.p1(), p.p2(), p.p3(), p.trace()});
  }
  return out;
}

CommandOutput run_crossover(const ScenarioConfig& config) {
  CommandOutput out;
  out.table.columns = command_columns("crossover");
  for (double delta : config.delta) {
    for (Transition t : {Transition::k31, Transition::k32}) {
      std::vector<Cell> row = {delta, std::string(to_string(t)), config.atom.omega(t)};
      try {
        row.emplace_back(crossover_distance(config.atom.omega(t), delta, config.material,
                                            {config.crossover_z_min, config.crossover_z_max}, config.atom.weights(t),
                                            config.quadrature));
        row.emplace_back(std::string());
      } catch (const NumericalError& e) {
        row.emplace_back(kNaN);
        row.emplace_back(std::string(e.what()));
        out.failures.push_back("delta=" + format_number(delta) + " transition=" + to_string(t) + ": " + e.what());
      }
      out.table.rows.push_back(std::move(row));
    }
  }
  return out;
}

std::string columns_help() {
  std::ostringstream s;
  s << "Output columns (CSV header order; JSON rows use the same keys):\n";
  for (const auto& [name, _] : kDescriptions) {
    s << "  " << name << ":";
    for (const auto& c : command_columns(name)) s << ' ' << c;
    s << '\n';
  }
  s << "Environment: LAMBDATHERM_REL_TOL, LAMBDATHERM_ABS_TOL, LAMBDATHERM_MAX_SUBDIVISIONS override the config;\n"
       "--rel-tol overrides both. Exit codes: 0 ok, 2 configuration error, 3 numerical failure.";
  return s.str();
}

void apply_environment(QuadratureSpec& spec) {
  if (const char* v = std::getenv("LAMBDATHERM_REL_TOL"); v && *v) spec.rel_tol = parse_number(v, "LAMBDATHERM_REL_TOL");
  if (const char* v = std::getenv("LAMBDATHERM_ABS_TOL"); v && *v) spec.abs_tol = parse_number(v, "LAMBDATHERM_ABS_TOL");
  if (const char* v = std::getenv("LAMBDATHERM_MAX_SUBDIVISIONS"); v && *v) {
    const double n = parse_number(v, "LAMBDATHERM_MAX_SUBDIVISIONS");
    if (n != std::floor(n) || n < 1 || n > 1e7) throw ConfigError("LAMBDATHERM_MAX_SUBDIVISIONS", "must be a positive integer");
    spec.max_subdivisions = static_cast<int>(n);
  }
}

}  // namespace

const char* version() { return LAMBDATHERM_VERSION; }

std::vector<std::string> command_columns(const std::string& command) {
  const std::vector<std::string> grid = {"z", "delta"};
  if (command == "rates")
    return concat(concat(grid, per_transition({"alpha_W", "alpha_M", "n_eff", "T_eff", "gamma0", "gamma_down",
                                               "gamma_up", "gamma_down_norm", "gamma_up_norm"})),
                  {"error"});
  if (command == "teff-map")
    return concat(concat(grid, per_transition({"T_eff", "n_eff", "alpha_W", "alpha_M"})), {"error"});
  if (command == "steady")
    return concat(concat(concat(grid, {"p1", "p2", "p3"}), per_transition({"T_eff"})), {"inverted", "error"});
  if (command == "thermal-track")
    return concat(concat(concat(grid, {"p1", "p2", "p3"}), per_transition({"T_eff"})),
                  {"closest_T", "distance", "is_thermal", "at_boundary", "error"});
  if (command == "evolve") return {"t", "p1", "p2", "p3", "trace"};
  if (command == "crossover") return {"delta", "transition", "omega", "z_star", "error"};
  throw ConfigError("command", "unknown command '" + command + "'");
}

CommandOutput execute(const std::string& command, const ScenarioConfig& config, unsigned threads) {
  if (command == "evolve") return run_evolve(config);
  if (command == "crossover") return run_crossover(config);
  command_columns(command);  // rejects unknown names
  return run_grid(command, config, threads);
}

int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steady states and effective temperatures of a three-level atom near a slab out of thermal equilibrium",
               "lambdatherm"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());
  app.footer(columns_help());

  std::string config_path;
  std::string out_path;
  std::string format_flag;
  unsigned threads = 1;
  std::optional<double> rel_tol;
  app.add_option("--config", config_path, "scenario file (key = value)")->required();
  app.add_option("--out", out_path, "output file (default: stdout)");
  app.add_option("--format", format_flag, "csv or json (overrides the config)")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", threads, "worker threads for grid scans")->check(CLI::Range(1u, 1024u));
  app.add_option("--rel-tol", rel_tol, "quadrature relative tolerance")->check(CLI::PositiveNumber);
  for (const auto& [name, description] : kDescriptions) app.add_subcommand(name, description)->fallthrough();

  std::vector<const char*> raw;
  raw.reserve(argv.size());
  for (const auto& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  ScenarioConfig config;
  try {
    config = load_config(config_path);
    apply_environment(config.quadrature);
    if (rel_tol) config.quadrature.rel_tol = *rel_tol;
    config.quadrature.validate();
    if (!format_flag.empty()) config.format = parse_format(format_flag);
  } catch (const std::exception& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  }

  CommandOutput result;
  try {
    result = execute(command, config, threads);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumericalFailure;
  }

  Metadata metadata = {{"generator", std::string("lambdatherm ") + version()}, {"command", command}};
  for (auto& kv : config.resolved_settings()) metadata.push_back(std::move(kv));

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      err << "configuration error: cannot write " << out_path << '\n';
      return kExitConfigError;
    }
  }
  std::ostream& sink = out_path.empty() ? out : file;
  if (config.format == OutputFormat::csv)
    write_csv(sink, result.table, metadata);
  else
    write_json(sink, result.table, metadata);

  for (const auto& failure : result.failures) err << "numerical failure at " << failure << '\n';
  return result.failures.empty() ? kExitOk : kExitNumericalFailure;
}

}  // namespace lambdatherm
