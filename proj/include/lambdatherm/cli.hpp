#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "lambdatherm/scenario.hpp"
#include "lambdatherm/table.hpp"

namespace lambdatherm {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitNumericalFailure = 3;

const char* version();

/// Column order for each subcommand's output table.
std::vector<std::string> command_columns(const std::string& command);

struct CommandOutput {
  Table table;
  std::vector<std::string> failures;  // one message per failing grid point
};

/// Runs one subcommand on a resolved scenario. Throws ConfigError for
/// scenario/command mismatches (e.g. a grid command without z values).
CommandOutput execute(const std::string& command, const ScenarioConfig& config, unsigned threads);

/// Full front end: parses argv (argv[0] is the program name), loads the
/// config, applies environment and flag overrides, runs the subcommand and
/// writes the table. Returns kExitOk, kExitConfigError or
/// kExitNumericalFailure.
int run_command(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace lambdatherm
