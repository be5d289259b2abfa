#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "kdvbbm/cli/config.hpp"

namespace kdvbbm::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitConfig = 2,
  kExitRuntime = 3,
};

struct Check {
  std::string name;
  bool passed;
  double value;
  double limit;
};

struct CommandResult {
  std::vector<Check> checks;
  json details = json::object();

  bool passed() const;
  json summary(const std::string& command) const;
};

const std::vector<std::string>& command_names();

/// Runs one command with a fully merged configuration, writing its CSV and
/// JSON artifacts plus summary.json into config["output"].
CommandResult run_command(const std::string& name, const json& config, std::ostream& log);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Full entry point: parses arguments, merges configuration, dispatches and
/// maps failures to exit codes.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kdvbbm::cli
