#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "thermchan/cli/table.hpp"
#include "thermchan/experiment.hpp"

namespace thermchan::cli {

enum class OutputFormat { Csv, Json };

// Every field a command may consume. Which ones are required, and which
// flags are accepted at all, depends on `command`.
struct RunConfig {
  std::string command;
  std::optional<double> nbar;
  std::optional<double> n_prime;
  double n_T = 0.0;
  double n0 = 10.0;
  std::string probe = "coherent";
  std::optional<double> y_true;
  double theta = 0.0;
  std::uint64_t samples = 100000;
  std::uint64_t reps = 200;
  std::uint64_t seed = 0;
  std::uint64_t grid = 101;
  std::string estimator = "mle";
  std::optional<std::string> input;
  std::optional<double> Omega;
  std::optional<double> omega;
  std::optional<double> temperature;
  std::optional<std::string> out;
  OutputFormat format = OutputFormat::Csv;
};

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitPhysicality = 3 };

Scenario scenario_of(const RunConfig& config);
ProbeSpec probe_of(const RunConfig& config);
nlohmann::ordered_json config_echo(const RunConfig& config);

Report cmd_qfi_scan(const RunConfig& config);
Report cmd_channel_map(const RunConfig& config);
Report cmd_simulate(const RunConfig& config);
Report cmd_estimate(const RunConfig& config);
Report cmd_campaign(const RunConfig& config);
Report cmd_hawking(const RunConfig& config);

// Dispatches on config.command.
Report run_command(const RunConfig& config);

// Full command-line entry point. Writes the report to --out (or `out`) and
// diagnostics to `err`; returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace thermchan::cli
