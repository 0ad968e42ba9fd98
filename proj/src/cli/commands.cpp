#include "thermchan/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "thermchan/errors.hpp"

namespace thermchan::cli {
namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidArgument(message);
}

void require_finite(const std::optional<double>& v, const char* flag) {
  if (v) require(std::isfinite(*v), std::string(flag) + " must be finite");
}

void validate_common(const RunConfig& c) {
  require_finite(c.nbar, "--nbar");
  require_finite(c.n_prime, "--nprime");
  require_finite(c.y_true, "--ytrue");
  require_finite(c.Omega, "--Omega");
  require_finite(c.omega, "--omega");
  require_finite(c.temperature, "--T");
  require(std::isfinite(c.n_T) && c.n_T >= 0.0, "--nT must be finite and >= 0");
  require(std::isfinite(c.n0) && c.n0 >= 0.0, "--n0 must be finite and >= 0");
  require(std::isfinite(c.theta), "--theta must be finite");
}

double row_grid_value(double lo, double hi, std::uint64_t i, std::uint64_t count) {
  if (count == 1) return lo;
  return lo + static_cast<double>(i) * (hi - lo) / static_cast<double>(count - 1);
}

std::vector<Cell> map_row(double x, double y, double nbar, const std::string& label) {
  const ThermalChannel ch{x, y};
  const bool physical = is_physical(ch);
  const bool on_line = on_constraint_line(ch, nbar);
  std::string cls = "OffLine";
  if (!physical) {
    cls = std::string(to_string(ChannelClass::Unphysical));
  } else if (on_line) {
    cls = std::string(to_string(classify(ch, nbar)));
  }
  return {x, y, physical, is_entanglement_breaking(ch), on_line, cls, label};
}

Report estimation_report(const EstimationResult& r) {
  Report report;
  report.columns = {"y_hat", "std_error", "fisher_used", "n_samples", "estimator", "clamped"};
  report.single_result = true;
  report.add_row({r.y_hat, r.std_error, r.fisher_used, static_cast<std::int64_t>(r.n_samples),
                  std::string(to_string(r.estimator)), r.clamped});
  return report;
}

Estimator estimator_of(const RunConfig& c) {
  if (c.estimator == "mle") return Estimator::MaxLikelihood;
  if (c.estimator == "moments") return Estimator::Moments;
  throw InvalidArgument("unknown estimator '" + c.estimator + "'");
}

double y_true_of(const RunConfig& c, const Scenario& s) { return c.y_true.value_or(s.observed_n); }

}  // namespace

Scenario scenario_of(const RunConfig& c) {
  if (c.nbar && c.n_prime) throw InvalidArgument("give either --nbar or --nprime, not both");
  if (c.n_prime) return {*c.n_prime, c.n_T};
  if (c.n_T != 0.0) throw InvalidArgument("--nT requires the observed number --nprime");
  return {c.nbar.value_or(1.0), 0.0};
}

ProbeSpec probe_of(const RunConfig& c) {
  if (c.probe == "vacuum") return VacuumProbe{};
  if (c.probe == "coherent") return CoherentProbe{c.n0};
  if (c.probe == "squeezed") return squeezed_with_energy(c.n0);
  if (c.probe == "thermal") return ThermalProbe{c.n0};
  throw InvalidArgument("unknown probe '" + c.probe + "'");
}

nlohmann::ordered_json config_echo(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["command"] = c.command;
  const auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
  };
  if (c.command == "hawking") {
    put("Omega", c.Omega);
    put("omega", c.omega);
    put("T", c.temperature);
    return j;
  }
  if (c.command == "channel-map" || c.command == "qfi-scan") j["nbar"] = c.nbar.value_or(1.0);
  if (c.command == "channel-map") {
    j["grid"] = c.grid;
    return j;
  }
  if (c.command == "qfi-scan") {
    j["n0"] = c.n0;
    j["grid"] = c.grid;
    return j;
  }
  if (c.n_prime) {
    j["nprime"] = *c.n_prime;
  } else {
    j["nbar"] = c.nbar.value_or(1.0);
  }
  j["nT"] = c.n_T;
  j["probe"] = c.probe;
  j["n0"] = c.n0;
  if (!c.input) j["ytrue"] = c.y_true.value_or(c.n_prime.value_or(c.nbar.value_or(1.0)));
  j["theta"] = c.theta;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  if (c.command == "campaign") j["reps"] = c.reps;
  if (c.command == "estimate" || c.command == "campaign") j["estimator"] = c.estimator;
  if (c.input) j["in"] = *c.input;
  return j;
}

Report cmd_qfi_scan(const RunConfig& c) {
  validate_common(c);
  require(c.grid >= 1, "--grid must be >= 1");
  const double nbar = c.nbar.value_or(1.0);
  require(nbar >= 0.0, "--nbar must be >= 0");
  const Scenario scenario{nbar, 0.0};
  const ProbeSpec coherent = CoherentProbe{c.n0};
  const ProbeSpec thermal = ThermalProbe{c.n0};
  const ProbeSpec squeezed = squeezed_with_energy(c.n0);

  Report report;
  report.columns = {"y",
                    "qfi_coherent_exact",
                    "qfi_coherent_numeric",
                    "qfi_thermal_numeric",
                    "qfi_thermal_asymptotic",
                    "qfi_squeezed_numeric",
                    "qfi_squeezed_asymptotic",
                    "fisher_homodyne_coherent"};
  for (double y : interior_grid(physical_y_range(nbar), c.grid)) {
    report.add_row({y, qfi_coherent_exact(nbar, y, c.n0), qfi_numeric(coherent, scenario, y),
                    qfi_numeric(thermal, scenario, y), qfi_thermal_asymptotic(nbar, y),
                    qfi_numeric(squeezed, scenario, y), qfi_squeezed_asymptotic(nbar, y, c.n0),
                    fisher_homodyne(coherent, scenario, y, 0.0)});
  }
  return report;
}

Report cmd_channel_map(const RunConfig& c) {
  validate_common(c);
  require(c.grid >= 2, "--grid must be >= 2");
  const double nbar = c.nbar.value_or(1.0);
  require(nbar >= 0.0, "--nbar must be >= 0");
  const double extent = 2.0 * nbar + 2.0;

  Report report;
  report.columns = {"x", "y", "physical", "entanglement_breaking", "on_constraint_line", "class", "label"};
  for (std::uint64_t i = 0; i < c.grid; ++i) {
    const double y = row_grid_value(0.0, extent, i, c.grid);
    for (std::uint64_t j = 0; j < c.grid; ++j) {
      report.add_row(map_row(row_grid_value(0.0, extent, j, c.grid), y, nbar, "grid"));
    }
  }
  const ThermalChannel hawking = hawking_channel(nbar);
  report.add_row(map_row(hawking.x, hawking.y, nbar, "Hawking"));
  report.add_row(map_row(1.0, 2.0 * nbar, nbar, "ClassicalAddNoise"));
  report.add_row(map_row(0.0, 2.0 * nbar + 1.0, nbar, "ZeroTransmission"));
  const YRange range = physical_y_range(nbar);
  report.add_row(map_row(2.0 * nbar + 1.0 - range.lo, range.lo, nbar, "PhysicalBoundary"));
  return report;
}

Report cmd_simulate(const RunConfig& c) {
  validate_common(c);
  require(c.samples >= 1, "--samples must be >= 1");
  const Scenario scenario = scenario_of(c);
  const HomodyneRecord record =
      sample_homodyne(probe_of(c), scenario, y_true_of(c, scenario), c.theta, c.samples, c.seed);
  Report report;
  report.columns = {"index", "outcome"};
  for (std::size_t i = 0; i < record.outcomes.size(); ++i) {
    report.add_row({static_cast<std::int64_t>(i), record.outcomes[i]});
  }
  return report;
}

Report cmd_estimate(const RunConfig& c) {
  validate_common(c);
  const Scenario scenario = scenario_of(c);
  const Estimator estimator = estimator_of(c);
  HomodyneRecord record;
  if (c.input) {
    record = HomodyneRecord{c.theta, read_outcomes(*c.input), probe_of(c), scenario, c.seed};
  } else {
    require(c.samples >= 1, "--samples must be >= 1");
    record = sample_homodyne(probe_of(c), scenario, y_true_of(c, scenario), c.theta, c.samples, c.seed);
  }
  return estimation_report(estimator == Estimator::MaxLikelihood ? mle_estimate(record)
                                                                 : moments_estimate(record));
}

Report cmd_campaign(const RunConfig& c) {
  validate_common(c);
  require(c.samples >= 1, "--samples must be >= 1");
  require(c.reps >= 2, "--reps must be >= 2");
  const Scenario scenario = scenario_of(c);
  const double y_true = y_true_of(c, scenario);
  const CampaignSummary s =
      run_campaign(probe_of(c), scenario, y_true, c.theta, c.samples, c.reps, c.seed, estimator_of(c));

  Report report;
  report.columns = {"y_true", "samples", "reps", "mean_y_hat", "bias", "bias_tolerance",
                    "variance", "crb", "fisher", "efficiency", "clamped_count"};
  report.single_result = true;
  report.add_row({y_true, static_cast<std::int64_t>(c.samples), static_cast<std::int64_t>(c.reps),
                  s.mean_y_hat, s.mean_y_hat - y_true,
                  3.0 * std::sqrt(s.variance / static_cast<double>(c.reps)), s.variance, s.crb,
                  s.fisher, s.efficiency, static_cast<std::int64_t>(s.clamped_count)});
  return report;
}

Report cmd_hawking(const RunConfig& c) {
  validate_common(c);
  const bool by_omega_cap = c.Omega.has_value();
  const bool by_temperature = c.omega.has_value() || c.temperature.has_value();
  require(by_omega_cap != by_temperature, "give exactly one of --Omega or (--omega and --T)");
  if (by_temperature) require(c.omega && c.temperature, "--omega and --T must be given together");

  double nbar = 0.0;
  double r = 0.0;
  if (by_omega_cap) {
    nbar = hawking_nbar_from_Omega(*c.Omega);
    r = squeeze_parameter_from_Omega(*c.Omega);
  } else {
    nbar = thermal_number_from_temperature(ModeSpec{*c.omega, *c.temperature});
    r = std::asinh(std::sqrt(nbar));
  }
  const ThermalChannel ch = hawking_channel(nbar);
  const YRange range = physical_y_range(nbar);

  Report report;
  report.columns = {"nbar", "squeeze_r", "x", "y", "y_min", "y_max"};
  report.single_result = true;
  report.add_row({nbar, r, ch.x, ch.y, range.lo, range.hi});
  return report;
}

Report run_command(const RunConfig& config) {
  static const std::map<std::string, std::function<Report(const RunConfig&)>> table = {
      {"qfi-scan", cmd_qfi_scan}, {"channel-map", cmd_channel_map}, {"simulate", cmd_simulate},
      {"estimate", cmd_estimate}, {"campaign", cmd_campaign},       {"hawking", cmd_hawking},
  };
  const auto it = table.find(config.command);
  if (it == table.end()) throw InvalidArgument("unknown command '" + config.command + "'");
  return it->second(config);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Thermal-channel identification toolkit: QFI scans, channel maps and homodyne estimation of y"};
  app.require_subcommand(1);

  std::string format = "csv";
  const auto add_output = [&](CLI::App* sub) {
    sub->add_option("--out", config.out, "Output file (default: stdout)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  const auto add_scenario = [&](CLI::App* sub) {
    sub->add_option("--nbar", config.nbar, "Thermal number observed from the vacuum (default 1)");
    sub->add_option("--nprime", config.n_prime, "Thermal number observed over an ambient state");
    sub->add_option("--nT", config.n_T, "Ambient thermal number (requires --nprime)");
  };
  const auto add_experiment = [&](CLI::App* sub) {
    add_scenario(sub);
    sub->add_option("--probe", config.probe, "vacuum, coherent, squeezed or thermal")
        ->check(CLI::IsMember({"vacuum", "coherent", "squeezed", "thermal"}));
    sub->add_option("--n0", config.n0, "Probe mean photon number (default 10)");
    sub->add_option("--ytrue", config.y_true, "True channel parameter (default: observed number)");
    sub->add_option("--theta", config.theta, "Homodyne angle in radians (default 0)");
    sub->add_option("--samples", config.samples, "Shots per experiment (default 100000)");
    sub->add_option("--seed", config.seed, "Random seed (default 0)");
  };

  auto* qfi = app.add_subcommand("qfi-scan", "QFI of coherent, thermal and squeezed probes over y");
  qfi->add_option("--nbar", config.nbar, "Observed thermal number (default 1)");
  qfi->add_option("--n0", config.n0, "Probe mean photon number (default 10)");
  qfi->add_option("--grid", config.grid, "Number of interior grid points (default 101)");
  add_output(qfi);

  auto* map = app.add_subcommand("channel-map", "Physical / entanglement-breaking regions of the (x, y) plane");
  map->add_option("--nbar", config.nbar, "Observed thermal number (default 1)");
  map->add_option("--grid", config.grid, "Grid points per axis (default 101)");
  add_output(map);

  auto* sim = app.add_subcommand("simulate", "Draw raw homodyne outcomes");
  add_experiment(sim);
  add_output(sim);

  auto* est = app.add_subcommand("estimate", "Estimate y from one homodyne record");
  add_experiment(est);
  est->add_option("--estimator", config.estimator, "mle or moments")->check(CLI::IsMember({"mle", "moments"}));
  est->add_option("--in", config.input, "Outcome file written by 'simulate' (default: simulate internally)");
  add_output(est);

  auto* camp = app.add_subcommand("campaign", "Repeat experiments and compare the spread with the Cramer-Rao bound");
  add_experiment(camp);
  camp->add_option("--reps", config.reps, "Number of repetitions (default 200)");
  camp->add_option("--estimator", config.estimator, "mle or moments")->check(CLI::IsMember({"mle", "moments"}));
  add_output(camp);

  auto* hawk = app.add_subcommand("hawking", "Hawking occupation number and channel from Omega or (omega, T)");
  hawk->add_option("--Omega", config.Omega, "Dimensionless frequency 2 pi omega / kappa");
  hawk->add_option("--omega", config.omega, "Mode angular frequency");
  hawk->add_option("--T", config.temperature, "Temperature, same units as omega");
  add_output(hawk);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  for (const auto* sub : app.get_subcommands()) config.command = sub->get_name();
  config.format = format == "json" ? OutputFormat::Json : OutputFormat::Csv;

  try {
    const Report report = run_command(config);
    std::ostringstream body;
    if (config.format == OutputFormat::Json) {
      write_json(body, report, config_echo(config));
    } else {
      write_csv(body, report);
    }
    if (config.out) {
      std::ofstream file(*config.out, std::ios::binary);
      if (!file) throw InvalidArgument("cannot open output file " + *config.out);
      file << body.str();
      if (!file) throw InvalidArgument("failed writing " + *config.out);
    } else {
      out << body.str();
    }
  } catch (const PhysicalityError& e) {
    err << "physicality error: " << e.what() << '\n';
    return kExitPhysicality;
  } catch (const InvalidArgument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace thermchan::cli
