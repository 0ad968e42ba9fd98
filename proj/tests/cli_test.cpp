#include "thermchan/cli/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

namespace thermchan::cli {
namespace {

struct CliRun {
  int status = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "thermchan");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    rows.push_back(fields);
  }
  return rows;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("thermchan_cli_test_" + name);
}

TEST(CliQfiScan, ColumnsAndHomodyneOptimality) {
  const CliRun r = run({"qfi-scan", "--nbar", "1", "--n0", "10"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 102u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"y", "qfi_coherent_exact", "qfi_coherent_numeric",
                                                "qfi_thermal_numeric", "qfi_thermal_asymptotic",
                                                "qfi_squeezed_numeric", "qfi_squeezed_asymptotic",
                                                "fisher_homodyne_coherent"}));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double y = std::stod(rows[i][0]);
    EXPECT_GT(y, 2.0 / 3.0);
    EXPECT_LT(y, 3.0);
    const double exact = std::stod(rows[i][1]);
    EXPECT_NEAR(std::stod(rows[i][7]), exact, 1e-12 * exact);
    EXPECT_NEAR(std::stod(rows[i][2]), exact, 1e-3 * exact);
  }
}

TEST(CliQfiScan, CsvRoundTripsToFullPrecision) {
  RunConfig config;
  config.command = "qfi-scan";
  config.grid = 7;
  const Report report = run_command(config);
  std::ostringstream os;
  write_csv(os, report);
  const auto rows = parse_csv(os.str());
  ASSERT_EQ(rows.size(), report.rows.size() + 1);
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    for (std::size_t c = 0; c < report.columns.size(); ++c) {
      EXPECT_EQ(std::stod(rows[i + 1][c]), std::get<double>(report.rows[i][c]));
    }
  }
}

TEST(CliQfiScan, JsonRoundTripsAndEchoesConfig) {
  const CliRun r = run({"qfi-scan", "--grid", "5", "--format", "json"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["config"]["command"], "qfi-scan");
  EXPECT_EQ(doc["config"]["nbar"], 1.0);
  EXPECT_EQ(doc["config"]["grid"], 5);
  ASSERT_EQ(doc["rows"].size(), 5u);

  RunConfig config;
  config.command = "qfi-scan";
  config.grid = 5;
  const Report report = run_command(config);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t c = 0; c < report.columns.size(); ++c) {
      EXPECT_EQ(doc["rows"][i][report.columns[c]].get<double>(), std::get<double>(report.rows[i][c]));
    }
  }
}

TEST(CliChannelMap, MarkedPointsAndRegions) {
  const CliRun r = run({"channel-map", "--nbar", "1", "--grid", "9"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 1u + 81u + 4u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"x", "y", "physical", "entanglement_breaking",
                                                "on_constraint_line", "class", "label"}));
  const auto find = [&](const std::string& x, const std::string& y, const std::string& label) {
    for (const auto& row : rows) {
      if (row[0] == x && row[1] == y && row[6] == label) return row;
    }
    ADD_FAILURE() << "no row " << x << "," << y << " " << label;
    return std::vector<std::string>(7);
  };
  EXPECT_EQ(find("2", "1", "grid"), (std::vector<std::string>{"2", "1", "true", "false", "true", "Hawking", "grid"}));
  EXPECT_EQ(find("2", "1", "Hawking")[5], "Hawking");
  EXPECT_EQ(find("3", "0.5", "grid")[2], "false");
  EXPECT_EQ(find("3", "0.5", "grid")[5], "Unphysical");
  const auto add_noise = find("1", "2", "grid");
  EXPECT_EQ(add_noise[4], "true");
  EXPECT_EQ(add_noise[5], "ClassicalAddNoise");
  EXPECT_EQ(add_noise[3], "true");
  EXPECT_EQ(find("0", "3", "ZeroTransmission")[5], "ZeroTransmission");
  EXPECT_EQ(find("1", "1", "grid")[5], "OffLine");
}

TEST(CliSimulate, SameSeedSameBytes) {
  const auto args = std::vector<std::string>{"simulate", "--samples", "500", "--seed", "0", "--format", "json"};
  const CliRun a = run(args);
  const CliRun b = run(args);
  ASSERT_EQ(a.status, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const CliRun c = run({"simulate", "--samples", "500", "--seed", "1", "--format", "json"});
  EXPECT_NE(a.out, c.out);
}

TEST(CliEstimate, DefaultsRecoverHawkingPoint) {
  const CliRun r = run({"estimate", "--format", "json"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto result = nlohmann::json::parse(r.out)["result"];
  EXPECT_NEAR(result["y_hat"].get<double>(), 1.0, 3.0 * result["std_error"].get<double>());
  EXPECT_EQ(result["estimator"], "MaxLikelihood");
  EXPECT_EQ(result["n_samples"], 100000);
}

TEST(CliEstimate, ReadsOutcomesWrittenBySimulate) {
  for (const std::string format : {"csv", "json"}) {
    const auto path = temp_path("outcomes." + format);
    const CliRun sim = run({"simulate", "--ytrue", "1.4", "--samples", "20000", "--seed", "5", "--format",
                            format, "--out", path.string()});
    ASSERT_EQ(sim.status, 0) << sim.err;
    const CliRun from_file = run({"estimate", "--in", path.string(), "--estimator", "moments"});
    const CliRun internal =
        run({"estimate", "--ytrue", "1.4", "--samples", "20000", "--seed", "5", "--estimator", "moments"});
    ASSERT_EQ(from_file.status, 0) << from_file.err;
    EXPECT_EQ(from_file.out, internal.out) << format;
    std::filesystem::remove(path);
  }
}

TEST(CliCampaign, ReportsBoundAndEfficiency) {
  const CliRun r = run({"campaign", "--samples", "20000", "--reps", "40", "--format", "json"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto res = nlohmann::json::parse(r.out)["result"];
  EXPECT_NEAR(res["crb"].get<double>(), 1.0 / (20000.0 * 5.0 / 3.0), 1e-18);
  EXPECT_GT(res["efficiency"].get<double>(), 0.5);
  EXPECT_LT(res["efficiency"].get<double>(), 2.0);
  EXPECT_LE(std::abs(res["bias"].get<double>()), res["bias_tolerance"].get<double>());
}

TEST(CliHawking, FromOmegaAndFromTemperature) {
  const CliRun r = run({"hawking", "--Omega", format_double(0.5 * std::log(2.0)), "--format", "json"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto res = nlohmann::json::parse(r.out)["result"];
  EXPECT_NEAR(res["nbar"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(res["x"].get<double>(), 2.0, 1e-12);
  EXPECT_NEAR(res["y"].get<double>(), 1.0, 1e-12);
  EXPECT_NEAR(res["y_min"].get<double>(), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(res["y_max"].get<double>(), 3.0, 1e-12);

  RunConfig config;
  config.command = "hawking";
  config.omega = std::log(2.0);
  config.temperature = 1.0;
  const Report t = run_command(config);
  EXPECT_NEAR(std::get<double>(t.rows[0][0]), 1.0, 1e-14);
}

TEST(CliErrors, ExitCodes) {
  EXPECT_EQ(run({"qfi-scan", "--bogus", "1"}).status, kExitConfig);
  EXPECT_EQ(run({"channel-map", "--probe", "coherent"}).status, kExitConfig);
  EXPECT_EQ(run({}).status, kExitConfig);
  EXPECT_EQ(run({"simulate", "--nT", "0.2"}).status, kExitConfig);
  EXPECT_EQ(run({"simulate", "--nbar", "1", "--nprime", "1"}).status, kExitConfig);
  EXPECT_EQ(run({"simulate", "--n0", "-1"}).status, kExitConfig);
  EXPECT_EQ(run({"simulate", "--probe", "cat"}).status, kExitConfig);
  EXPECT_EQ(run({"estimate", "--in", "/nonexistent/file.csv"}).status, kExitConfig);
  EXPECT_EQ(run({"estimate", "--estimator", "moments", "--probe", "thermal"}).status, kExitConfig);
  EXPECT_EQ(run({"hawking"}).status, kExitConfig);
  EXPECT_EQ(run({"hawking", "--Omega", "1", "--omega", "1", "--T", "1"}).status, kExitConfig);
  EXPECT_EQ(run({"hawking", "--omega", "1"}).status, kExitConfig);
  EXPECT_EQ(run({"hawking", "--Omega", "0"}).status, kExitConfig);
  EXPECT_EQ(run({"hawking", "--Omega", "-2"}).status, kExitConfig);
  EXPECT_EQ(run({"simulate", "--ytrue", "5"}).status, kExitPhysicality);
  EXPECT_EQ(run({"campaign", "--ytrue", "0.1", "--reps", "3"}).status, kExitPhysicality);
  EXPECT_EQ(run({"simulate", "--nprime", "1", "--nT", "0.2", "--ytrue", "0.01"}).status, kExitPhysicality);
}

TEST(CliErrors, HelpSucceeds) {
  const CliRun r = run({"--help"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_NE(r.out.find("qfi-scan"), std::string::npos);
}

TEST(CliQfiScan, MatchesGoldenFixture) {
  std::ifstream golden(std::string(THERMCHAN_TEST_DATA_DIR) + "/qfi_scan_nbar1_n0_10.csv", std::ios::binary);
  ASSERT_TRUE(golden) << "missing fixture";
  std::stringstream expected;
  expected << golden.rdbuf();
  const CliRun r = run({"qfi-scan", "--nbar", "1", "--n0", "10"});
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(r.out, expected.str());
}

}  // namespace
}  // namespace thermchan::cli
