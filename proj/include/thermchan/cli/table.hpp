#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace thermchan::cli {

using Cell = std::variant<double, std::int64_t, bool, std::string>;

// Column-ordered dataset emitted by every command. A report with
// `single_result` set is written as a JSON object under "result" rather than
// an array under "rows".
struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  bool single_result = false;

  void add_row(std::vector<Cell> row);
};

// Floats use 17 significant digits so that re-parsing is exact.
std::string format_double(double v);

void write_csv(std::ostream& os, const Report& report);
void write_json(std::ostream& os, const Report& report, const nlohmann::ordered_json& config);

// Reads the "outcome" column of a CSV file or the rows[].outcome entries of
// a JSON report.
std::vector<double> read_outcomes(const std::string& path);

}  // namespace thermchan::cli
