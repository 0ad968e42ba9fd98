#include "thermchan/cli/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "thermchan/errors.hpp"

namespace thermchan::cli {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

std::string to_csv_field(const Cell& cell) {
  return std::visit(Overloaded{
                        [](double v) { return format_double(v); },
                        [](std::int64_t v) { return std::to_string(v); },
                        [](bool v) { return std::string(v ? "true" : "false"); },
                        [](const std::string& v) { return v; },
                    },
                    cell);
}

nlohmann::ordered_json to_json(const Cell& cell) {
  return std::visit(Overloaded{
                        [](double v) -> nlohmann::ordered_json {
                          if (!std::isfinite(v)) return nullptr;
                          return v;
                        },
                        [](std::int64_t v) -> nlohmann::ordered_json { return v; },
                        [](bool v) -> nlohmann::ordered_json { return v; },
                        [](const std::string& v) -> nlohmann::ordered_json { return v; },
                    },
                    cell);
}

nlohmann::ordered_json row_object(const Report& report, const std::vector<Cell>& row) {
  nlohmann::ordered_json obj = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < report.columns.size(); ++c) obj[report.columns[c]] = to_json(row[c]);
  return obj;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

double parse_number(const std::string& text, const std::string& path) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw InvalidArgument("cannot parse outcome '" + text + "' in " + path);
  }
  return v;
}

}  // namespace

void Report::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw std::logic_error("report row width mismatch");
  rows.push_back(std::move(row));
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const Report& report) {
  for (std::size_t c = 0; c < report.columns.size(); ++c) {
    os << (c ? "," : "") << report.columns[c];
  }
  os << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << to_csv_field(row[c]);
    os << '\n';
  }
}

void write_json(std::ostream& os, const Report& report, const nlohmann::ordered_json& config) {
  nlohmann::ordered_json doc;
  doc["config"] = config;
  if (report.single_result && report.rows.size() == 1) {
    doc["result"] = row_object(report, report.rows.front());
  } else {
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) doc["rows"].push_back(row_object(report, row));
  }
  os << doc.dump(2) << '\n';
}

std::vector<double> read_outcomes(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open input file " + path);

  std::vector<double> outcomes;
  const bool is_json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
  if (is_json) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument("invalid JSON in " + path + ": " + e.what());
    }
    if (!doc.contains("rows") || !doc["rows"].is_array()) throw InvalidArgument(path + " has no rows array");
    for (const auto& row : doc["rows"]) {
      if (!row.contains("outcome") || !row["outcome"].is_number()) {
        throw InvalidArgument(path + ": row without numeric outcome");
      }
      outcomes.push_back(row["outcome"].get<double>());
    }
  } else {
    std::string line;
    if (!std::getline(in, line)) throw InvalidArgument(path + " is empty");
    const auto header = split(line);
    std::size_t col = header.size();
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (header[c] == "outcome") col = c;
    }
    if (col == header.size()) throw InvalidArgument(path + " has no 'outcome' column");
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto fields = split(line);
      if (fields.size() != header.size()) throw InvalidArgument(path + ": ragged CSV row");
      outcomes.push_back(parse_number(fields[col], path));
    }
  }
  if (outcomes.empty()) throw InvalidArgument(path + " contains no outcomes");
  return outcomes;
}

}  // namespace thermchan::cli
