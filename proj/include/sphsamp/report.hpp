#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace sphsamp {

inline constexpr int kSchemaVersion = 1;

/// Everything that determines a report. Serialized verbatim under "params".
struct RunConfig {
  std::string command;
  std::string kind;  // gen kind or asymptotics kind; empty otherwise
  int d = 2;
  std::vector<int> Ls;
  std::vector<double> alphas;
  std::optional<double> theta;
  std::optional<double> p;
  std::optional<double> c;
  std::uint64_t seed = 1;
  std::string family;
  std::string out;
  double gamma = 0.5;
  double delta = 0.5;
  double eps = 0.5;
  int probe_factor = 4;
  int trials = 20;
  bool quick = false;
  std::map<std::string, double> tolerances;
  std::map<std::string, std::string> extra;
};

nlohmann::json to_json(const RunConfig& cfg);

/// {schema_version, command, params, results, table}. Keys sort by construction.
nlohmann::json make_report(const RunConfig& cfg, nlohmann::json results, nlohmann::json table);

/// Stable text form: sorted keys, two-space indent, trailing newline.
std::string dump_report(const nlohmann::json& report);

/// Rows of flat objects to CSV; columns are the sorted union of keys.
std::string table_to_csv(const nlohmann::json& table);

/// Writes the report to json_path and its table to the .csv sibling.
void write_report(const std::string& json_path, const nlohmann::json& report);

}  // namespace sphsamp
