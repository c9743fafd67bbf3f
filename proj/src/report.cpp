#include "sphsamp/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "sphsamp/error.hpp"

namespace sphsamp {

namespace fs = std::filesystem;

nlohmann::json to_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["command"] = cfg.command;
  j["kind"] = cfg.kind;
  j["d"] = cfg.d;
  j["Ls"] = cfg.Ls;
  j["alphas"] = cfg.alphas;
  j["theta"] = cfg.theta ? nlohmann::json(*cfg.theta) : nlohmann::json();
  j["p"] = cfg.p ? nlohmann::json(*cfg.p) : nlohmann::json();
  j["c"] = cfg.c ? nlohmann::json(*cfg.c) : nlohmann::json();
  j["seed"] = cfg.seed;
  j["family"] = cfg.family;
  j["out"] = cfg.out;
  j["gamma"] = cfg.gamma;
  j["delta"] = cfg.delta;
  j["eps"] = cfg.eps;
  j["probe_factor"] = cfg.probe_factor;
  j["trials"] = cfg.trials;
  j["quick"] = cfg.quick;
  j["tolerances"] = cfg.tolerances;
  j["extra"] = cfg.extra;
  return j;
}

nlohmann::json make_report(const RunConfig& cfg, nlohmann::json results, nlohmann::json table) {
  nlohmann::json r;
  r["schema_version"] = kSchemaVersion;
  r["command"] = cfg.command;
  r["params"] = to_json(cfg);
  r["results"] = std::move(results);
  r["table"] = table.is_null() ? nlohmann::json::array() : std::move(table);
  return r;
}

std::string dump_report(const nlohmann::json& report) { return report.dump(2) + "\n"; }

namespace {

std::string csv_cell(const nlohmann::json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  }
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  return v.dump();
}

}  // namespace

std::string table_to_csv(const nlohmann::json& table) {
  std::set<std::string> columns;
  for (const auto& row : table)
    for (const auto& [k, v] : row.items()) columns.insert(k);
  std::ostringstream os;
  bool first = true;
  for (const auto& c : columns) {
    os << (first ? "" : ",") << c;
    first = false;
  }
  os << '\n';
  for (const auto& row : table) {
    first = true;
    for (const auto& c : columns) {
      os << (first ? "" : ",") << (row.contains(c) ? csv_cell(row[c]) : "");
      first = false;
    }
    os << '\n';
  }
  return os.str();
}

void write_report(const std::string& json_path, const nlohmann::json& report) {
  const fs::path path(json_path);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream js(path);
  if (!js) throw InputError("cannot write " + json_path);
  js << dump_report(report);
  fs::path csv = path;
  csv.replace_extension(".csv");
  std::ofstream cs(csv);
  if (!cs) throw InputError("cannot write " + csv.string());
  cs << table_to_csv(report.at("table"));
}

}  // namespace sphsamp
