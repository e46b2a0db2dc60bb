#pragma once

#include <map>
#include <string>
#include <vector>

namespace nlsim {

/// One verification row: a named check with both sides of its bound.
/// Failing rows always carry the violated bound and both values.
struct CheckRow {
  std::string name;
  std::map<std::string, std::string> params;
  double lhs = 0.0;
  double rhs = 0.0;
  std::string bound;  // e.g. "lhs <= rhs", "value > 0"
  bool pass = true;
  std::string detail;
};

struct DiagnosticsReport {
  std::string suite;
  std::map<std::string, std::string> config_echo;
  std::vector<CheckRow> rows;
  double wall_seconds = 0.0;

  bool all_pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }
  void add_row(CheckRow row) { rows.push_back(std::move(row)); }
};

/// A plain CSV table: documented header plus string cells, RFC-4180 quoting.
struct CsvTable {
  std::string name;  // file stem
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string csv_escape(const std::string& cell);
std::string render_csv(const CsvTable& table);
std::string render_real(double x);

/// Writes the CSV tables and a single JSON summary (schema_version field,
/// timestamps only in the JSON envelope; CSV bodies are deterministic for a
/// fixed config + seed).  Returns the list of written file paths.
std::vector<std::string> emit_report(const DiagnosticsReport& report,
                                     const std::vector<CsvTable>& tables,
                                     const std::string& out_dir, bool write_csv,
                                     bool write_json);

}  // namespace nlsim
