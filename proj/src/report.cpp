#include "nlsim/report.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace nlsim {

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string render_real(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

std::string render_csv(const CsvTable& table) {
  std::ostringstream os;
  for (size_t i = 0; i < table.header.size(); ++i)
    os << (i ? "," : "") << csv_escape(table.header[i]);
  os << "\n";
  for (const auto& row : table.rows) {
    for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(row[i]);
    os << "\n";
  }
  return os.str();
}

std::vector<std::string> emit_report(const DiagnosticsReport& report,
                                     const std::vector<CsvTable>& tables,
                                     const std::string& out_dir, bool write_csv,
                                     bool write_json) {
  namespace fs = std::filesystem;
  std::vector<std::string> written;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("emit_report: cannot create '" + out_dir + "'");

  if (write_csv) {
    for (const auto& t : tables) {
      const std::string path = (fs::path(out_dir) / (t.name + ".csv")).string();
      std::ofstream out(path, std::ios::binary);
      if (!out) throw std::runtime_error("emit_report: cannot write '" + path + "'");
      out << render_csv(t);
      written.push_back(path);
    }
  }

  if (write_json) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["suite"] = report.suite;
    j["config"] = report.config_echo;
    j["pass"] = report.all_pass();
    j["wall_seconds"] = report.wall_seconds;
    j["generated_at"] = std::chrono::duration_cast<std::chrono::seconds>(
                            std::chrono::system_clock::now().time_since_epoch())
                            .count();
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows) {
      nlohmann::json row;
      row["name"] = r.name;
      row["params"] = r.params;
      row["lhs"] = r.lhs;
      row["rhs"] = r.rhs;
      row["bound"] = r.bound;
      row["pass"] = r.pass;
      if (!r.detail.empty()) row["detail"] = r.detail;
      rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    const std::string path = (fs::path(out_dir) / "summary.json").string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_report: cannot write '" + path + "'");
    out << j.dump(2) << "\n";
    written.push_back(path);
  }
  return written;
}

}  // namespace nlsim
