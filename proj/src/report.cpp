#include "darkpulse/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

namespace darkpulse {

std::string format_cell(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

namespace {

std::string escape_cell(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

nlohmann::ordered_json report_json(const RunReport& report) {
  nlohmann::ordered_json j;
  j["label"] = report.label;
  nlohmann::ordered_json cfg;
  for (const auto& [key, value] : report.echo) cfg[key] = value;
  j["config"] = std::move(cfg);
  j["metrics"] = {
      {"p_spon", report.p_spon},
      {"p_tran", report.p_tran},
      {"p_mis", report.p_mis},
      {"mode_energy", report.mode_energy},
  };
  j["grid"] = {
      {"n_modes", report.n_modes},
      {"dt", report.dt},
      {"n_steps", report.n_steps},
      {"norm_drift", report.norm_drift},
  };
  return j;
}

std::string waveform_csv(const Vector<double>& times,
                         const CVector<double>& values) {
  if (times.size() != values.size())
    throw ConfigError("waveform csv: time and value grids differ");
  std::string out = "t,re,im,abs,phase_half_pi\n";
  const double half_pi = 0.5 * std::numbers::pi;
  for (Eigen::Index k = 0; k < times.size(); ++k) {
    const std::complex<double> v = values[k];
    out += format_cell(times[k]);
    out += ',';
    out += format_cell(v.real());
    out += ',';
    out += format_cell(v.imag());
    out += ',';
    out += format_cell(std::abs(v));
    out += ',';
    out += format_cell(std::arg(v) / half_pi);
    out += '\n';
  }
  return out;
}

std::string table_csv(const std::vector<std::string>& columns,
                      const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (size_t c = 0; c < columns.size(); ++c) {
    if (c) out += ',';
    out += escape_cell(columns[c]);
  }
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != columns.size())
      throw ConfigError("table csv: row width does not match header");
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += escape_cell(row[c]);
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path())
    std::filesystem::create_directories(p.parent_path(), ec);
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << content;
  out.flush();
  if (!out) throw ConfigError("write failed for '" + path + "'");
}

std::vector<std::string> emit_report(const std::string& dir,
                                     const RunReport& report) {
  std::vector<std::string> paths;
  const std::string base = dir + "/" + report.label;
  paths.push_back(base + ".json");
  write_text_file(paths.back(), report_json(report).dump(2) + "\n");
  paths.push_back(base + "_f_real.csv");
  write_text_file(paths.back(), waveform_csv(report.times, report.f_real));
  paths.push_back(base + "_f_id.csv");
  write_text_file(paths.back(), waveform_csv(report.times, report.f_id));
  return paths;
}

}  // namespace darkpulse
