#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "darkpulse/config.hpp"
#include "darkpulse/types.hpp"

namespace darkpulse {

// Everything a single simulation run reports. Wall time is printed to stdout
// but never serialized: output files are byte-stable for identical configs.
struct RunReport {
  std::string label;
  FlatConfig echo;  // canonical flat config for bit-identical re-runs

  double p_spon = 0;
  double p_tran = 0;
  double p_mis = 0;
  double mode_energy = 0;

  long n_modes = 0;
  double dt = 0;
  long n_steps = 0;
  double norm_drift = 0;

  Vector<double> times;     // reconstruction grid
  CVector<double> f_real;   // emitted pulse, unit energy
  CVector<double> f_id;     // ideal pulse, unit energy

  double wall_seconds = 0;  // stdout only
};

// Serialize a report (without wall time) as ordered JSON.
nlohmann::ordered_json report_json(const RunReport& report);

// Waveform table "t,re,im,abs,phase_half_pi" with %.12g cells; the phase
// column is arg(f) in units of pi/2.
std::string waveform_csv(const Vector<double>& times,
                         const CVector<double>& values);

// Generic CSV from preformatted cells.
std::string table_csv(const std::vector<std::string>& columns,
                      const std::vector<std::vector<std::string>>& rows);

std::string format_cell(double value);  // %.12g

// Create directories as needed and write the file atomically enough for our
// purposes (truncate + write). I/O failures raise ConfigError with the path.
void write_text_file(const std::string& path, const std::string& content);

// Write <dir>/<label>.json, <dir>/<label>_f_real.csv, <dir>/<label>_f_id.csv.
// Returns the paths written.
std::vector<std::string> emit_report(const std::string& dir,
                                     const RunReport& report);

}  // namespace darkpulse
