#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "darkpulse/model.hpp"
#include "darkpulse/trap.hpp"
#include "darkpulse/types.hpp"

namespace darkpulse {

// Configuration documents are strict JSON objects with flat, dot-namespaced
// keys ("params.gamma_s": 1.0). Values are scalars, or arrays of scalars for
// sweep axes. Unknown keys are rejected. Rate-like keys accept an "_MHz"
// variant which is divided by "units.kappa_MHz" on load, so lab units can be
// entered directly.
using FlatConfig = std::map<std::string, nlohmann::json>;

// Parse a strict JSON config document from text or a file.
FlatConfig parse_config_text(const std::string& text);
FlatConfig parse_config_file(const std::string& path);

// Parse one "key=value" command-line override. The value is parsed as a JSON
// scalar when possible, and taken as a string otherwise.
std::pair<std::string, nlohmann::json> parse_override(const std::string& kv);

// Throw ConfigError naming the first unknown key, non-scalar value, or
// ill-typed value. Keys prefixed "sweep." are valid when the remainder is a
// known numeric key and the value is a nonempty numeric array.
void validate_keys(const FlatConfig& cfg);

// True when the key takes an integer value (seed, grid.stride, ...).
bool is_integer_key(const std::string& key);

// Replace every "<key>_MHz" entry by "<key>" divided by units.kappa_MHz.
// Errors when the reference is missing or when both spellings are present.
void apply_units(FlatConfig& cfg);

// Overlay overrides onto base (overrides win).
FlatConfig merge(const FlatConfig& base, const FlatConfig& overrides);

// A fully resolved single-run configuration in cavity units (kappa = 1).
struct ResolvedConfig {
  std::string scenario = "custom";
  std::string out_dir;  // empty: resolved later from env / default
  long seed = 0;
  double kappa_mhz = 0;  // 0 when inputs were given in cavity units

  PhysicalParams<double> params;
  TimeGrid<double> grid;

  std::string drive_mode = "matched";  // "matched" | "uniform"
  double rho_peak = 3.0;
  double center = -1.0;  // < 0: defaults to t_end / 2
  double t_w = -1.0;     // < 0: defaults to t_end / 5
  double omega_m = -1.0;  // uniform mode peak Rabi rate; required when uniform

  std::string coupling_type = "constant";  // "constant"|"position"|"sinusoidal"
  double coupling_g = -1.0;                // < 0: params.g_peak
  double coupling_amplitude = 6.0;
  double coupling_angular_rate = -1.0;  // < 0: 4 pi / t_end
  double coupling_phase = 0.0;
  double coupling_x = 0.0, coupling_y = 0.0, coupling_z = 0.0;
  double coupling_w0 = 1.0, coupling_k0 = 1.0;

  double design_beta = 0.5;
  double design_t_end = 20.0;
  long design_n_samples = 40001;
  double design_r_o = 1.0;

  TrapConfig<double> trap;
  double trap_w0_qed = 25e-6;
  double trap_lambda_qed = constants::cs_d2_wavelength;

  FlatConfig echo;  // canonical flat form, sufficient to re-run identically
};

// Validate, convert units, and map a flat document onto a ResolvedConfig.
ResolvedConfig resolve_config(const FlatConfig& cfg);

// Build the model-layer objects from a resolved config.
DriveProfile<double> make_drive(const ResolvedConfig& cfg);
CouplingTrajectory<double> make_coupling(const ResolvedConfig& cfg);

// Output directory resolution: explicit flag, then config key, then the
// DARKPULSE_OUT_DIR environment variable, then "./out".
std::string resolve_out_dir(const std::string& flag_value,
                            const ResolvedConfig& cfg);

}  // namespace darkpulse
