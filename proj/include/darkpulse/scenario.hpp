#pragma once

#include <string>
#include <vector>

#include "darkpulse/config.hpp"
#include "darkpulse/report.hpp"

namespace darkpulse {

// One concrete simulation drawn from a scenario: a label for output files and
// the complete flat configuration it runs with.
struct ScenarioRun {
  std::string label;
  FlatConfig config;
};

struct ScenarioPlan {
  std::string id;
  std::vector<ScenarioRun> runs;
};

// The scenario ids the CLI accepts.
const std::vector<std::string>& scenario_ids();

// Expand a scenario id into its catalog runs, with user overrides applied on
// top of the catalog parameters for every run. Unknown ids raise ConfigError.
ScenarioPlan expand_scenario(const std::string& id, const FlatConfig& overrides);

// Execute one resolved single-run config: integrate, reconstruct the emitted
// pulse on a uniform 2001-point grid, build the ideal pulse from the drive
// design, and compute the loss metrics.
RunReport execute_run(const ResolvedConfig& cfg, const std::string& label);

struct ScenarioResult {
  ScenarioPlan plan;
  std::vector<RunReport> reports;
  nlohmann::ordered_json summary;  // scenario-level derived quantities
  // Additional artifacts (relative file name -> content), e.g. the design
  // scenario's drive tables or a sweep table.
  std::vector<std::pair<std::string, std::string>> extra_files;
};

// Run a scenario end to end. Simulation scenarios fill `reports`; the design
// and trap scenarios put their tables in `summary` (and in `extra_files` when
// emitted). Errors carry the scenario id and run label in their message.
ScenarioResult run_scenario(const std::string& id, const FlatConfig& overrides);

// Write all artifacts of a scenario result under <out_dir>/<scenario id>/ and
// return the paths written.
std::vector<std::string> emit_scenario(const std::string& out_dir,
                                       const ScenarioResult& result);

}  // namespace darkpulse
