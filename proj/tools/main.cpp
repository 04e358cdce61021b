#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "darkpulse/report.hpp"
#include "darkpulse/scenario.hpp"
#include "darkpulse/sweep.hpp"

namespace {

using namespace darkpulse;

FlatConfig gather_config(const std::string& config_path,
                         const std::vector<std::string>& sets) {
  FlatConfig cfg;
  if (!config_path.empty()) cfg = parse_config_file(config_path);
  for (const auto& kv : sets) {
    auto [key, value] = parse_override(kv);
    cfg[key] = std::move(value);
  }
  validate_keys(cfg);
  return cfg;
}

std::string pick_out_dir(const std::string& flag, const FlatConfig& cfg) {
  ResolvedConfig probe;
  if (auto it = cfg.find("out_dir"); it != cfg.end())
    probe.out_dir = it->second.get<std::string>();
  return resolve_out_dir(flag, probe);
}

int do_run(const std::string& scenario, const FlatConfig& overrides,
           const std::string& out_flag) {
  const ScenarioResult result = run_scenario(scenario, overrides);
  const std::string dir = pick_out_dir(out_flag, overrides);
  const auto paths = emit_scenario(dir, result);
  for (const auto& r : result.reports)
    std::printf(
        "  %-14s P_spon=%.4f%%  P_tran=%.4f%%  P_mis=%.4f%%  "
        "(N=%ld, dt=%.3g, steps=%ld, wall=%.2fs)\n",
        r.label.c_str(), 100 * r.p_spon, 100 * r.p_tran, 100 * r.p_mis,
        r.n_modes, r.dt, r.n_steps, r.wall_seconds);
  for (auto it = result.summary.begin(); it != result.summary.end(); ++it) {
    if (it.key() == "runs" || it.key() == "config") continue;
    std::cout << "  " << it.key() << ": " << it.value().dump() << "\n";
  }
  std::cout << "wrote " << paths.size() << " files under " << dir << "/"
            << result.plan.id << "\n";
  return 0;
}

int do_sweep(const std::string& gridfile, const std::vector<std::string>& sets,
             const std::string& out_flag, int workers,
             const std::string& name) {
  FlatConfig doc = parse_config_file(gridfile);
  for (const auto& kv : sets) {
    auto [key, value] = parse_override(kv);
    doc[key] = std::move(value);
  }
  const SweepTable table = run_sweep(doc, workers);
  const std::string dir = pick_out_dir(out_flag, doc);
  const std::string path = dir + "/" + name;
  write_text_file(path, table_csv(table.columns, table.rows));
  std::cout << table.rows.size() << " points -> " << path;
  if (table.n_failed > 0) std::cout << " (" << table.n_failed << " failed)";
  std::cout << "\n";
  return table.n_failed == 0 ? 0 : 1;
}

int do_design(const FlatConfig& overrides, const std::string& out_flag) {
  const ScenarioResult result = run_scenario("transfer_design", overrides);
  const std::string dir = pick_out_dir(out_flag, overrides);
  const auto paths = emit_scenario(dir, result);
  std::cout << "  beta=" << result.summary["beta"]
            << " T=" << result.summary["t_end"]
            << " round_trip_l2=" << result.summary["round_trip_l2"] << "\n";
  std::cout << "wrote " << paths.size() << " files under " << dir
            << "/transfer_design\n";
  return 0;
}

int do_trap(const FlatConfig& overrides, const std::string& out_flag) {
  const ScenarioResult result = run_scenario("trap_report", overrides);
  const std::string dir = pick_out_dir(out_flag, overrides);
  const auto paths = emit_scenario(dir, result);
  for (auto it = result.summary.begin(); it != result.summary.end(); ++it) {
    if (it.key() == "config" || it.key() == "scenario") continue;
    std::cout << "  " << it.key() << ": " << it.value().dump() << "\n";
  }
  std::cout << "wrote " << paths.size() << " files under " << dir
            << "/trap_report\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Dark-state pulse shaping: cavity STIRAP photon emission, drive "
      "design, and trap diagnostics. Output dir: --out, then config "
      "'out_dir', then $DARKPULSE_OUT_DIR, then ./out."};
  app.require_subcommand(1);

  std::string config_path, out_flag, scenario, gridfile;
  std::vector<std::string> sets;
  int workers = 1;

  auto* run = app.add_subcommand("run", "Run a catalog scenario");
  run->add_option("scenario", scenario, "Scenario id (see docs)")->required();
  run->add_option("--config", config_path, "JSON config file (flat keys)");
  run->add_option("--set", sets, "key=value override (repeatable)");
  run->add_option("--out", out_flag, "Output directory");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep->add_option("gridfile", gridfile, "JSON sweep document")->required();
  sweep->add_option("--set", sets, "key=value override (repeatable)");
  sweep->add_option("--out", out_flag, "Output directory");
  sweep->add_option("--workers", workers, "Concurrent points")
      ->check(CLI::PositiveNumber);
  std::string sweep_name = "sweep.csv";
  sweep->add_option("--name", sweep_name, "Output CSV file name");

  auto* design = app.add_subcommand("design", "Synthesize transfer drives");
  std::string target = "sech";
  double beta = 0.5, horizon = 20.0, kappa = 1.0, r_o = 1.0;
  long samples = 40001;
  design->add_option("--target", target, "Target family (sech)");
  design->add_option("--beta", beta, "Target sech rate");
  design->add_option("--T", horizon, "Design horizon");
  design->add_option("--kappa", kappa, "Cavity decay rate");
  design->add_option("--r-o", r_o, "Clebsch-Gordan amplitude ratio");
  design->add_option("--samples", samples, "Design grid size");
  design->add_option("--config", config_path, "JSON config file (flat keys)");
  design->add_option("--set", sets, "key=value override (repeatable)");
  design->add_option("--out", out_flag, "Output directory");

  auto* trap = app.add_subcommand("trap", "Dipole-trap report");
  trap->add_option("--config", config_path, "JSON config file (flat keys)");
  trap->add_option("--set", sets, "key=value override (repeatable)");
  trap->add_option("--out", out_flag, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed())
      return do_run(scenario, gather_config(config_path, sets), out_flag);
    if (sweep->parsed()) return do_sweep(gridfile, sets, out_flag, workers,
                                         sweep_name);
    if (design->parsed()) {
      if (target != "sech") {
        std::cerr << "error: only --target sech is available\n";
        return 2;
      }
      FlatConfig overrides = gather_config(config_path, sets);
      // Explicit flags win over the config file.
      if (design->count("--beta")) overrides["design.beta"] = beta;
      if (design->count("--T")) overrides["design.t_end"] = horizon;
      if (design->count("--kappa")) overrides["params.kappa"] = kappa;
      if (design->count("--r-o")) overrides["design.r_o"] = r_o;
      if (design->count("--samples")) overrides["design.n_samples"] = samples;
      return do_design(overrides, out_flag);
    }
    if (trap->parsed())
      return do_trap(gather_config(config_path, sets), out_flag);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
