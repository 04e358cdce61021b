#include <cstdlib>
#include <string>

#include "doctest.h"

#include "darkpulse/config.hpp"
#include "darkpulse/scenario.hpp"

using namespace darkpulse;

TEST_CASE("config documents are strict flat JSON objects") {
  FlatConfig cfg = parse_config_text(
      R"({"params.gamma_s": 0.5, "grid.t_end": 30.0, "scenario": "custom"})");
  CHECK(cfg.size() == 3);
  CHECK(cfg.at("params.gamma_s").get<double>() == 0.5);

  CHECK_THROWS_AS(parse_config_text("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("not json"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text(R"({"params": {"gamma_s": 1.0}})"),
                       doctest::Contains("nested"), ConfigError);
}

TEST_CASE("command-line overrides parse as JSON scalars") {
  auto [key, value] = parse_override("grid.t_end=30");
  CHECK(key == "grid.t_end");
  CHECK(value.is_number());
  CHECK(value.get<double>() == 30.0);

  auto [skey, svalue] = parse_override("drive.mode=uniform");
  CHECK(svalue.is_string());
  CHECK(svalue.get<std::string>() == "uniform");

  CHECK_THROWS_AS(parse_override("no-equals-sign"), ConfigError);
  CHECK_THROWS_AS(parse_override("=5"), ConfigError);
}

TEST_CASE("unknown or ill-typed keys are rejected by name") {
  CHECK_THROWS_WITH_AS(validate_keys({{"bogus.key", 1.0}}),
                       doctest::Contains("bogus.key"), ConfigError);
  CHECK_THROWS_WITH_AS(validate_keys({{"params.gamma_s", "hot"}}),
                       doctest::Contains("must be a number"), ConfigError);
  CHECK_THROWS_WITH_AS(validate_keys({{"seed", 2.5}}),
                       doctest::Contains("must be an integer"), ConfigError);
  CHECK_THROWS_AS(validate_keys({{"scenario", 7}}), ConfigError);
  CHECK_NOTHROW(validate_keys({{"seed", 3}, {"params.delta", -1.0}}));
}

TEST_CASE("sweep axes must name numeric keys and carry arrays") {
  FlatConfig ok = {{"sweep.params.g_peak", nlohmann::json::array({2, 3})}};
  CHECK_NOTHROW(validate_keys(ok));

  CHECK_THROWS_AS(validate_keys({{"sweep.scenario",
                                  nlohmann::json::array({"a"})}}),
                  ConfigError);
  CHECK_THROWS_AS(validate_keys({{"sweep.params.g_peak", 3}}), ConfigError);
  CHECK_THROWS_AS(validate_keys({{"sweep.params.g_peak",
                                  nlohmann::json::array()}}),
                  ConfigError);
  CHECK_THROWS_AS(validate_keys({{"sweep.params.g_peak",
                                  nlohmann::json::array({1, "x"})}}),
                  ConfigError);
}

TEST_CASE("MHz spellings divide by the kappa reference") {
  FlatConfig cfg = {{"units.kappa_MHz", 4.0},
                    {"params.g_peak_MHz", 12.0},
                    {"sweep.params.delta_MHz", nlohmann::json::array({4, 8})}};
  apply_units(cfg);
  CHECK(cfg.count("params.g_peak_MHz") == 0);
  CHECK(cfg.at("params.g_peak").get<double>() == 3.0);
  CHECK(cfg.at("sweep.params.delta")[0].get<double>() == 1.0);
  CHECK(cfg.at("sweep.params.delta")[1].get<double>() == 2.0);

  FlatConfig both = {{"units.kappa_MHz", 4.0},
                     {"params.g_peak", 3.0},
                     {"params.g_peak_MHz", 12.0}};
  CHECK_THROWS_WITH_AS(apply_units(both), doctest::Contains("both"),
                       ConfigError);

  FlatConfig unreferenced = {{"params.g_peak_MHz", 12.0}};
  CHECK_THROWS_WITH_AS(apply_units(unreferenced),
                       doctest::Contains("units.kappa_MHz"), ConfigError);
}

TEST_CASE("resolution fills defaults from the horizon") {
  ResolvedConfig r = resolve_config({});
  CHECK(r.scenario == "custom");
  CHECK(r.grid.t_end == 20.0);
  CHECK(r.center == 10.0);
  CHECK(r.t_w == 4.0);
  CHECK(r.coupling_g == r.params.g_peak);

  r = resolve_config({{"grid.t_end", 30.0}});
  CHECK(r.center == 15.0);
  CHECK(r.t_w == 6.0);

  // Explicit values survive; invalid ones surface as named errors.
  r = resolve_config({{"drive.center", 12.0}, {"grid.t_end", 30.0}});
  CHECK(r.center == 12.0);
  CHECK_THROWS_AS(resolve_config({{"params.g_peak", -3.0}}), ConfigError);
  CHECK_THROWS_AS(resolve_config({{"grid.t_end", 0.0}}), ConfigError);
}

TEST_CASE("the echoed config resolves to the same run") {
  FlatConfig doc = {{"grid.t_end", 10.0},
                    {"params.gamma_s", 0.5},
                    {"drive.rho_peak", 2.0},
                    {"coupling.type", "sinusoidal"},
                    {"coupling.amplitude", 5.0}};
  ResolvedConfig a = resolve_config(doc);
  ResolvedConfig b = resolve_config(a.echo);
  CHECK(a.grid.t_end == b.grid.t_end);
  CHECK(a.params.gamma_s == b.params.gamma_s);
  CHECK(a.rho_peak == b.rho_peak);
  CHECK(a.center == b.center);
  CHECK(a.t_w == b.t_w);
  CHECK(a.coupling_type == b.coupling_type);
  CHECK(a.coupling_amplitude == b.coupling_amplitude);
  CHECK(a.coupling_angular_rate == b.coupling_angular_rate);
  CHECK(a.echo == b.echo);
}

TEST_CASE("scenario catalog is frozen") {
  const auto& ids = scenario_ids();
  REQUIRE(ids.size() == 10);
  CHECK(ids[0] == "fig2");
  CHECK(ids[7] == "transfer_design");
  CHECK(ids[9] == "custom");

  ScenarioPlan fig2 = expand_scenario("fig2", {});
  REQUIRE(fig2.runs.size() == 2);
  CHECK(fig2.runs[0].label == "g3");
  CHECK(fig2.runs[1].label == "g6");
  CHECK(fig2.runs[0].config.at("grid.t_end").get<double>() == 20.0);
  CHECK(fig2.runs[0].config.at("drive.t_w").get<double>() == 4.0);
  CHECK(fig2.runs[1].config.at("coupling.g").get<double>() == 6.0);

  ScenarioPlan fig4 = expand_scenario("fig4_sweep", {});
  REQUIRE(fig4.runs.size() == 7);
  const double expected_g[] = {2.0, 2.5, 3.0, 4.0, 5.0, 7.0, 10.0};
  for (int i = 0; i < 7; ++i) {
    CHECK(fig4.runs[i].config.at("coupling.g").get<double>() == expected_g[i]);
    CHECK(fig4.runs[i].config.at("grid.t_end").get<double>() == 30.0);
  }
  CHECK(fig4.runs[0].label == "dsc4");
  CHECK(fig4.runs[6].label == "dsc100");

  ScenarioPlan fig8 = expand_scenario("fig8_matched_timevar", {});
  REQUIRE(fig8.runs.size() == 2);
  CHECK(fig8.runs[0].label == "phi0_0");
  CHECK(fig8.runs[1].label == "phi0_half_pi");
  CHECK(fig8.runs[0].config.at("coupling.phase").get<double>() == 0.0);

  // Overrides land on every run of the plan.
  ScenarioPlan shorter = expand_scenario("fig2", {{"grid.t_end", 10.0}});
  CHECK(shorter.runs[0].config.at("grid.t_end").get<double>() == 10.0);
  CHECK(shorter.runs[1].config.at("grid.t_end").get<double>() == 10.0);

  CHECK_THROWS_WITH_AS(expand_scenario("nosuch", {}),
                       doctest::Contains("unknown scenario"), ConfigError);
}

TEST_CASE("seeded phase draws are deterministic") {
  ScenarioPlan a = expand_scenario("fig8_matched_timevar", {{"seed", 7}});
  ScenarioPlan b = expand_scenario("fig8_matched_timevar", {{"seed", 7}});
  ScenarioPlan c = expand_scenario("fig8_matched_timevar", {{"seed", 8}});
  CHECK(a.runs[0].label == "phi0_draw1");
  CHECK(a.runs[1].label == "phi0_draw2");
  const double phi_a0 = a.runs[0].config.at("coupling.phase").get<double>();
  const double phi_b0 = b.runs[0].config.at("coupling.phase").get<double>();
  const double phi_c0 = c.runs[0].config.at("coupling.phase").get<double>();
  CHECK(phi_a0 == phi_b0);
  CHECK(phi_a0 != phi_c0);
  CHECK(phi_a0 >= 0.0);
  CHECK(phi_a0 < 2.0 * 3.14159265358979323846);
}

TEST_CASE("output directory resolution order") {
  ResolvedConfig cfg;
  CHECK(resolve_out_dir("flagged", cfg) == "flagged");

  cfg.out_dir = "from_config";
  CHECK(resolve_out_dir("", cfg) == "from_config");

  cfg.out_dir.clear();
  setenv("DARKPULSE_OUT_DIR", "from_env", 1);
  CHECK(resolve_out_dir("", cfg) == "from_env");
  unsetenv("DARKPULSE_OUT_DIR");
  CHECK(resolve_out_dir("", cfg) == "./out");
}
