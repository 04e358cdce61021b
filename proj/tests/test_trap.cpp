#include <cmath>

#include "doctest.h"

#include "darkpulse/trap.hpp"

using namespace darkpulse;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("reference trap numbers for the caesium standing-wave FORT") {
  TrapConfig<double> cfg;  // 936 nm, 25 um waist, 1 mW in, finesse 2200
  TrapReport<double> r = trap_report(cfg);

  // Depth and oscillation frequencies of the 1 mW intracavity trap.
  CHECK(r.u0_hz / 1e6 == doctest::Approx(38.0).epsilon(0.05));
  CHECK(r.frequencies.nu_axial / 1e3 == doctest::Approx(510.0).epsilon(0.05));
  CHECK(r.frequencies.nu_radial / 1e3 == doctest::Approx(4.3).epsilon(0.05));

  // Thermal excursions at half the trap depth.
  CHECK(r.extent.delta_z * 1e9 == doctest::Approx(117.0).epsilon(1e-6));
  CHECK(r.extent.delta_r_perp * 1e6 ==
        doctest::Approx(25.0 * std::sqrt(std::log(2.0))).epsilon(1e-9));

  // With equal trap and cavity waists the radial coupling fraction equals
  // the temperature fraction identically: 1 - e^{ln(1-f)} = f.
  CHECK(r.spread.radial_fraction == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.spread.axial_fraction ==
        doctest::Approx(1.0 - std::cos(r.k0_qed * r.extent.delta_z))
            .epsilon(1e-12));
}

TEST_CASE("radial coupling spread at the 15 um excursion") {
  TrapConfig<double> cfg;
  ThermalExtent<double> extent = thermal_extent(cfg);
  extent.delta_r_perp = 15e-6;
  CouplingSpread<double> s =
      coupling_spread(extent, 25e-6, 2 * kPi / constants::cs_d2_wavelength);
  CHECK(s.radial_fraction ==
        doctest::Approx(1.0 - std::exp(-0.36)).epsilon(1e-12));
  CHECK(s.radial_fraction == doctest::Approx(0.30).epsilon(0.1));
}

TEST_CASE("potential scales linearly with drive power") {
  TrapConfig<double> cfg;
  TrapConfig<double> stronger = cfg;
  stronger.power_in *= 3.0;
  CHECK(fort_depth(stronger) ==
        doctest::Approx(3.0 * fort_depth(cfg)).epsilon(1e-12));

  TrapFrequencies<double> f = trap_frequencies(fort_depth(cfg), cfg);
  TrapFrequencies<double> fs = trap_frequencies(fort_depth(stronger), stronger);
  CHECK(fs.nu_axial ==
        doctest::Approx(std::sqrt(3.0) * f.nu_axial).epsilon(1e-12));
  CHECK(fs.nu_radial ==
        doctest::Approx(std::sqrt(3.0) * f.nu_radial).epsilon(1e-12));
}

TEST_CASE("axial frequency equals the curvature of the standing wave") {
  TrapConfig<double> cfg;
  const double u0 = fort_depth(cfg);
  const double z0 = cfg.lambda_fort / 4;
  const double h = 1e-10;
  // V(z) = -h_planck U(z); second difference at the antinode.
  const double k_ax = constants::h_planck *
                      (2 * u0 - fort_potential(cfg, 0.0, 0.0, z0 + h) -
                       fort_potential(cfg, 0.0, 0.0, z0 - h)) /
                      (h * h);
  const double nu = std::sqrt(k_ax / cfg.atom_mass) / (2 * kPi);
  CHECK(trap_frequencies(u0, cfg).nu_axial ==
        doctest::Approx(nu).epsilon(1e-4));
}

TEST_CASE("radial frequency sits sqrt(2) above the intensity-profile curvature") {
  // The reported radial frequency follows the e^{-2 r^2 / w0^2} beam-intensity
  // convention; the e^{-r^2 / w0^2} profile used for the coupling spread has
  // half the curvature.
  TrapConfig<double> cfg;
  const double u0 = fort_depth(cfg);
  const double z0 = cfg.lambda_fort / 4;
  const double h = 1e-8;
  const double k_rad = constants::h_planck *
                       (2 * u0 - fort_potential(cfg, h, 0.0, z0) -
                        fort_potential(cfg, -h, 0.0, z0)) /
                       (h * h);
  const double nu_profile = std::sqrt(k_rad / cfg.atom_mass) / (2 * kPi);
  CHECK(trap_frequencies(u0, cfg).nu_radial ==
        doctest::Approx(std::sqrt(2.0) * nu_profile).epsilon(1e-4));
}

TEST_CASE("axial to radial frequency ratio depends only on the geometry") {
  TrapConfig<double> cfg;
  for (double power : {0.5e-3, 1e-3, 4e-3}) {
    cfg.power_in = power;
    TrapFrequencies<double> f = trap_frequencies(fort_depth(cfg), cfg);
    CHECK(f.nu_axial / f.nu_radial ==
          doctest::Approx(std::sqrt(2.0) * kPi * cfg.w0 / cfg.lambda_fort)
              .epsilon(1e-12));
  }
}

TEST_CASE("thermal extent closed forms") {
  TrapConfig<double> cfg;
  cfg.temperature_fraction = 0.5;
  ThermalExtent<double> e = thermal_extent(cfg);
  // asin(sqrt(1/2)) = pi/4, so delta_z = lambda / 8.
  CHECK(e.delta_z == doctest::Approx(cfg.lambda_fort / 8).epsilon(1e-12));

  cfg.temperature_fraction = 1.0;
  CHECK_THROWS_WITH_AS(thermal_extent(cfg), doctest::Contains("untrapped"),
                       ConfigError);
  cfg.temperature_fraction = 1.5;
  CHECK_THROWS_AS(thermal_extent(cfg), ConfigError);
}

TEST_CASE("trap configuration validation") {
  TrapConfig<double> cfg;
  cfg.power_in = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg = TrapConfig<double>();
  cfg.temperature_fraction = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  cfg = TrapConfig<double>();
  cfg.finesse = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);

  CHECK_THROWS_AS(trap_frequencies(-1.0, TrapConfig<double>()), ConfigError);
  CHECK_THROWS_AS(
      coupling_spread(ThermalExtent<double>{1e-7, 1e-5}, 0.0, 1.0),
      ConfigError);
}
