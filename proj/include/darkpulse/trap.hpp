#pragma once

#include <cmath>

#include "darkpulse/types.hpp"

namespace darkpulse {

// Physical constants (SI). Speed of light, Planck and Boltzmann are the exact
// 2019 SI definitions; caesium data follow the standard alkali reference
// tables (atomic mass, D-line wavelengths in vacuum, D2 natural linewidth).
namespace constants {
inline constexpr double c_light = 299792458.0;          // m/s
inline constexpr double h_planck = 6.62607015e-34;      // J s
inline constexpr double k_boltzmann = 1.380649e-23;     // J/K
inline constexpr double cs_mass = 2.20694650e-25;       // kg
inline constexpr double cs_d1_wavelength = 894.59295986e-9;  // m, 6S1/2-6P1/2
inline constexpr double cs_d2_wavelength = 852.34727582e-9;  // m, 6S1/2-6P3/2
inline constexpr double cs_d2_linewidth = 2.0 * 3.14159265358979323846 *
                                          5.2227e6;  // rad/s, Gamma(D2)

inline constexpr double angular_frequency(double wavelength) {
  return 2.0 * 3.14159265358979323846 * c_light / wavelength;
}
}  // namespace constants

// Red-detuned intracavity dipole trap. Detunings are stored as positive
// magnitudes below the two fine-structure lines; the potential is quoted as a
// positive depth in frequency units (U/h).
template <class T>
struct TrapConfig {
  T lambda_fort = T(936e-9);  // trap wavelength (m)
  T w0 = T(25e-6);            // beam waist (m)
  T power_in = T(1e-3);       // input power (W)
  T finesse = T(2200);        // cavity finesse at lambda_fort
  T delta_1 = T(constants::angular_frequency(constants::cs_d1_wavelength) -
                constants::angular_frequency(936e-9));  // |detuning| from P1/2
  T delta_2 = T(constants::angular_frequency(constants::cs_d2_wavelength) -
                constants::angular_frequency(936e-9));  // |detuning| from P3/2
  T gamma_s = T(constants::cs_d2_linewidth);  // excited-state decay (rad/s)
  T omega_0 = T(constants::angular_frequency(
      constants::cs_d2_wavelength));  // transition frequency (rad/s)
  T atom_mass = T(constants::cs_mass);        // kg
  T temperature_fraction = T(0.5);            // k_B T / U0

  void validate() const {
    auto positive = [](T v, const char* name) {
      if (!(v > T(0)))
        throw ConfigError(std::string("trap config: ") + name +
                          " must be > 0");
    };
    positive(lambda_fort, "lambda_fort");
    positive(w0, "w0");
    positive(power_in, "power_in");
    positive(finesse, "finesse");
    positive(delta_1, "delta_1");
    positive(delta_2, "delta_2");
    positive(gamma_s, "gamma_s");
    positive(omega_0, "omega_0");
    positive(atom_mass, "atom_mass");
    if (!(temperature_fraction > T(0)) || !(temperature_fraction < T(1)))
      throw ConfigError("trap config: temperature_fraction must be in (0, 1)");
  }
};

// Standing-wave trap potential at a position, in Hz (depth is positive).
// The circulating power is power_in * finesse / pi, and the peak intensity of
// the standing wave is 8 P_circ / (pi w0^2).
template <class T>
T fort_potential(const TrapConfig<T>& cfg, T x, T y, T z) {
  const T pi = T(3.14159265358979323846L);
  const T c = T(constants::c_light);
  const T p_circ = cfg.power_in * cfg.finesse / pi;
  const T axial = std::sin(T(2) * pi * z / cfg.lambda_fort);
  const T intensity = (T(8) * p_circ / (pi * cfg.w0 * cfg.w0)) * axial *
                      axial * std::exp(-(x * x + y * y) / (cfg.w0 * cfg.w0));
  const T prefactor = pi * c * c * cfg.gamma_s /
                      (T(2) * cfg.omega_0 * cfg.omega_0 * cfg.omega_0);
  const T weight = T(2) / cfg.delta_2 + T(1) / cfg.delta_1;
  return prefactor * weight * intensity / T(constants::h_planck);
}

// Depth at an antinode on axis, in Hz.
template <class T>
T fort_depth(const TrapConfig<T>& cfg) {
  return fort_potential(cfg, T(0), T(0), cfg.lambda_fort / T(4));
}

template <class T>
struct TrapFrequencies {
  T nu_axial;   // Hz
  T nu_radial;  // Hz
};

// Harmonic oscillation frequencies about a potential minimum, for a depth u0
// given in Hz. Axial: nu = (omega_fort / 2 pi c) sqrt(2 h u0 / m). Radial:
// nu = (1 / 2 pi w0) sqrt(4 h u0 / m), the standard Gaussian-beam result
// quoted in the lab (the radial intensity falls as exp(-2 r^2 / w0^2) for
// this purpose; note this sits sqrt(2) above the curvature of the
// exp(-r^2/w0^2) profile used for the coupling spread).
template <class T>
TrapFrequencies<T> trap_frequencies(T u0, const TrapConfig<T>& cfg) {
  if (!(u0 > T(0)))
    throw ConfigError("trap frequencies: depth must be > 0");
  const T pi = T(3.14159265358979323846L);
  const T energy = T(constants::h_planck) * u0;
  const T v2 = T(2) * energy / cfg.atom_mass;  // (m/s)^2
  TrapFrequencies<T> out;
  out.nu_axial = std::sqrt(v2) / cfg.lambda_fort;
  out.nu_radial = std::sqrt(T(2) * v2) / (T(2) * pi * cfg.w0);
  return out;
}

template <class T>
struct ThermalExtent {
  T delta_z;       // m, axial rms excursion
  T delta_r_perp;  // m, radial excursion
};

// Spatial extent of thermal motion at k_B T = fraction * U0:
// delta_z = (lambda/2 pi) asin(sqrt(fraction));
// delta_r = w0 sqrt(-ln(1 - fraction)).
template <class T>
ThermalExtent<T> thermal_extent(const TrapConfig<T>& cfg) {
  const T f = cfg.temperature_fraction;
  if (!(f < T(1)))
    throw ConfigError(
        "thermal extent: temperature fraction >= 1, atom is untrapped");
  if (!(f >= T(0)))
    throw ConfigError("thermal extent: temperature fraction must be >= 0");
  const T pi = T(3.14159265358979323846L);
  ThermalExtent<T> out;
  out.delta_z = cfg.lambda_fort / (T(2) * pi) * std::asin(std::sqrt(f));
  out.delta_r_perp = cfg.w0 * std::sqrt(-std::log1p(-f));
  return out;
}

template <class T>
struct CouplingSpread {
  T radial_fraction;  // 1 - exp(-dr^2 / w0_qed^2)
  T axial_fraction;   // 1 - |cos(k0_qed dz)|
};

// Fractional variation of the coupling rate over the thermal excursion, for a
// cavity mode with waist w0_qed and wavenumber k0_qed (distinct from the trap
// beam). Axial variation is the worst-case drop of |sin(k0 z)| when the atom
// moves delta_z away from a cavity antinode.
template <class T>
CouplingSpread<T> coupling_spread(const ThermalExtent<T>& extent, T w0_qed,
                                  T k0_qed) {
  if (!(w0_qed > T(0)) || !(k0_qed > T(0)))
    throw ConfigError("coupling spread: cavity mode parameters must be > 0");
  CouplingSpread<T> out;
  const T r = extent.delta_r_perp / w0_qed;
  out.radial_fraction = -std::expm1(-r * r);
  out.axial_fraction = T(1) - std::abs(std::cos(k0_qed * extent.delta_z));
  return out;
}

// Everything the trap scenario reports, in one pass.
template <class T>
struct TrapReport {
  T u0_hz;
  TrapFrequencies<T> frequencies;
  ThermalExtent<T> extent;
  CouplingSpread<T> spread;
  T w0_qed;
  T k0_qed;
};

template <class T>
TrapReport<T> trap_report(const TrapConfig<T>& cfg, T w0_qed = T(25e-6),
                          T k0_qed = T(2.0 * 3.14159265358979323846 /
                                       constants::cs_d2_wavelength)) {
  cfg.validate();
  TrapReport<T> out;
  out.u0_hz = fort_depth(cfg);
  out.frequencies = trap_frequencies(out.u0_hz, cfg);
  out.extent = thermal_extent(cfg);
  out.spread = coupling_spread(out.extent, w0_qed, k0_qed);
  out.w0_qed = w0_qed;
  out.k0_qed = k0_qed;
  return out;
}

}  // namespace darkpulse
