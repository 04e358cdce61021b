#pragma once

// Reference propagator for the coefficient equations, independent of the
// production integrator. The (N+3)x(N+3) generator A(t) is assembled
// explicitly from the equations of motion and the state is advanced with a
// per-slice matrix exponential of the fourth-order (two-node Gauss) Magnus
// expansion:
//   Omega = (h/2)(A1 + A2) + (sqrt(3)/12) h^2 [A2, A1],
// with A1, A2 evaluated at t0 + h(1/2 -+ sqrt(3)/6). Slow (dense expm per
// slice) but tied to the equations in the most literal way available.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "darkpulse/model.hpp"
#include "darkpulse/simulator.hpp"
#include "darkpulse/types.hpp"

namespace testsupport {

// Mode grid with the production index convention omega_j = (j - N/2) dw,
// j = 1..N, built directly so small-N grids (useful only for oracle
// comparisons) are not subject to the resolution preconditions.
inline darkpulse::ModeGrid<double> explicit_mode_grid(int n_modes,
                                                      double delta_omega,
                                                      double kappa) {
  darkpulse::ModeGrid<double> grid;
  grid.n_modes = n_modes;
  grid.delta_omega = delta_omega;
  grid.omegas.resize(n_modes);
  for (int j = 1; j <= n_modes; ++j)
    grid.omegas[j - 1] = (j - n_modes / 2) * delta_omega;
  grid.kappa_prime =
      std::sqrt(kappa * delta_omega / (2.0 * 3.14159265358979323846));
  return grid;
}

// Dense generator for d/dt (c_d, c_b, c_e, c_1..c_N) at a fixed drive angle.
inline Eigen::MatrixXcd system_generator(
    const darkpulse::DriveAngle<double>& angle,
    const darkpulse::PhysicalParams<double>& params,
    const darkpulse::ModeGrid<double>& modes) {
  const int n = modes.n_modes;
  const std::complex<double> i_unit(0.0, 1.0);
  const double kp = modes.kappa_prime;
  const double st = std::sin(angle.theta);
  const double ct = std::cos(angle.theta);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n + 3, n + 3);
  a(0, 1) = -angle.theta_dot;
  a(1, 0) = angle.theta_dot;
  a(1, 2) = -i_unit * angle.gap;
  a(2, 1) = -i_unit * angle.gap;
  a(2, 2) = std::complex<double>(-0.5 * params.gamma_s, -params.delta);
  for (int j = 0; j < n; ++j) {
    a(0, 3 + j) = -kp * st;
    a(1, 3 + j) = kp * ct;
    a(3 + j, 0) = kp * st;
    a(3 + j, 1) = -kp * ct;
    a(3 + j, 3 + j) = -i_unit * modes.omegas[j];
  }
  return a;
}

inline Eigen::MatrixXcd system_generator(
    const darkpulse::PhysicalParams<double>& params,
    const darkpulse::DriveProfile<double>& profile,
    const darkpulse::CouplingTrajectory<double>& coupling,
    const darkpulse::ModeGrid<double>& modes, double t) {
  return system_generator(darkpulse::theta_of_t(profile, coupling, t), params,
                          modes);
}

// Final state from the dark initial condition after n_slices Magnus steps.
// A sign-changing coupling g(t) makes the generator's gap term |g| kinked;
// `breakpoints` lists such interior times so a slice boundary lands on each
// kink and every slice sees a smooth generator (otherwise the oracle's own
// error near the kinks can exceed the agreement it is meant to certify).
inline darkpulse::CVector<double> dense_reference_final_state(
    const darkpulse::PhysicalParams<double>& params,
    const darkpulse::DriveProfile<double>& profile,
    const darkpulse::CouplingTrajectory<double>& coupling,
    const darkpulse::ModeGrid<double>& modes, double t_end, int n_slices,
    const std::vector<double>& breakpoints = {}) {
  const double root3 = std::sqrt(3.0);
  std::vector<double> edges;
  edges.reserve(n_slices + 1 + breakpoints.size());
  for (int s = 0; s <= n_slices; ++s) edges.push_back(t_end * s / n_slices);
  for (double b : breakpoints)
    if (b > 0.0 && b < t_end) edges.push_back(b);
  std::sort(edges.begin(), edges.end());

  darkpulse::CVector<double> y =
      darkpulse::CVector<double>::Zero(modes.n_modes + 3);
  y[0] = std::complex<double>(1.0);
  for (size_t s = 0; s + 1 < edges.size(); ++s) {
    const double t0 = edges[s];
    const double h = edges[s + 1] - t0;
    if (!(h > 1e-15 * t_end)) continue;
    const Eigen::MatrixXcd a1 = system_generator(
        params, profile, coupling, modes, t0 + h * (0.5 - root3 / 6.0));
    const Eigen::MatrixXcd a2 = system_generator(
        params, profile, coupling, modes, t0 + h * (0.5 + root3 / 6.0));
    const Eigen::MatrixXcd omega =
        0.5 * h * (a1 + a2) + (root3 / 12.0) * h * h * (a2 * a1 - a1 * a2);
    y = omega.exp() * y;
  }
  return y;
}

}  // namespace testsupport
