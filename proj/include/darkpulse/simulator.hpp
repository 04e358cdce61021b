#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "darkpulse/model.hpp"
#include "darkpulse/types.hpp"

namespace darkpulse {

// Discretize the output continuum: omega_j = (j - N/2) delta_omega, and the
// effective per-mode decay rate kappa' = sqrt(kappa delta_omega / 2 pi).
// The resolution preconditions are named in the error messages.
template <class T>
ModeGrid<T> build_mode_grid(const PhysicalParams<T>& params, T horizon) {
  params.validate();
  if (!(params.omega_b >= T(10) * params.kappa)) {
    std::ostringstream os;
    os << "mode grid: omega_b >= 10 kappa violated (omega_b = "
       << params.omega_b << ")";
    throw ConfigError(os.str());
  }
  if (!(params.delta_omega * horizon <= T(0.2))) {
    std::ostringstream os;
    os << "mode grid: delta_omega * T <= 0.2 violated (delta_omega * T = "
       << params.delta_omega * horizon << ")";
    throw ConfigError(os.str());
  }
  const long n = std::lround(T(2) * params.omega_b / params.delta_omega);
  if (n < 2 || n % 2 != 0) {
    std::ostringstream os;
    os << "mode grid: mode count round(2 omega_b / delta_omega) = " << n
       << " must be >= 2 and even";
    throw ConfigError(os.str());
  }
  ModeGrid<T> grid;
  grid.n_modes = static_cast<int>(n);
  grid.delta_omega = params.delta_omega;
  grid.omegas.resize(n);
  for (long j = 1; j <= n; ++j)
    grid.omegas[j - 1] = (T(j) - T(n) / T(2)) * params.delta_omega;
  grid.kappa_prime =
      std::sqrt(params.kappa * params.delta_omega / (T(2) * std::numbers::pi_v<T>));
  return grid;
}

// Coefficient equations in the rotated (dark/bright) frame:
//   c_d' = -theta_dot c_b - kappa' sin(theta) S
//   c_b' =  theta_dot c_d - i gap c_e + kappa' cos(theta) S
//   c_e' = (-i delta - gamma_s/2) c_e - i gap c_b
//   c_j' = -i omega_j c_j + kappa' (sin(theta) c_d - cos(theta) c_b)
// with S = sum_j c_j and gap = sqrt(Omega^2 + g^2).
template <class T>
void rhs(const CVector<T>& y, const DriveAngle<T>& angle, T delta, T gamma_s,
         const ModeGrid<T>& grid, CVector<T>& dydt) {
  const Eigen::Index n = grid.n_modes;
  const T kp = grid.kappa_prime;
  const T st = std::sin(angle.theta);
  const T ct = std::cos(angle.theta);
  const std::complex<T> i_unit(T(0), T(1));
  const std::complex<T> s_sum = y.tail(n).sum();
  dydt.resize(y.size());
  dydt[0] = -angle.theta_dot * y[1] - kp * st * s_sum;
  dydt[1] = angle.theta_dot * y[0] - i_unit * angle.gap * y[2] + kp * ct * s_sum;
  dydt[2] = (std::complex<T>(-T(0.5) * gamma_s, -delta)) * y[2] -
            i_unit * angle.gap * y[1];
  dydt.tail(n).array() =
      -i_unit * grid.omegas.template cast<std::complex<T>>().array() *
          y.tail(n).array() +
      (kp * st * y[0] - kp * ct * y[1]);
}

namespace detail {

// Fixed integrator step: dt = min(0.05/omega_b, T/4000, 0.05/max|theta_dot|),
// then rounded up to an integer number of steps.
template <class T>
long choose_steps(const PhysicalParams<T>& params, const DriveProfile<T>& profile,
                  const CouplingTrajectory<T>& coupling, const TimeGrid<T>& grid) {
  T dt = grid.dt;
  if (dt == T(0)) {
    dt = std::min(T(0.05) / params.omega_b, grid.t_end / T(4000));
    T max_td = T(0);
    const int probes = 8000;
    for (int i = 0; i <= probes; ++i) {
      T t = grid.t_end * T(i) / T(probes);
      max_td = std::max(max_td,
                        std::abs(theta_of_t(profile, coupling, t).theta_dot));
    }
    if (max_td > T(0)) dt = std::min(dt, T(0.05) / max_td);
  } else if (dt * params.omega_b > T(0.1)) {
    std::ostringstream os;
    os << "time grid: dt * omega_b <= 0.1 violated (dt * omega_b = "
       << dt * params.omega_b << ")";
    throw ConfigError(os.str());
  }
  return std::max<long>(1, static_cast<long>(std::ceil(grid.t_end / dt - T(1e-9))));
}

}  // namespace detail

// Integrate the coefficient equations with classic fixed-step 4th-order
// Runge-Kutta from the dark initial state c_d(0) = 1. Drive tables are
// evaluated on the half-step grid so all four stages see exact coefficients.
// This overload takes a caller-supplied mode grid (any N >= 1), which is
// useful for cross-checking against dense reference propagators at small N;
// the params-only overload below builds the resolution-checked default grid.
template <class T>
SystemTrajectory<T> integrate(const PhysicalParams<T>& params,
                              const DriveProfile<T>& profile,
                              const CouplingTrajectory<T>& coupling,
                              const TimeGrid<T>& grid,
                              const ModeGrid<T>& modes) {
  grid.validate();
  const Eigen::Index n_modes = modes.n_modes;
  const long n = detail::choose_steps(params, profile, coupling, grid);
  const T dt = grid.t_end / T(n);

  // Half-grid tables of the drive geometry.
  Vector<T> sin_tab(2 * n + 1), cos_tab(2 * n + 1), thd_tab(2 * n + 1),
      gap_tab(2 * n + 1);
  for (long i = 0; i <= 2 * n; ++i) {
    const T t = T(0.5) * dt * T(i);
    const DriveAngle<T> a = theta_of_t(profile, coupling, std::min(t, grid.t_end));
    sin_tab[i] = std::sin(a.theta);
    cos_tab[i] = std::cos(a.theta);
    thd_tab[i] = a.theta_dot;
    gap_tab[i] = a.gap;
  }

  const T kp = modes.kappa_prime;
  const std::complex<T> i_unit(T(0), T(1));
  const std::complex<T> e_coef(-T(0.5) * params.gamma_s, -params.delta);
  const CVector<T> miom = -i_unit * modes.omegas.template cast<std::complex<T>>();

  CVector<T> y = CVector<T>::Zero(n_modes + 3);
  y[0] = std::complex<T>(1);
  CVector<T> k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()),
      ytmp(y.size());

  auto deriv = [&](const CVector<T>& state, long half_idx, CVector<T>& out) {
    const T st = sin_tab[half_idx];
    const T ct = cos_tab[half_idx];
    const T td = thd_tab[half_idx];
    const T gp = gap_tab[half_idx];
    const std::complex<T> s_sum = state.tail(n_modes).sum();
    out[0] = -td * state[1] - kp * st * s_sum;
    out[1] = td * state[0] - i_unit * gp * state[2] + kp * ct * s_sum;
    out[2] = e_coef * state[2] - i_unit * gp * state[1];
    out.tail(n_modes).array() = miom.array() * state.tail(n_modes).array() +
                                (kp * st * state[0] - kp * ct * state[1]);
  };

  const int stride = grid.stride > 0
                         ? grid.stride
                         : std::max<int>(1, static_cast<int>(n / 2000));
  SystemTrajectory<T> traj;
  traj.t_end = grid.t_end;
  traj.dt = dt;
  traj.n_steps = n;
  std::vector<T> times;
  T norm_floor = T(1);
  T drift = T(0);

  auto record = [&](long step) {
    times.push_back(dt * T(step));
    SystemState<T> snap(static_cast<int>(n_modes));
    snap.v = y;
    traj.samples.push_back(std::move(snap));
  };
  record(0);

  for (long k = 0; k < n; ++k) {
    deriv(y, 2 * k, k1);
    ytmp = y + (T(0.5) * dt) * k1;
    deriv(ytmp, 2 * k + 1, k2);
    ytmp = y + (T(0.5) * dt) * k2;
    deriv(ytmp, 2 * k + 1, k3);
    ytmp = y + dt * k3;
    deriv(ytmp, 2 * k + 2, k4);
    y += (dt / T(6)) * (k1 + T(2) * k2 + T(2) * k3 + k4);

    const T norm = y.squaredNorm();
    if (norm > norm_floor) {
      drift = std::max(drift, norm - norm_floor);
      if (norm - norm_floor > T(1e-6)) {
        std::ostringstream os;
        os << "integration unstable: norm grew by " << norm - norm_floor
           << " at t = " << dt * T(k + 1) << "; reduce grid.dt";
        throw InstabilityError(os.str());
      }
    } else {
      norm_floor = norm;
    }
    if ((k + 1) % stride == 0 || k + 1 == n) record(k + 1);
  }

  traj.sample_times = Eigen::Map<Vector<T>>(times.data(), times.size());
  traj.final_state = traj.samples.back();
  traj.norm_drift = drift;
  return traj;
}

template <class T>
SystemTrajectory<T> integrate(const PhysicalParams<T>& params,
                              const DriveProfile<T>& profile,
                              const CouplingTrajectory<T>& coupling,
                              const TimeGrid<T>& grid) {
  return integrate(params, profile, coupling, grid,
                   build_mode_grid(params, grid.t_end));
}

// Output waveform from the final continuum amplitudes:
// f(t) = sqrt(delta_omega / 2 pi) * sum_j c_j(T) e^{-i omega_j (t - T)}.
// Evaluated by per-mode phase rotation between consecutive sample times.
template <class T>
PulseShape<T> reconstruct_pulse(const CVector<T>& c_j_final,
                                const ModeGrid<T>& grid, const Vector<T>& times,
                                T t_end) {
  const Eigen::Index n = grid.n_modes;
  const T scale =
      std::sqrt(grid.delta_omega / (T(2) * std::numbers::pi_v<T>));
  PulseShape<T> p;
  p.times = times;
  p.values.resize(times.size());
  if (times.size() == 0) return p;
  const std::complex<T> i_unit(T(0), T(1));
  CVector<T> w(n), rot(n);
  for (Eigen::Index j = 0; j < n; ++j)
    w[j] = c_j_final[j] *
           std::exp(-i_unit * grid.omegas[j] * (times[0] - t_end));
  const T dtau = times.size() > 1 ? times[1] - times[0] : T(0);
  for (Eigen::Index j = 0; j < n; ++j)
    rot[j] = std::exp(-i_unit * grid.omegas[j] * dtau);
  for (Eigen::Index k = 0; k < times.size(); ++k) {
    p.values[k] = scale * w.sum();
    if (k + 1 < times.size()) w.array() *= rot.array();
  }
  return p;
}

template <class T>
struct NoiseMetrics {
  T p_spon;        // spontaneous-emission loss
  T p_tran;        // population left in the system at t = T
  T p_mis;         // shape mismatch |1 - normalized overlap|
  T mode_energy;   // sum_j |c_j(T)|^2
};

// Complex trapezoid inner product int conj(a) b dt on a common grid.
template <class T>
std::complex<T> overlap_integral(const PulseShape<T>& a, const PulseShape<T>& b) {
  if (a.times.size() != b.times.size())
    throw ConfigError("overlap: waveforms on different grids");
  CVector<T> prod = a.values.conjugate().array() * b.values.array();
  std::complex<T> s = prod.sum() - T(0.5) * (prod[0] + prod[prod.size() - 1]);
  return s * a.dt();
}

// Shape mismatch between two waveforms, |1 - <a,b>/sqrt(<a,a><b,b>)|.
template <class T>
T mismatch(const PulseShape<T>& a, const PulseShape<T>& b) {
  const T ea = a.energy();
  const T eb = b.energy();
  if (!(ea > T(0)) || !(eb > T(0)))
    throw ConfigError("mismatch: undefined overlap with an identically zero pulse");
  const std::complex<T> ov = overlap_integral(a, b) / std::sqrt(ea * eb);
  return std::abs(T(1) - ov);
}

// Loss metrics of a completed run.
template <class T>
NoiseMetrics<T> noise_metrics(const SystemState<T>& final_state,
                              const PulseShape<T>& f_real,
                              const PulseShape<T>& f_id) {
  NoiseMetrics<T> m;
  m.mode_energy = final_state.c_j().squaredNorm();
  m.p_tran = std::norm(final_state.c_d()) + std::norm(final_state.c_b()) +
             std::norm(final_state.c_e());
  m.p_spon = T(1) - m.p_tran - m.mode_energy;
  m.p_mis = mismatch(f_real, f_id);
  return m;
}

}  // namespace darkpulse
