#pragma once

#include <cmath>
#include <sstream>

#include "darkpulse/analytic.hpp"
#include "darkpulse/types.hpp"

namespace darkpulse {

// Target output waveform for the inverse problem: real non-negative samples
// with the cumulative emitted energy precomputed. Tabulated targets accumulate
// trapezoid energy from t = 0; the sech factory carries the analytic
// cumulative of the full pulse history (including the tail before the window),
// which is what makes the closed-form inversion exact.
template <class T>
struct TargetWaveform {
  Vector<T> times;
  Vector<T> f;
  Vector<T> cumulative_energy;

  static TargetWaveform tabulated(Vector<T> times, Vector<T> f) {
    if (times.size() != f.size() || times.size() < 2)
      throw ConfigError("target waveform: need matching grids, size >= 2");
    if ((f.array() < T(0)).any())
      throw ConfigError("target waveform: samples must be non-negative");
    const T dt = times[1] - times[0];
    TargetWaveform w;
    w.cumulative_energy = cumulative_trapezoid<T>(f.array().square(), dt);
    if (w.cumulative_energy[w.cumulative_energy.size() - 1] > T(1) + T(1e-9))
      throw ConfigError("target waveform: total energy exceeds 1");
    w.times = std::move(times);
    w.f = std::move(f);
    return w;
  }

  // f(t) = sqrt(beta/2) sech(beta (t - T/2)) with cumulative energy
  // (1 + tanh(beta (t - T/2))) / 2.
  static TargetWaveform sech(T beta, T horizon, Eigen::Index n_samples) {
    if (!(beta > T(0))) throw ConfigError("sech target: beta must be > 0");
    if (!(horizon > T(0))) throw ConfigError("sech target: T must be > 0");
    if (n_samples < 2) throw ConfigError("sech target: need >= 2 samples");
    TargetWaveform w;
    w.times.setLinSpaced(n_samples, T(0), horizon);
    w.f.resize(n_samples);
    w.cumulative_energy.resize(n_samples);
    for (Eigen::Index k = 0; k < n_samples; ++k) {
      const T u = beta * (w.times[k] - T(0.5) * horizon);
      w.f[k] = std::sqrt(T(0.5) * beta) / std::cosh(u);
      w.cumulative_energy[k] = T(0.5) * (T(1) + std::tanh(u));
    }
    return w;
  }
};

// A mixing-angle schedule produced by the inverse problem.
template <class T>
struct ThetaSeries {
  Vector<T> times;
  Vector<T> sin_theta;
  Vector<T> theta() const { return sin_theta.array().asin(); }
};

// Solve sqrt(kappa) sin(theta(t)) = f(t) / sqrt(1 - int_0^t f^2) for the
// drive angle that emits the target waveform. Demands sin(theta) <= 1
// everywhere; the first violating time is reported otherwise. Values within
// 1e-6 of the boundary are accepted and clipped to 1 - 1e-12 (the boundary
// rate beta = kappa/2 is asymptotically emittable). Once the target is
// depleted (1 - int f^2 < 1e-10) the remaining tail carries no energy and the
// angle is set to zero.
template <class T>
ThetaSeries<T> invert_pulse_shape(const TargetWaveform<T>& target, T kappa) {
  const Eigen::Index n = target.times.size();
  ThetaSeries<T> out;
  out.times = target.times;
  out.sin_theta.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const T remaining = T(1) - target.cumulative_energy[k];
    if (remaining < T(1e-10)) {
      out.sin_theta.segment(k, n - k).setZero();
      break;
    }
    const T demanded = target.f[k] / std::sqrt(kappa * remaining);
    if (demanded > T(1) + T(1e-6)) {
      std::ostringstream os;
      os << "waveform infeasible: demanded sin(theta) = " << demanded
         << " > 1 at t = " << target.times[k]
         << " (pulse decays faster than the cavity)";
      throw InfeasibleError(os.str(), static_cast<double>(target.times[k]));
    }
    out.sin_theta[k] = std::min(demanded, T(1) - T(1e-12));
  }
  return out;
}

// Drive envelope shape from the angle schedule: alpha(t) = tan(theta)/r_o and
// the emitted drive is proportional to alpha.
template <class T>
Vector<T> drive_from_theta(const ThetaSeries<T>& series, T r_o) {
  if (!(r_o > T(0))) throw ConfigError("drive synthesis: r_o must be > 0");
  const Eigen::Index n = series.sin_theta.size();
  Vector<T> alpha(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const T s = series.sin_theta[k];
    if (s >= T(1))
      throw ConfigError("drive synthesis: sin(theta) = 1, divergent drive");
    alpha[k] = s / (std::sqrt((T(1) - s) * (T(1) + s)) * r_o);
  }
  return alpha;
}

// Send/receive drive pair for cavity-to-cavity transfer of a sech photon.
template <class T>
struct TransferDrives {
  Vector<T> times;
  Vector<T> send;     // normalized so the envelope is 1 at t = T/2
  Vector<T> receive;  // time reversal of send, sample by sample
  ThetaSeries<T> send_theta;
};

template <class T>
TransferDrives<T> transfer_pair(T beta, T horizon, T kappa, T r_o,
                                Eigen::Index n_samples = 40001) {
  if (!(kappa * horizon >= T(10)))
    throw ConfigError("transfer pair: kappa T >= 10 required");
  const TargetWaveform<T> target =
      TargetWaveform<T>::sech(beta, horizon, n_samples);
  TransferDrives<T> out;
  // A rate beta > kappa/2 surfaces here as an infeasible demanded angle,
  // reported with the first violating time.
  out.send_theta = invert_pulse_shape(target, kappa);
  out.times = target.times;
  const Vector<T> alpha = drive_from_theta(out.send_theta, r_o);
  const T mid = alpha[(n_samples - 1) / 2];
  out.send = alpha / (r_o * mid);  // scale fixed by r_o * alpha(T/2) = 1
  out.receive = out.send.reverse();
  return out;
}

}  // namespace darkpulse
