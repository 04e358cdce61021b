#pragma once

#include <cmath>

#include "darkpulse/types.hpp"

namespace darkpulse {

// Dark-state weights for a mixing angle.
template <class T>
struct DarkStateAngle {
  T cos_theta;
  T sin_theta;

  static DarkStateAngle from_theta(T theta) {
    return {std::cos(theta), std::sin(theta)};
  }
};

// Adiabatic-limit dark amplitude c_d(t) = exp(-(kappa/2) int_0^t sin^2 theta),
// trapezoid rule on the sampled grid. Monotone non-increasing, c_d(0) = 1.
template <class T>
Vector<T> dark_coefficient(const Vector<T>& theta, T dt, T kappa) {
  Vector<T> s2 = theta.array().sin().square();
  Vector<T> integral = cumulative_trapezoid(s2, dt);
  return (-T(0.5) * kappa * integral.array()).exp();
}

// Ideal emitted waveform f_id(t) = sqrt(kappa) sin theta(t) *
// exp(-(kappa/2) int_0^t sin^2 theta). The depletion factor uses the
// trapezoid-consistent product recursion on D = c_d^2:
// D_k = D_{k-1}(1-h_{k-1})/(1+h_k) with h = (kappa dt/2) sin^2 theta, so that
// the waveform inversion in the design module round-trips through this
// function at machine precision.
template <class T>
PulseShape<T> ideal_pulse_shape(const Vector<T>& times, const Vector<T>& theta,
                                T kappa) {
  const Eigen::Index n = times.size();
  const T dt = n > 1 ? times[1] - times[0] : T(0);
  Vector<T> s = theta.array().sin();
  Vector<T> h = T(0.5) * kappa * dt * s.array().square();
  Vector<T> d(n);
  if (n > 0) d[0] = T(1);
  for (Eigen::Index k = 1; k < n; ++k)
    d[k] = d[k - 1] * (T(1) - h[k - 1]) / (T(1) + h[k]);
  PulseShape<T> p;
  p.times = times;
  p.values = (std::sqrt(kappa) * s.array() * d.array().max(T(0)).sqrt())
                 .template cast<std::complex<T>>();
  return p;
}

// Error probability of non-adiabatic following, 1 / ((g^2 + Omega^2) T^2).
template <class T>
T adiabatic_error_estimate(T g, T omega, T horizon) {
  T gap2 = g * g + omega * omega;
  if (!(gap2 > T(0)))
    throw ConfigError("adiabatic error estimate: zero gap, undefined");
  if (!(horizon > T(0)))
    throw ConfigError("adiabatic error estimate: horizon must be > 0");
  return T(1) / (gap2 * horizon * horizon);
}

// Probability that the passage left the initial state at all:
// p0 = 1 - c_d(T)^2 = 1 - exp(-kappa int_0^T sin^2 theta).
template <class T>
T excitation_probability(const Vector<T>& theta, T dt, T kappa) {
  Vector<T> s2 = theta.array().sin().square();
  T integral = trapezoid(s2, dt);
  return T(1) - std::exp(-kappa * integral);
}

}  // namespace darkpulse
