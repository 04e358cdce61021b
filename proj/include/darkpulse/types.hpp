#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace darkpulse {

template <class T>
using Vector = Eigen::Vector<T, Eigen::Dynamic>;
template <class T>
using CVector = Eigen::Vector<std::complex<T>, Eigen::Dynamic>;
template <class T>
using CMatrix = Eigen::Matrix<std::complex<T>, Eigen::Dynamic, Eigen::Dynamic>;

using Real = double;
using Complex = std::complex<double>;

// Configuration / physical-validity violation (bad parameters, bad keys,
// resolution inequalities). The message names the violated constraint.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Drive angle undefined (uniform mode with Omega = g = 0 at the same time).
class DegenerateAngleError : public std::runtime_error {
 public:
  explicit DegenerateAngleError(const std::string& what)
      : std::runtime_error(what) {}
};

// Requested waveform decays faster than the cavity can emit.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, double t_first)
      : std::runtime_error(what), t_first_violation(t_first) {}
  double t_first_violation;
};

// Norm grew beyond tolerance during integration.
class InstabilityError : public std::runtime_error {
 public:
  explicit InstabilityError(const std::string& what)
      : std::runtime_error(what) {}
};

// Rates and couplings in units of the cavity energy decay rate kappa.
template <class T>
struct PhysicalParams {
  T kappa = T(1);        // cavity energy decay rate (the reference unit)
  T gamma_s = T(1);      // spontaneous emission rate of the excited level
  T delta = T(0);        // single-photon transition detuning
  T g_peak = T(3);       // peak atom-cavity coupling rate
  T r_o = T(1);          // Clebsch-Gordan amplitude ratio
  T omega_gs = T(1000);  // ground hyperfine splitting (drive-response check)
  T omega_b = T(20);     // continuum half-bandwidth
  T delta_omega = T(0.005);  // continuum mode spacing

  void validate() const {
    if (!(kappa > T(0))) throw ConfigError("params.kappa must be > 0");
    if (!(gamma_s >= T(0))) throw ConfigError("params.gamma_s must be >= 0");
    if (!(g_peak > T(0))) throw ConfigError("params.g_peak must be > 0");
    if (!(r_o > T(0))) throw ConfigError("params.r_o must be > 0");
    if (!(omega_b > T(0))) throw ConfigError("params.omega_b must be > 0");
    if (!(delta_omega > T(0)))
      throw ConfigError("params.delta_omega must be > 0");
  }
};

// Uniform integration grid over [0, T].
template <class T>
struct TimeGrid {
  T t_end = T(20);     // horizon
  T dt = T(0);         // integrator step; 0 -> choose automatically
  int stride = 0;      // output sampling stride in steps; 0 -> ~2000 samples

  void validate() const {
    if (!(t_end > T(0))) throw ConfigError("grid.T must be > 0");
    if (dt < T(0)) throw ConfigError("grid.dt must be >= 0");
    if (stride < 0) throw ConfigError("grid.stride must be >= 0");
  }
};

// Discretized one-dimensional output continuum.
template <class T>
struct ModeGrid {
  int n_modes = 0;
  T delta_omega = T(0);
  Vector<T> omegas;   // omega_j = (j - N/2) * delta_omega, j = 1..N
  T kappa_prime = T(0);  // sqrt(kappa * delta_omega / 2 pi)
};

// Amplitudes in the rotated (dark/bright) frame plus the continuum modes,
// stored flat as [c_d, c_b, c_e, c_1 .. c_N].
template <class T>
struct SystemState {
  CVector<T> v;

  explicit SystemState(int n_modes = 0) {
    v = CVector<T>::Zero(n_modes + 3);
  }
  std::complex<T>& c_d() { return v[0]; }
  std::complex<T>& c_b() { return v[1]; }
  std::complex<T>& c_e() { return v[2]; }
  std::complex<T> c_d() const { return v[0]; }
  std::complex<T> c_b() const { return v[1]; }
  std::complex<T> c_e() const { return v[2]; }
  auto c_j() { return v.tail(v.size() - 3); }
  auto c_j() const { return v.tail(v.size() - 3); }
  int n_modes() const { return static_cast<int>(v.size()) - 3; }
  T norm_sq() const { return v.squaredNorm(); }
};

template <class T>
struct SystemTrajectory {
  Vector<T> sample_times;
  std::vector<SystemState<T>> samples;
  SystemState<T> final_state;
  T t_end = T(0);
  T dt = T(0);
  long n_steps = 0;
  T norm_drift = T(0);  // max positive excursion of the norm above its start
};

// Complex waveform on a uniform time grid.
template <class T>
struct PulseShape {
  Vector<T> times;
  CVector<T> values;
  bool normalized = false;

  T dt() const {
    return times.size() > 1 ? times[1] - times[0] : T(0);
  }
  // Trapezoid-rule L2 energy.
  T energy() const {
    if (times.size() < 2) return T(0);
    Vector<T> a = values.array().abs2();
    T e = (a.sum() - T(0.5) * (a[0] + a[a.size() - 1])) * dt();
    return e;
  }
  // Rescale so the trapezoid energy is exactly 1.
  void normalize() {
    T e = energy();
    if (!(e > T(0))) throw ConfigError("cannot normalize a zero pulse");
    values /= std::sqrt(e);
    normalized = true;
  }
};

// Trapezoid quadrature of a sampled function on a uniform grid.
template <class T>
T trapezoid(const Vector<T>& y, T dt) {
  if (y.size() < 2) return T(0);
  return (y.sum() - T(0.5) * (y[0] + y[y.size() - 1])) * dt;
}

// Running trapezoid integral, I[0] = 0.
template <class T>
Vector<T> cumulative_trapezoid(const Vector<T>& y, T dt) {
  Vector<T> out(y.size());
  if (y.size() == 0) return out;
  out[0] = T(0);
  for (Eigen::Index k = 1; k < y.size(); ++k)
    out[k] = out[k - 1] + T(0.5) * dt * (y[k - 1] + y[k]);
  return out;
}

}  // namespace darkpulse
