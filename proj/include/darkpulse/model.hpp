#pragma once

#include <cmath>
#include <variant>

#include "darkpulse/types.hpp"

namespace darkpulse {

// Position inside the cavity mode: z along the axis (standing wave), x/y
// transverse (Gaussian), with waist w0 and wave vector k0 = 2 pi / lambda.
template <class T>
struct ModeFunctionPoint {
  T x = T(0), y = T(0), z = T(0);
  T w0 = T(1);
  T k0 = T(1);

  void validate() const {
    if (!(w0 > T(0))) throw ConfigError("mode point: w0 must be > 0");
    if (!(k0 > T(0))) throw ConfigError("mode point: k0 must be > 0");
  }
};

// chi(r) = sin(k0 z) * exp(-(x^2+y^2)/w0^2), in [-1, 1].
template <class T>
T mode_function(const ModeFunctionPoint<T>& p) {
  p.validate();
  return std::sin(p.k0 * p.z) *
         std::exp(-(p.x * p.x + p.y * p.y) / (p.w0 * p.w0));
}

// g as a function of time (or static position).
template <class T>
struct CouplingTrajectory {
  struct Constant {
    T g;
  };
  struct PositionStatic {
    ModeFunctionPoint<T> point;
    T g0;
  };
  struct SinusoidalTime {
    T amplitude;
    T angular_rate;
    T phase;
  };
  std::variant<Constant, PositionStatic, SinusoidalTime> variant;

  static CouplingTrajectory constant(T g) {
    if (!(g > T(0))) throw ConfigError("coupling.g must be > 0");
    return {Constant{g}};
  }
  static CouplingTrajectory position_static(ModeFunctionPoint<T> p, T g0) {
    if (!(g0 > T(0))) throw ConfigError("coupling.g0 must be > 0");
    return {PositionStatic{p, g0}};
  }
  static CouplingTrajectory sinusoidal(T amplitude, T angular_rate, T phase) {
    if (!(amplitude > T(0)))
      throw ConfigError("coupling.amplitude must be > 0");
    return {SinusoidalTime{amplitude, angular_rate, phase}};
  }

  T g(T t) const {
    if (auto* c = std::get_if<Constant>(&variant)) return c->g;
    if (auto* p = std::get_if<PositionStatic>(&variant))
      return p->g0 * mode_function(p->point);
    auto& s = std::get<SinusoidalTime>(variant);
    return s.amplitude * std::sin(s.angular_rate * t + s.phase);
  }
  T g_dot(T t) const {
    if (auto* s = std::get_if<SinusoidalTime>(&variant))
      return s->amplitude * s->angular_rate *
             std::cos(s->angular_rate * t + s->phase);
    return T(0);
  }
};

enum class DriveMode { Matched, Uniform };

// Drive envelope: either a Gaussian mixing-angle ratio rho(t) = Omega/g, or a
// tabulated theta(t) from the inverse-design path. In Uniform mode the same
// envelope shape carries a fixed peak Rabi rate omega_m instead of a ratio.
template <class T>
struct DriveProfile {
  struct GaussianRatio {
    T rho_peak;
    T center;
    T t_w;
  };
  struct TabulatedTheta {
    Vector<T> times;
    Vector<T> theta;
  };
  std::variant<GaussianRatio, TabulatedTheta> variant;
  DriveMode mode = DriveMode::Matched;
  T omega_m = T(0);  // Uniform mode only: peak Rabi rate

  static DriveProfile gaussian(T rho_peak, T center, T t_w,
                               DriveMode mode = DriveMode::Matched,
                               T omega_m = T(0)) {
    if (!(rho_peak > T(0))) throw ConfigError("drive.rho_peak must be > 0");
    if (!(t_w > T(0))) throw ConfigError("drive.t_w must be > 0");
    // The ratio must ramp from (nearly) zero: rho(0) <= e^{-6.25} rho_peak.
    if (!(center >= T(2.5) * t_w))
      throw ConfigError("drive profile: center must be >= 2.5 * t_w");
    DriveProfile p;
    p.variant = GaussianRatio{rho_peak, center, t_w};
    p.mode = mode;
    p.omega_m = omega_m;
    if (mode == DriveMode::Uniform && !(omega_m > T(0)))
      throw ConfigError("drive.omega_m must be > 0 in uniform mode");
    return p;
  }
  static DriveProfile tabulated_theta(Vector<T> times, Vector<T> theta) {
    if (times.size() != theta.size() || times.size() < 2)
      throw ConfigError("tabulated theta: need matching grids, size >= 2");
    DriveProfile p;
    p.variant = TabulatedTheta{std::move(times), std::move(theta)};
    p.mode = DriveMode::Matched;
    return p;
  }

  bool is_gaussian() const {
    return std::holds_alternative<GaussianRatio>(variant);
  }

  // Dimensionless envelope shape (peak 1) and its derivative.
  T envelope(T t) const {
    auto& g = std::get<GaussianRatio>(variant);
    T u = (t - g.center) / g.t_w;
    return std::exp(-u * u);
  }
  T envelope_dot(T t) const {
    auto& g = std::get<GaussianRatio>(variant);
    T u = (t - g.center) / g.t_w;
    return -T(2) * u / g.t_w * std::exp(-u * u);
  }
  T rho(T t) const {
    auto& g = std::get<GaussianRatio>(variant);
    return g.rho_peak * envelope(t);
  }
  T rho_dot(T t) const {
    auto& g = std::get<GaussianRatio>(variant);
    return g.rho_peak * envelope_dot(t);
  }
};

// Instantaneous drive geometry: mixing angle, its rate, and the couplings
// feeding the bright/excited block.
template <class T>
struct DriveAngle {
  T theta;
  T theta_dot;
  T g_eff;  // |g| (matched) or the coupling magnitude entering via theta
  T gap;    // sqrt(Omega^2 + g^2), the bright-excited coupling rate
};

// Mixing angle for a drive profile against a coupling trajectory.
//  - Matched: tan(theta) = rho(t) >= 0, position independent.
//  - Uniform: theta = atan2(Omega(t), g(t)) so theta moves smoothly through
//    pi/2 when g crosses zero; theta_dot analytic.
template <class T>
DriveAngle<T> theta_of_t(const DriveProfile<T>& profile,
                         const CouplingTrajectory<T>& traj, T t) {
  if (auto* tab =
          std::get_if<typename DriveProfile<T>::TabulatedTheta>(&profile.variant)) {
    // Linear interpolation; theta_dot is the segment slope.
    const auto& ts = tab->times;
    const auto& th = tab->theta;
    Eigen::Index n = ts.size();
    T tt = std::min(std::max(t, ts[0]), ts[n - 1]);
    Eigen::Index k = static_cast<Eigen::Index>((tt - ts[0]) / (ts[1] - ts[0]));
    k = std::min(k, n - 2);
    T h = ts[k + 1] - ts[k];
    T w = (tt - ts[k]) / h;
    T slope = (th[k + 1] - th[k]) / h;
    T theta = th[k] + w * (th[k + 1] - th[k]);
    T g = std::abs(traj.g(t));
    return {theta, slope, g, g / std::cos(theta)};
  }
  if (profile.mode == DriveMode::Matched) {
    T r = profile.rho(t);
    T rd = profile.rho_dot(t);
    T g = std::abs(traj.g(t));
    T theta = std::atan(r);
    T theta_dot = rd / (T(1) + r * r);
    return {theta, theta_dot, g, g * std::hypot(T(1), r)};
  }
  T omega = profile.omega_m * profile.envelope(t);
  T omega_dot = profile.omega_m * profile.envelope_dot(t);
  T g = traj.g(t);
  T g_dot = traj.g_dot(t);
  T r2 = omega * omega + g * g;
  if (r2 == T(0))
    throw DegenerateAngleError(
        "uniform drive: Omega = g = 0 simultaneously, mixing angle undefined");
  T theta = std::atan2(omega, g);
  T theta_dot = (omega_dot * g - omega * g_dot) / r2;
  return {theta, theta_dot, std::sqrt(r2), std::sqrt(r2)};
}

// Cavity response alpha(t) = int_0^t eps(tau) e^{(i omega_gs - kappa/2)(t-tau)}
// dtau on the envelope's grid, via the exact-per-step trapezoid recursion.
// Used only to confirm alpha is proportional to eps up to O(1/(omega_gs T)).
template <class T>
CVector<T> cavity_drive_response(const Vector<T>& times,
                                 const CVector<T>& envelope, T omega_gs,
                                 T kappa) {
  if (!(omega_gs > T(0)))
    throw ConfigError("cavity response: omega_gs must be > 0");
  if (times.size() != envelope.size() || times.size() < 2)
    throw ConfigError("cavity response: need matching grids, size >= 2");
  const T dt = times[1] - times[0];
  const std::complex<T> lam(-T(0.5) * kappa, omega_gs);
  CVector<T> alpha(times.size());
  alpha[0] = std::complex<T>(0);
  const std::complex<T> decay = std::exp(lam * dt);
  for (Eigen::Index k = 1; k < times.size(); ++k)
    alpha[k] = decay * (alpha[k - 1] + T(0.5) * dt * envelope[k - 1]) +
               T(0.5) * dt * envelope[k];
  return alpha;
}

}  // namespace darkpulse
