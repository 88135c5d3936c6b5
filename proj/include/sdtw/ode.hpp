#pragma once

// Third-order profile IVP  Psi''' = c sin(Psi),  Psi(0) = psi_-, Psi'(0) = alpha, Psi''(0) = 0,
// integrated on [0, 1] as the first-order system (Psi, Psi', Psi'')' = (Psi', Psi'', c sin Psi).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <vector>

#include "sdtw/errors.hpp"
#include "sdtw/quadrature.hpp"

namespace sdtw {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;

struct IvpParams {
  double psi_minus = 0.0;
  double alpha = 0.0;
  double c = 0.0;

  void validate() const {
    std::ostringstream msg;
    if (!(psi_minus > 0.0 && psi_minus < kHalfPi)) {
      msg << "psi_minus must lie in (0, pi/2), got " << psi_minus;
      fail(ErrorKind::domain, msg.str());
    }
    if (!std::isfinite(alpha) || !std::isfinite(c)) {
      msg << "alpha and c must be finite, got alpha=" << alpha << " c=" << c;
      fail(ErrorKind::domain, msg.str());
    }
  }
};

/// Phase point (Psi, Psi', Psi'') at arclength s.
struct State3 {
  double s = 0.0;
  double theta = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;

  bool finite() const {
    return std::isfinite(s) && std::isfinite(theta) && std::isfinite(theta1) && std::isfinite(theta2);
  }
};

struct Trajectory {
  IvpParams params;
  std::vector<State3> states;
  double step = 0.0;
  std::optional<double> band_exit;  ///< first s with |Psi| = pi/2, if reached before s = 1
  double error_estimate = 0.0;      ///< Richardson estimate of the endpoint error (max norm)

  const State3& front() const { return states.front(); }
  const State3& back() const { return states.back(); }
  bool complete() const { return !band_exit.has_value(); }
  double s_end() const { return states.back().s; }
};

/// Step count that keeps at least 64 steps per oscillation lobe (lobes shrink like c^{-1/3}).
/// Always even so composite Simpson applies on the grid.
inline int default_steps(double c) {
  const double lobes = 64.0 * std::cbrt(std::abs(c));
  int steps = std::max(4096, static_cast<int>(std::ceil(lobes)));
  return steps + (steps % 2);
}

namespace detail {

inline State3 rk4_step(const State3& y, double h, double c) {
  auto f = [c](double t0, double t1, double t2, double& d0, double& d1, double& d2) {
    d0 = t1;
    d1 = t2;
    d2 = c * std::sin(t0);
  };
  double k1[3], k2[3], k3[3], k4[3];
  f(y.theta, y.theta1, y.theta2, k1[0], k1[1], k1[2]);
  f(y.theta + 0.5 * h * k1[0], y.theta1 + 0.5 * h * k1[1], y.theta2 + 0.5 * h * k1[2], k2[0], k2[1], k2[2]);
  f(y.theta + 0.5 * h * k2[0], y.theta1 + 0.5 * h * k2[1], y.theta2 + 0.5 * h * k2[2], k3[0], k3[1], k3[2]);
  f(y.theta + h * k3[0], y.theta1 + h * k3[1], y.theta2 + h * k3[2], k4[0], k4[1], k4[2]);
  State3 out;
  out.s = y.s + h;
  out.theta = y.theta + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
  out.theta1 = y.theta1 + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
  out.theta2 = y.theta2 + h / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]);
  return out;
}

/// Cubic Hermite for (Psi, Psi') and linear Psi'' between two samples.
inline State3 hermite(const State3& a, const State3& b, double s) {
  const double h = b.s - a.s;
  const double t = (s - a.s) / h;
  const double t2 = t * t, t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  State3 out;
  out.s = s;
  out.theta = h00 * a.theta + h10 * h * a.theta1 + h01 * b.theta + h11 * h * b.theta1;
  out.theta1 = h00 * a.theta1 + h10 * h * a.theta2 + h01 * b.theta1 + h11 * h * b.theta2;
  out.theta2 = (1.0 - t) * a.theta2 + t * b.theta2;
  return out;
}

inline constexpr double kBandExitTol = 1e-10;

/// Locates |Psi| = pi/2 inside (a.s, b.s] given |a.theta| < pi/2 <= |b.theta|.
inline double locate_band_exit(const State3& a, const State3& b) {
  double lo = a.s, hi = b.s;
  while (hi - lo > kBandExitTol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (std::abs(hermite(a, b, mid).theta) >= kHalfPi) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

inline State3 initial_state(const IvpParams& p) { return State3{0.0, p.psi_minus, p.alpha, 0.0}; }

[[noreturn]] inline void blowup(const IvpParams& p, double s) {
  std::ostringstream msg;
  msg << "integration blow-up at s=" << s << " (psi_minus=" << p.psi_minus << ", alpha=" << p.alpha
      << ", c=" << p.c << ")";
  fail(ErrorKind::integration_blowup, msg.str());
}

/// Fixed-step RK4 from s = 0. Each accepted state is handed to `sink`; integration stops at the
/// first band exit, whose state is produced by a partial RK4 step from the preceding sample.
template <class Sink>
std::optional<double> march(const IvpParams& p, int steps, Sink&& sink) {
  State3 y = initial_state(p);
  sink(y);
  const double h = 1.0 / steps;
  for (int k = 0; k < steps; ++k) {
    State3 next = rk4_step(y, h, p.c);
    next.s = static_cast<double>(k + 1) / steps;
    if (!next.finite()) blowup(p, next.s);
    if (std::abs(next.theta) >= kHalfPi) {
      const double s_exit = locate_band_exit(y, next);
      State3 last = rk4_step(y, s_exit - y.s, p.c);
      last.s = s_exit;
      if (!last.finite()) blowup(p, s_exit);
      sink(last);
      return s_exit;
    }
    sink(next);
    y = next;
  }
  return std::nullopt;
}

/// Plain RK4 to `s_end` with nominal step 1/steps and a partial last step; no event handling.
inline State3 advance_to(const IvpParams& p, int steps, double s_end) {
  State3 y = initial_state(p);
  const double h = 1.0 / steps;
  int k = 0;
  while (static_cast<double>(k + 1) / steps <= s_end) {
    y = rk4_step(y, h, p.c);
    ++k;
    y.s = static_cast<double>(k) / steps;
  }
  if (s_end > y.s) {
    const double s0 = y.s;
    y = rk4_step(y, s_end - s0, p.c);
    y.s = s_end;
  }
  if (!y.finite()) blowup(p, s_end);
  return y;
}

inline double max_diff(const State3& a, const State3& b) {
  return std::max({std::abs(a.theta - b.theta), std::abs(a.theta1 - b.theta1), std::abs(a.theta2 - b.theta2)});
}

}  // namespace detail

/// Endpoint of the IVP without storing samples: used inside root finders.
struct Endpoint {
  State3 state;
  std::optional<double> band_exit;
  int exit_side = 0;  ///< -1: left the band through -pi/2, +1: through +pi/2, 0: stayed inside

  bool in_band() const { return exit_side == 0; }
};

inline Endpoint shoot(const IvpParams& params, int steps) {
  params.validate();
  require(steps >= 2, "steps must be >= 2");
  Endpoint out;
  out.band_exit = detail::march(params, steps, [&](const State3& y) { out.state = y; });
  if (out.band_exit) out.exit_side = out.state.theta > 0 ? 1 : -1;
  return out;
}

struct IntegrateOptions {
  bool estimate_error = true;
};

inline Trajectory integrate_ivp(const IvpParams& params, int steps, IntegrateOptions options = {}) {
  params.validate();
  require(steps >= 2 && steps % 2 == 0, "steps must be even and >= 2 (Simpson quadrature on the grid)");
  Trajectory traj;
  traj.params = params;
  traj.step = 1.0 / steps;
  traj.states.reserve(static_cast<std::size_t>(steps) + 1);
  traj.band_exit = detail::march(params, steps, [&](const State3& y) { traj.states.push_back(y); });
  if (options.estimate_error) {
    const State3 fine = detail::advance_to(params, 2 * steps, traj.s_end());
    traj.error_estimate = detail::max_diff(traj.back(), fine) * 16.0 / 15.0;
  }
  return traj;
}

inline Trajectory integrate_ivp(const IvpParams& params) {
  return integrate_ivp(params, default_steps(params.c));
}

/// Dense output: cubic Hermite for (Psi, Psi'), linear for Psi''. Exact at samples.
inline State3 evaluate_at(const Trajectory& traj, double s) {
  const auto& st = traj.states;
  if (!(s >= 0.0 && s <= traj.s_end())) {
    std::ostringstream msg;
    msg << "evaluate_at: s=" << s << " outside [0, " << traj.s_end() << "]";
    fail(ErrorKind::domain, msg.str());
  }
  auto it = std::upper_bound(st.begin(), st.end(), s, [](double v, const State3& y) { return v < y.s; });
  const std::size_t hi = static_cast<std::size_t>(it - st.begin());
  if (hi == 0) return st.front();
  const State3& a = st[hi - 1];
  if (a.s == s) return a;
  return detail::hermite(a, st[hi], s);
}

/// Fourth-order accurate evaluation between samples: a partial RK4 step from the sample at or
/// left of s. Used by quadratures that need off-grid values.
inline State3 evaluate_precise(const Trajectory& traj, double s) {
  const auto& st = traj.states;
  if (!(s >= 0.0 && s <= traj.s_end())) {
    std::ostringstream msg;
    msg << "evaluate_precise: s=" << s << " outside [0, " << traj.s_end() << "]";
    fail(ErrorKind::domain, msg.str());
  }
  auto it = std::upper_bound(st.begin(), st.end(), s, [](double v, const State3& y) { return v < y.s; });
  const State3& a = *(it - 1);
  if (a.s == s) return a;
  State3 out = detail::rk4_step(a, s - a.s, traj.params.c);
  out.s = s;
  return out;
}

/// Cross-checks the endpoint against the integral forms
///   Psi''(s) = c int_0^s sin Psi,  Psi'(s) = alpha + c int_0^s (s - t) sin Psi,
///   Psi(s)   = psi_- + alpha s + c/2 int_0^s (s - t)^2 sin Psi,
/// evaluated at the last sample (s = 1, or the band exit) by trapezoid quadrature.
inline bool verify_integral_representation(const Trajectory& traj, double tol) {
  const auto& st = traj.states;
  const double s = traj.s_end();
  const double c = traj.params.c;
  std::vector<double> x(st.size()), f0(st.size()), f1(st.size()), f2(st.size());
  for (std::size_t i = 0; i < st.size(); ++i) {
    const double sn = std::sin(st[i].theta);
    const double d = s - st[i].s;
    x[i] = st[i].s;
    f0[i] = sn;
    f1[i] = d * sn;
    f2[i] = d * d * sn;
  }
  const double theta2 = c * quad::trapezoid(x, f0);
  const double theta1 = traj.params.alpha + c * quad::trapezoid(x, f1);
  const double theta = traj.params.psi_minus + traj.params.alpha * s + 0.5 * c * quad::trapezoid(x, f2);
  const State3& end = traj.back();
  return std::abs(theta2 - end.theta2) <= tol && std::abs(theta1 - end.theta1) <= tol &&
         std::abs(theta - end.theta) <= tol;
}

}  // namespace sdtw
