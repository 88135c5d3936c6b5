#pragma once

// Profile curves from the tangent angle Theta (x' = cos Theta, y' = sin Theta), the stationary arc,
// and the symmetries of traveling waves: scaling (lambda W + a e1, c / lambda^3) and the mirror
// image (-x, y) with speed -c.

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "sdtw/errors.hpp"
#include "sdtw/ode.hpp"
#include "sdtw/quadrature.hpp"
#include "sdtw/residuals.hpp"
#include "sdtw/zero_structure.hpp"

namespace sdtw {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct ProfileCurve {
  std::vector<double> s;       ///< arclength of each point
  std::vector<Point> points;
  std::vector<double> w_x;     ///< slope of the graph, tan Theta
  std::vector<double> w_xx;    ///< Theta' / cos^3 Theta
  std::vector<double> w;       ///< height: Theta'' / c, or y when c = 0
  double arclength = 0.0;
  double left_angle = 0.0;     ///< interior contact angle at the left end, Theta(0)
  double right_angle = 0.0;    ///< interior contact angle at the right end, -Theta(1)
  double left_contact_residual = 0.0;
  double right_contact_residual = 0.0;
  double y_end_residual = 0.0; ///< |y| at the right end

  const Point& left_endpoint() const { return points.front(); }
  const Point& right_endpoint() const { return points.back(); }

  bool is_graph() const {
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (!(points[i].x > points[i - 1].x)) return false;
    }
    return true;
  }

  double chord_length() const {
    double sum = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
      sum += std::hypot(points[i].x - points[i - 1].x, points[i].y - points[i - 1].y);
    }
    return sum;
  }
};

/// A traveling wave (Theta, c) together with its profile and diagnostics.
struct WaveSolution {
  double psi_minus = 0.0;
  double psi_plus = 0.0;
  double c = 0.0;
  double alpha_hat = 0.0;
  Trajectory trajectory;
  ZeroLadder ladder;
  SignChangeCounts counts;
  int k_index = 0;
  ProfileCurve profile;
  double mismatch = 0.0;  ///< Theta(1) + psi_plus
  double energy_residual = 0.0;
  double closure_residual = 0.0;
  bool resolution_limited = false;
  bool merged = false;  ///< a second root within the dedup distance was folded into this one
};

inline constexpr double kEndpointAngleTol = 1e-9;

inline ProfileCurve reconstruct_profile(const Trajectory& traj, double c, std::optional<double> psi_plus = std::nullopt) {
  if (!traj.complete()) fail(ErrorKind::domain, "reconstruct_profile: trajectory left the band");
  const auto& st = traj.states;
  const double theta0 = st.front().theta, theta1 = st.back().theta;
  if (c == 0.0 && std::abs(theta0 + theta1) > kEndpointAngleTol) {
    std::ostringstream msg;
    msg << "c = 0 admits a wave only for equal contact angles, got " << theta0 << " and " << -theta1;
    fail(ErrorKind::invalid_wave, msg.str());
  }

  const std::size_t n = st.size();
  std::vector<double> cs(n), sn(n);
  for (std::size_t i = 0; i < n; ++i) {
    cs[i] = std::cos(st[i].theta);
    sn[i] = std::sin(st[i].theta);
  }
  const auto xs = quad::cumulative_simpson(cs, traj.step);
  const auto ys = quad::cumulative_simpson(sn, traj.step);

  ProfileCurve p;
  p.s.resize(n);
  p.points.resize(n);
  p.w_x.resize(n);
  p.w_xx.resize(n);
  p.w.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const State3& y = st[i];
    const double cth = cs[i];
    p.s[i] = y.s;
    p.points[i] = {xs[i], ys[i]};
    p.w_x[i] = sn[i] / cth;
    p.w_xx[i] = y.theta1 / (cth * cth * cth);
    p.w[i] = c != 0.0 ? y.theta2 / c : ys[i];
  }
  p.arclength = traj.s_end();
  p.left_angle = theta0;
  p.right_angle = -theta1;
  p.left_contact_residual = std::abs(theta0 - traj.params.psi_minus);
  p.right_contact_residual = psi_plus ? std::abs(-theta1 - *psi_plus) : 0.0;
  p.y_end_residual = std::abs(ys.back());
  return p;
}

/// (lambda W + a e1, c / lambda^3).
inline std::pair<ProfileCurve, double> scale_translate(const ProfileCurve& curve, double c, double lambda, double a) {
  require(lambda > 0.0, "scale_translate: lambda must be positive");
  ProfileCurve out = curve;
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    out.s[i] = lambda * curve.s[i];
    out.points[i] = {lambda * curve.points[i].x + a, lambda * curve.points[i].y};
    out.w_xx[i] = curve.w_xx[i] / lambda;
    out.w[i] = lambda * curve.w[i];
  }
  out.arclength = lambda * curve.arclength;
  out.y_end_residual = lambda * curve.y_end_residual;
  return {std::move(out), c / (lambda * lambda * lambda)};
}

/// Mirror image {(-x, y)} traversed left to right, with speed -c.
inline std::pair<ProfileCurve, double> reflect(const ProfileCurve& curve, double c) {
  const std::size_t n = curve.points.size();
  ProfileCurve out = curve;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = n - 1 - i;
    out.s[i] = curve.arclength - curve.s[j];
    out.points[i] = {-curve.points[j].x, curve.points[j].y};
    out.w_x[i] = -curve.w_x[j];
    out.w_xx[i] = curve.w_xx[j];
    out.w[i] = curve.w[j];
  }
  out.left_angle = curve.right_angle;
  out.right_angle = curve.left_angle;
  out.left_contact_residual = curve.right_contact_residual;
  out.right_contact_residual = curve.left_contact_residual;
  out.y_end_residual = std::abs(out.points.back().y);
  return {std::move(out), -c};
}

/// Theta~(s) = -Theta(1 - s) solves the profile equation with speed -c and swapped angles.
inline Trajectory reflect_trajectory(const Trajectory& traj) {
  require(traj.complete(), "reflect_trajectory: trajectory must reach s = 1");
  const std::size_t n = traj.states.size();
  const int steps = static_cast<int>(n - 1);
  Trajectory out;
  out.step = traj.step;
  out.error_estimate = traj.error_estimate;
  out.states.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const State3& y = traj.states[n - 1 - i];
    out.states[i] = {static_cast<double>(i) / steps, -y.theta, y.theta1, -y.theta2};
  }
  out.params = {out.states.front().theta, out.states.front().theta1, -traj.params.c};
  return out;
}

/// Closed-form stationary wave for equal contact angles: c = 0, Theta(s) = psi - 2 psi s, and the
/// profile is a circular arc of curvature -2 psi.
inline WaveSolution arc_solution(double psi, int steps = 4096) {
  require(psi > 0.0 && psi < kHalfPi, "arc_solution: psi must lie in (0, pi/2)");
  require(steps >= 2 && steps % 2 == 0, "arc_solution: steps must be even and >= 2");
  WaveSolution w;
  w.psi_minus = w.psi_plus = psi;
  w.c = 0.0;
  w.alpha_hat = -2.0 * psi;

  Trajectory& t = w.trajectory;
  t.params = {psi, -2.0 * psi, 0.0};
  t.step = 1.0 / steps;
  t.states.resize(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) {
    const double s = static_cast<double>(k) / steps;
    t.states[static_cast<std::size_t>(k)] = {s, psi - 2.0 * psi * s, -2.0 * psi, 0.0};
  }

  ProfileCurve& p = w.profile;
  p = reconstruct_profile(t, 0.0, psi);
  // exact arc in place of the quadrature
  for (std::size_t i = 0; i < p.points.size(); ++i) {
    const double th = t.states[i].theta;
    p.points[i] = {(std::sin(psi) - std::sin(th)) / (2.0 * psi), (std::cos(th) - std::cos(psi)) / (2.0 * psi)};
    p.w[i] = p.points[i].y;
  }
  p.y_end_residual = std::abs(p.points.back().y);

  w.ladder = extract_zeros(t);
  w.counts = sign_change_counts(w.ladder);
  w.k_index = wave_index(w.counts);
  w.mismatch = t.back().theta + psi;
  w.energy_residual = energy_residual(t, 0.0);
  w.closure_residual = closure_residual(t);
  return w;
}

}  // namespace sdtw
