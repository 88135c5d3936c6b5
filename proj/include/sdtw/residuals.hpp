#pragma once

// Integral identities of the profile equation, evaluated as numeric residuals.

#include <algorithm>
#include <cmath>
#include <vector>

#include "sdtw/errors.hpp"
#include "sdtw/ode.hpp"
#include "sdtw/quadrature.hpp"
#include "sdtw/zero_structure.hpp"

namespace sdtw {

namespace detail {

/// Number of leading samples on the uniform grid (a band-exit sample is off-grid).
inline std::size_t uniform_count(const Trajectory& traj) {
  return traj.complete() ? traj.states.size() : traj.states.size() - 1;
}

/// int_{s1}^{s2} g(State3) ds: cumulative Simpson between grid nodes, three-point Gauss on the
/// partial end cells with fourth-order dense evaluation.
template <class G>
double integrate_on(const Trajectory& traj, double s1, double s2, G&& g) {
  const auto& st = traj.states;
  const std::size_t n = uniform_count(traj);
  const double h = traj.step;
  auto eval = [&](double s) { return g(evaluate_precise(traj, s)); };

  const auto k1 = static_cast<std::size_t>(std::ceil(s1 / h - 1e-9));
  const auto k2 = static_cast<std::size_t>(std::floor(std::min(s2, st[n - 1].s) / h + 1e-9));
  if (k1 >= k2 || k2 >= n) return quad::gauss3(eval, s1, s2);

  std::vector<double> f(k2 - k1 + 1);
  for (std::size_t k = k1; k <= k2; ++k) f[k - k1] = g(st[k]);
  double total = quad::cumulative_simpson(f, h).back();
  if (st[k1].s > s1) total += quad::gauss3(eval, s1, st[k1].s);
  if (s2 > st[k2].s) total += quad::gauss3(eval, st[k2].s, s2);
  return total;
}

}  // namespace detail

/// Relative residual of the energy identity
///   [Psi'' Psi']_{s1}^{s2} - int_{s1}^{s2} (Psi'')^2 = -c (cos Psi(s2) - cos Psi(s1)),
/// normalized by max(1, c |cos Psi(s2) - cos Psi(s1)|).
inline double energy_residual(const Trajectory& traj, double c, double s1 = 0.0, double s2 = 1.0) {
  require(0.0 <= s1 && s1 < s2 && s2 <= traj.s_end(), "energy_residual: need 0 <= s1 < s2 <= end of trajectory");
  const State3 a = evaluate_precise(traj, s1);
  const State3 b = evaluate_precise(traj, s2);
  const double bracket = b.theta2 * b.theta1 - a.theta2 * a.theta1;
  const double dissipation = detail::integrate_on(traj, s1, s2, [](const State3& y) { return y.theta2 * y.theta2; });
  const double dcos = std::cos(b.theta) - std::cos(a.theta);
  return std::abs(bracket - dissipation + c * dcos) / std::max(1.0, std::abs(c * dcos));
}

/// |int_0^1 sin Theta ds|: the endpoints lie on the same horizontal line iff this vanishes.
inline double closure_residual(const Trajectory& traj) {
  require(traj.complete(), "closure_residual: trajectory must reach s = 1");
  std::vector<double> f(traj.states.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::sin(traj.states[i].theta);
  return std::abs(quad::cumulative_simpson(f, traj.step).back());
}

/// Energy-loss ordering across checkpoints:
///  (i)   |Psi|   non-increasing along zeros of Psi' or Psi'' (mu, gamma, s = 0, s = 1)
///  (ii)  |Psi'|  non-increasing along zeros of Psi or Psi''  (delta, gamma, s = 0, s = 1)
///  (iii) |Psi''| non-increasing along zeros of Psi or Psi'   (delta, mu)
inline bool amplitude_monotonicity_check(const Trajectory& traj, const ZeroLadder& ladder, double tol = 1e-9) {
  const double end = traj.s_end();
  auto ordered = [&](std::vector<double> pts, auto&& magnitude) {
    std::sort(pts.begin(), pts.end());
    double prev = -1.0;
    for (double s : pts) {
      const double v = magnitude(evaluate_precise(traj, s));
      if (prev >= 0.0 && v > prev + tol * std::max(1.0, prev)) return false;
      prev = v;
    }
    return true;
  };
  auto join = [](std::initializer_list<const std::vector<double>*> lists, std::initializer_list<double> extra) {
    std::vector<double> out(extra);
    for (const auto* l : lists) out.insert(out.end(), l->begin(), l->end());
    return out;
  };
  const bool i = ordered(join({&ladder.mu, &ladder.gamma}, {0.0, end}), [](const State3& y) { return std::abs(y.theta); });
  const bool ii = ordered(join({&ladder.delta, &ladder.gamma}, {0.0, end}), [](const State3& y) { return std::abs(y.theta1); });
  const bool iii = ordered(join({&ladder.delta, &ladder.mu}, {}), [](const State3& y) { return std::abs(y.theta2); });
  return i && ii && iii;
}

struct GlobalBounds {
  bool theta_max_at_start = false;   ///< max |Psi| attained at s = 0
  bool theta1_max_at_start = false;  ///< max |Psi'| attained at s = 0
  bool theta2_max_at_delta1 = false; ///< max |Psi''| attained at delta_1+

  bool all() const { return theta_max_at_start && theta1_max_at_start && theta2_max_at_delta1; }
};

/// Global amplitude bounds over all samples, with relative slack `tol`.
inline GlobalBounds global_bounds_check(const Trajectory& traj, const ZeroLadder& ladder, double tol = 1e-9) {
  GlobalBounds g;
  const State3& y0 = traj.front();
  double m0 = 0, m1 = 0, m2 = 0;
  for (const auto& y : traj.states) {
    m0 = std::max(m0, std::abs(y.theta));
    m1 = std::max(m1, std::abs(y.theta1));
    m2 = std::max(m2, std::abs(y.theta2));
  }
  g.theta_max_at_start = m0 <= std::abs(y0.theta) * (1 + tol);
  g.theta1_max_at_start = m1 <= std::abs(y0.theta1) * (1 + tol);
  if (!ladder.delta.empty()) {
    const double at_delta = std::abs(evaluate_precise(traj, ladder.delta.front()).theta2);
    g.theta2_max_at_delta1 = m2 <= at_delta * (1 + tol);
  }
  return g;
}

}  // namespace sdtw
