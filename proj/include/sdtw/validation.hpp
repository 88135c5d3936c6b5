#pragma once

// Checks on solved waves: large-c power laws of alpha-hat and of the first zeros (least squares
// on log|q| against log c), the sign relation for the speed, and a per-wave invariant suite.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sdtw/alpha_shooting.hpp"
#include "sdtw/errors.hpp"
#include "sdtw/geometry.hpp"
#include "sdtw/ode.hpp"
#include "sdtw/parallel.hpp"
#include "sdtw/residuals.hpp"
#include "sdtw/zero_structure.hpp"

namespace sdtw {

enum class ScalingQuantity { alpha_hat, delta1_plus, psi2_at_delta1, psi1_at_delta1, gap_mu1_delta1, gap_gamma1_mu1 };

inline constexpr std::array<ScalingQuantity, 6> kAllScalingQuantities = {
    ScalingQuantity::alpha_hat,      ScalingQuantity::delta1_plus,    ScalingQuantity::psi2_at_delta1,
    ScalingQuantity::psi1_at_delta1, ScalingQuantity::gap_mu1_delta1, ScalingQuantity::gap_gamma1_mu1};

inline const char* quantity_name(ScalingQuantity q) {
  switch (q) {
    case ScalingQuantity::alpha_hat: return "alpha_hat";
    case ScalingQuantity::delta1_plus: return "delta1_plus";
    case ScalingQuantity::psi2_at_delta1: return "psi2_at_delta1";
    case ScalingQuantity::psi1_at_delta1: return "psi1_at_delta1";
    case ScalingQuantity::gap_mu1_delta1: return "gap_mu1_delta1";
    case ScalingQuantity::gap_gamma1_mu1: return "gap_gamma1_mu1";
  }
  return "?";
}

inline double theoretical_exponent(ScalingQuantity q) {
  switch (q) {
    case ScalingQuantity::alpha_hat: return 1.0 / 3.0;
    case ScalingQuantity::delta1_plus: return -1.0 / 3.0;
    case ScalingQuantity::psi2_at_delta1: return 2.0 / 3.0;
    case ScalingQuantity::psi1_at_delta1: return 1.0 / 3.0;
    case ScalingQuantity::gap_mu1_delta1: return -1.0 / 3.0;
    case ScalingQuantity::gap_gamma1_mu1: return -1.0 / 3.0;
  }
  return 0.0;
}

inline ScalingQuantity parse_quantity(std::string_view name) {
  for (auto q : kAllScalingQuantities) {
    if (name == quantity_name(q)) return q;
  }
  fail(ErrorKind::domain, "unknown scaling quantity '" + std::string(name) + "'");
}

struct ScalingFit {
  std::string quantity;
  double exponent = 0.0;
  double theoretical = 0.0;
  double prefactor = 0.0;  ///< exp(intercept)
  double r2 = 0.0;
  double c_lo = 0.0;
  double c_hi = 0.0;
  int n_points = 0;
  std::vector<double> c;
  std::vector<double> values;  ///< |q(c)|
};

/// Everything the six quantities need at one speed.
struct ScalingSample {
  double c = 0.0;
  double alpha_hat = 0.0;
  double delta1 = 0.0;
  double mu1 = 0.0;
  double gamma1 = 0.0;
  double theta1_at_delta1 = 0.0;
  double theta2_at_delta1 = 0.0;
  bool truncated = false;  ///< alpha-hat not representable; zeros read from the early part of the shot
};

inline double sample_value(const ScalingSample& s, ScalingQuantity q) {
  switch (q) {
    case ScalingQuantity::alpha_hat: return std::abs(s.alpha_hat);
    case ScalingQuantity::delta1_plus: return s.delta1;
    case ScalingQuantity::psi2_at_delta1: return std::abs(s.theta2_at_delta1);
    case ScalingQuantity::psi1_at_delta1: return std::abs(s.theta1_at_delta1);
    case ScalingQuantity::gap_mu1_delta1: return s.mu1 - s.delta1;
    case ScalingQuantity::gap_gamma1_mu1: return s.gamma1 - s.mu1;
  }
  return 0.0;
}

/// Beyond c ~ 3e4 no double alpha keeps the shot in the band; the bracket still pins alpha-hat to
/// adjacent doubles, and the shot tracks the true solution until the growing mode amplifies the
/// rounding error, far beyond the first few zeros.
inline ScalingSample scaling_sample(double psi_minus, double c, int steps = 0) {
  steps = detail::resolve_steps(steps, c);
  AlphaOptions opt;
  opt.steps = steps;
  const AlphaBracket b = bracket_alpha_hat(psi_minus, c, opt);
  const double alpha = b.root ? *b.root : (b.at_lower.in_band() ? b.lower : b.at_upper.in_band() ? b.upper : b.lower);

  const Trajectory traj = integrate_ivp({psi_minus, alpha, c}, steps, {.estimate_error = false});
  ZeroOptions zo;
  zo.allow_truncated = true;
  const ZeroLadder ladder = extract_zeros(traj, zo);

  auto missing = [&](const char* what) {
    std::ostringstream msg;
    msg << "scaling fit: " << what << " absent at c=" << c;
    fail(ErrorKind::under_resolved, msg.str());
  };
  if (ladder.delta.empty()) missing("delta_1+");
  if (ladder.mu.empty()) missing("mu_1-");
  if (ladder.gamma.empty()) missing("gamma_1+");

  ScalingSample s;
  s.c = c;
  s.alpha_hat = alpha;
  s.delta1 = ladder.delta.front();
  s.mu1 = ladder.mu.front();
  s.gamma1 = ladder.gamma.front();
  const State3 at = evaluate_precise(traj, s.delta1);
  s.theta1_at_delta1 = at.theta1;
  s.theta2_at_delta1 = at.theta2;
  s.truncated = !traj.complete();
  return s;
}

inline std::vector<ScalingSample> scaling_samples(double psi_minus, double c_lo, double c_hi, int n) {
  require(psi_minus > 0.0 && psi_minus < kHalfPi, "scaling: psi_minus must lie in (0, pi/2)");
  require(c_lo >= 1e3, "scaling: c_lo must be >= 1e3 (asymptotic regime)");
  require(c_hi > c_lo, "scaling: need c_hi > c_lo");
  require(n >= 8, "scaling: need n >= 8");
  std::vector<double> cs(static_cast<std::size_t>(n));
  const double a = std::log(c_lo), b = std::log(c_hi);
  for (int i = 0; i < n; ++i) cs[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (n - 1));
  cs.front() = c_lo;
  cs.back() = c_hi;
  return parallel_map(cs, [&](double c) { return scaling_sample(psi_minus, c); });
}

inline ScalingFit fit_from_samples(const std::vector<ScalingSample>& samples, ScalingQuantity q) {
  ScalingFit f;
  f.quantity = quantity_name(q);
  f.theoretical = theoretical_exponent(q);
  f.n_points = static_cast<int>(samples.size());
  f.c_lo = samples.front().c;
  f.c_hi = samples.back().c;
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (const auto& s : samples) {
    const double v = sample_value(s, q);
    if (!(v > 0.0)) {
      std::ostringstream msg;
      msg << "scaling fit: " << f.quantity << " is not positive at c=" << s.c;
      fail(ErrorKind::internal_contradiction, msg.str());
    }
    f.c.push_back(s.c);
    f.values.push_back(v);
    const double x = std::log(s.c), y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double n = static_cast<double>(samples.size());
  const double vxx = sxx - sx * sx / n, vxy = sxy - sx * sy / n, vyy = syy - sy * sy / n;
  f.exponent = vxy / vxx;
  f.prefactor = std::exp((sy - f.exponent * sx) / n);
  f.r2 = vyy > 0.0 ? std::clamp(vxy * vxy / (vxx * vyy), 0.0, 1.0) : 1.0;
  return f;
}

inline ScalingFit fit_scaling_exponent(double psi_minus, ScalingQuantity q, double c_lo, double c_hi, int n) {
  return fit_from_samples(scaling_samples(psi_minus, c_lo, c_hi, n), q);
}

/// All six fits from one set of samples.
inline std::vector<ScalingFit> fit_all_exponents(double psi_minus, double c_lo, double c_hi, int n) {
  const auto samples = scaling_samples(psi_minus, c_lo, c_hi, n);
  std::vector<ScalingFit> out;
  for (auto q : kAllScalingQuantities) out.push_back(fit_from_samples(samples, q));
  return out;
}

/// Every speed carries the sign of psi_- - psi_+ (zero for equal angles).
inline bool sign_relation_check(double psi_minus, double psi_plus, const std::vector<WaveSolution>& waves) {
  const int expected = (psi_minus > psi_plus) - (psi_minus < psi_plus);
  for (const auto& w : waves) {
    const int sign = (w.c > 0.0) - (w.c < 0.0);
    if (sign != expected) return false;
  }
  return true;
}

struct Tolerances {
  double energy = 1e-6;
  double closure = 1e-8;
  double y_end = 1e-8;
  double slope = 1e-8;  ///< |w_x(left) - tan psi_-|
  double amplitude = 1e-9;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;  ///< measured residual where one applies
  std::string detail;
};

/// The invariant suite on one wave: identities, closure, zero ladder, amplitude ordering, sign
/// relation and the boundary shape at the left contact point.
inline std::vector<CheckResult> validate_wave(const WaveSolution& w, const Tolerances& tol = {}) {
  std::vector<CheckResult> out;
  auto add = [&](std::string name, bool ok, double value = 0.0, std::string detail = {}) {
    out.push_back({std::move(name), ok, value, std::move(detail)});
  };
  add("energy_identity", w.energy_residual < tol.energy, w.energy_residual);
  add("closure", w.closure_residual < tol.closure, w.closure_residual);
  add("y_end", w.profile.y_end_residual < tol.y_end, w.profile.y_end_residual);
  add("graph_property", w.profile.is_graph());
  add("sign_relation", sign_relation_check(w.psi_minus, w.psi_plus, {w}), w.c);
  add("alternation", w.ladder.alternating);
  if (w.c > 0.0) {
    const bool order = w.ladder.delta.empty() || w.ladder.gamma.empty() || w.ladder.delta.front() < w.ladder.gamma.front();
    add("delta1_before_gamma1", order);
    add("amplitude_monotonicity", amplitude_monotonicity_check(w.trajectory, w.ladder, tol.amplitude));
    const GlobalBounds g = global_bounds_check(w.trajectory, w.ladder, tol.amplitude);
    add("global_bounds", w.ladder.delta.empty() || g.all());
    const double slope = std::abs(w.profile.w_x.front() - std::tan(w.psi_minus));
    add("left_slope", slope < tol.slope, slope);
    add("left_height_positive", w.profile.w.size() > 1 && w.profile.w[1] > 0.0, w.profile.w.size() > 1 ? w.profile.w[1] : 0.0);
    add("left_curvature_negative", w.profile.w_xx.front() < 0.0, w.profile.w_xx.front());
  }
  add("wave_index", w.k_index > 0, w.k_index,
      std::to_string(w.counts.theta) + "," + std::to_string(w.counts.theta1) + "," + std::to_string(w.counts.theta2));
  return out;
}

inline bool all_passed(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

}  // namespace sdtw
