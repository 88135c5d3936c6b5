#pragma once

// Inner shooting: for fixed c > 0 find the initial slope alpha-hat(c) with Psi''(1) = 0 while the
// solution stays inside the band |Psi| < pi/2.
//
// Two monotonicity facts drive every bracket here. For alpha_1 < alpha_2 the solutions are ordered
// pointwise while both stay in the band, so the side through which a trajectory leaves the band
// is monotone in alpha (low exits below, high exits above the admissible set). Inside the
// admissible set Psi''(1) is strictly increasing in alpha. Together they give a totally ordered
// shot classification that bisection can use directly.

#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

#include "sdtw/errors.hpp"
#include "sdtw/ode.hpp"
#include "sdtw/parallel.hpp"

namespace sdtw {

struct BandInterval {
  double c = 0.0;
  double alpha_lower = 0.0;  ///< innermost admissible alpha found near the lower edge
  double alpha_upper = 0.0;  ///< innermost admissible alpha found near the upper edge
  double tol = 0.0;
};

struct AlphaHatResult {
  double c = 0.0;
  double alpha_hat = 0.0;
  double residual = 0.0;  ///< |Psi''(1; alpha_hat, c)|
  Trajectory trajectory;
  double theta_end = 0.0;  ///< Psi-hat(1; c)
  /// The bracket shrank to adjacent doubles before the residual tolerance was met. The admissible
  /// interval narrows roughly like exp(-c^{1/3}), so this happens for c beyond a few thousand.
  bool resolution_limited = false;
  std::optional<BandInterval> band;
};

struct AlphaOptions {
  double alpha_tol = 1e-12;
  double residual_tol = 1e-9;  ///< scaled by max(1, c)
  int steps = 0;               ///< 0: default_steps(c)
  bool with_band = false;      ///< also compute the band interval and check containment
};

struct BoundBox {
  double lo = 0.0;
  double hi = 0.0;
};

/// Open box that contains the closure of the admissible set I(c).
inline BoundBox admissible_box(double psi_minus, double c) {
  return {-kHalfPi - psi_minus - c / 6.0, kHalfPi - psi_minus + c / 6.0};
}

inline double residual_tolerance(double c, double tol) { return tol * std::max(1.0, c); }

/// Total order of a shot: -2 low exit, -1 Psi''(1) < 0, 0 root, +1 Psi''(1) > 0, +2 high exit.
inline int shot_order(const Endpoint& e) {
  if (e.exit_side != 0) return 2 * e.exit_side;
  if (e.state.theta2 < 0.0) return -1;
  if (e.state.theta2 > 0.0) return 1;
  return 0;
}

namespace detail {

inline void check_alpha_args(double psi_minus, double c) {
  std::ostringstream msg;
  if (!(psi_minus > 0.0 && psi_minus < kHalfPi)) {
    msg << "psi_minus must lie in (0, pi/2), got " << psi_minus;
    fail(ErrorKind::domain, msg.str());
  }
  if (!(c > 0.0) || !std::isfinite(c)) {
    msg << "alpha shooting needs finite c > 0, got " << c;
    fail(ErrorKind::domain, msg.str());
  }
}

inline int resolve_steps(int steps, double c) { return steps > 0 ? steps : default_steps(c); }

inline bool collapsed(double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  return !(mid > lo && mid < hi);
}

}  // namespace detail

/// Final bracket of the ordered-shot bisection for alpha-hat.
struct AlphaBracket {
  double lower = 0.0;
  double upper = 0.0;
  Endpoint at_lower;
  Endpoint at_upper;
  std::optional<double> root;  ///< set when a shot inside the bracket met the residual tolerance
  Endpoint at_root;
};

/// Bisection on shot_order over the admissible box. Works even when the admissible set is too
/// thin to represent: the bracket then converges onto the low/high exit boundary, which still
/// encloses alpha-hat.
inline AlphaBracket bracket_alpha_hat(double psi_minus, double c, const AlphaOptions& opt = {}) {
  detail::check_alpha_args(psi_minus, c);
  const int steps = detail::resolve_steps(opt.steps, c);
  const double res_tol = residual_tolerance(c, opt.residual_tol);
  const BoundBox box = admissible_box(psi_minus, c);

  AlphaBracket b;
  b.lower = box.lo;
  b.upper = box.hi;
  b.at_lower = shoot({psi_minus, b.lower, c}, steps);
  b.at_upper = shoot({psi_minus, b.upper, c}, steps);
  if (shot_order(b.at_lower) >= 0 || shot_order(b.at_upper) <= 0) {
    std::ostringstream msg;
    msg << "box endpoints do not bracket alpha-hat at c=" << c << " (orders " << shot_order(b.at_lower) << ", "
        << shot_order(b.at_upper) << ")";
    fail(ErrorKind::internal_contradiction, msg.str());
  }

  std::optional<double> best;
  Endpoint best_end;
  while (!detail::collapsed(b.lower, b.upper)) {
    const double mid = 0.5 * (b.lower + b.upper);
    const Endpoint e = shoot({psi_minus, mid, c}, steps);
    const int order = shot_order(e);
    if (e.in_band() && std::abs(e.state.theta2) <= res_tol) {
      best = mid;
      best_end = e;
      if (b.upper - b.lower <= opt.alpha_tol) break;
    }
    if (order == 0) {
      b.lower = b.upper = mid;
      b.at_lower = b.at_upper = e;
      break;
    }
    if (order < 0) {
      b.lower = mid;
      b.at_lower = e;
    } else {
      b.upper = mid;
      b.at_upper = e;
    }
  }
  if (best) {
    b.root = best;
    b.at_root = best_end;
  }
  return b;
}

/// Admissible interval I(c): 64 coarse probes across the bound box seed an admissible alpha
/// (zooming on the exit-side boundary if no probe lands inside), then each edge is bisected on
/// the in-band predicate to `tol`. The reported edges are the innermost admissible probes.
inline BandInterval band_interval(double psi_minus, double c, double tol = 1e-12, int steps = 0) {
  detail::check_alpha_args(psi_minus, c);
  require(tol > 0.0, "band_interval: tol must be positive");
  steps = detail::resolve_steps(steps, c);
  const BoundBox box = admissible_box(psi_minus, c);
  auto side = [&](double a) { return shoot({psi_minus, a, c}, steps).exit_side; };

  constexpr int kProbes = 64;
  std::optional<double> seed;
  double below = box.lo, above = box.hi;  // low-exit and high-exit probes around the seed
  int prev_side = -1;
  for (int i = 1; i <= kProbes; ++i) {
    const double a = box.lo + (box.hi - box.lo) * i / (kProbes + 1);
    const int s = side(a);
    if (s < prev_side) {
      std::ostringstream msg;
      msg << "exit side not monotone in alpha at c=" << c << ", alpha=" << a;
      fail(ErrorKind::internal_contradiction, msg.str());
    }
    prev_side = s;
    if (s < 0) below = a;
    if (s == 0 && !seed) seed = a;
    if (s > 0) {
      above = a;
      break;
    }
  }
  while (!seed) {
    if (detail::collapsed(below, above)) {
      std::ostringstream msg;
      msg << "admissible alpha interval at c=" << c << " is narrower than double resolution near alpha=" << below;
      fail(ErrorKind::under_resolved, msg.str());
    }
    const double mid = 0.5 * (below + above);
    const int s = side(mid);
    if (s == 0) seed = mid;
    else if (s < 0) below = mid;
    else above = mid;
  }

  double out_lo = below, in_lo = *seed;
  while (in_lo - out_lo > tol && !detail::collapsed(out_lo, in_lo)) {
    const double mid = 0.5 * (out_lo + in_lo);
    (side(mid) == 0 ? in_lo : out_lo) = mid;
  }
  double in_hi = *seed, out_hi = above;
  while (out_hi - in_hi > tol && !detail::collapsed(in_hi, out_hi)) {
    const double mid = 0.5 * (in_hi + out_hi);
    (side(mid) == 0 ? in_hi : out_hi) = mid;
  }
  return {c, in_lo, in_hi, tol};
}

inline AlphaHatResult find_alpha_hat(double psi_minus, double c, const AlphaOptions& opt = {}) {
  detail::check_alpha_args(psi_minus, c);
  const int steps = detail::resolve_steps(opt.steps, c);
  const double res_tol = residual_tolerance(c, opt.residual_tol);

  const AlphaBracket b = bracket_alpha_hat(psi_minus, c, opt);
  double alpha = 0.0;
  bool limited = false;
  if (b.root) {
    alpha = *b.root;
  } else {
    // bracket collapsed: keep the admissible end with the smaller residual
    const bool lo_ok = b.at_lower.in_band(), hi_ok = b.at_upper.in_band();
    if (!lo_ok && !hi_ok) {
      std::ostringstream msg;
      msg << "alpha-hat at c=" << c << " is not resolvable in double precision with " << steps
          << " steps: neighbouring shots leave the band at s=" << b.at_lower.state.s << " and s=" << b.at_upper.state.s;
      fail(ErrorKind::under_resolved, msg.str());
    }
    if (lo_ok && (!hi_ok || std::abs(b.at_lower.state.theta2) <= std::abs(b.at_upper.state.theta2))) {
      alpha = b.lower;
    } else {
      alpha = b.upper;
    }
    limited = true;
  }

  AlphaHatResult r;
  r.c = c;
  r.alpha_hat = alpha;
  r.trajectory = integrate_ivp({psi_minus, alpha, c}, steps, {.estimate_error = false});
  if (!r.trajectory.complete()) {
    fail(ErrorKind::internal_contradiction, "alpha-hat trajectory left the band on re-integration");
  }
  r.residual = std::abs(r.trajectory.back().theta2);
  r.theta_end = r.trajectory.back().theta;
  r.resolution_limited = limited || r.residual > res_tol;
  if (!(alpha < 0.0)) {
    std::ostringstream msg;
    msg << "alpha-hat(" << c << ") = " << alpha << " is not negative";
    fail(ErrorKind::internal_contradiction, msg.str());
  }
  if (opt.with_band) {
    r.band = band_interval(psi_minus, c, opt.alpha_tol, steps);
    if (!(r.band->alpha_lower <= alpha && alpha <= r.band->alpha_upper)) {
      std::ostringstream msg;
      msg << "alpha-hat " << alpha << " outside band [" << r.band->alpha_lower << ", " << r.band->alpha_upper << "]";
      fail(ErrorKind::internal_contradiction, msg.str());
    }
  }
  return r;
}

inline std::vector<AlphaHatResult> alpha_hat_curve(double psi_minus, const std::vector<double>& c_values,
                                                   const AlphaOptions& opt = {}) {
  for (std::size_t i = 1; i < c_values.size(); ++i) {
    require(c_values[i] > c_values[i - 1], "alpha_hat_curve: c_values must be strictly increasing");
  }
  return parallel_map(c_values, [&](double c) {
    try {
      return find_alpha_hat(psi_minus, c, opt);
    } catch (const SolverError& e) {
      std::ostringstream msg;
      msg << "at c=" << c << ": " << e.what();
      throw SolverError(e.kind(), msg.str());
    }
  });
}

}  // namespace sdtw
