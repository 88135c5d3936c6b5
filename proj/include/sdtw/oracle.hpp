#pragma once

// Brute-force scans on fixed grids, kept independent of the bisection solvers they check.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "sdtw/alpha_shooting.hpp"
#include "sdtw/c_shooting.hpp"
#include "sdtw/errors.hpp"
#include "sdtw/ode.hpp"
#include "sdtw/parallel.hpp"

namespace sdtw {

struct ScanReport {
  std::string axis;  ///< "alpha" or "c"
  std::vector<double> grid;
  std::vector<int> signs;  ///< 0 marks an excluded sample (band exit)
  std::vector<double> crossings;
  int count = 0;
};

inline constexpr int kReferenceSteps = 1 << 17;

inline Trajectory reference_solution(const IvpParams& params) {
  return integrate_ivp(params, kReferenceSteps, {.estimate_error = false});
}

namespace detail {

inline int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

/// Sign changes between consecutive nonzero signs, as index pairs into the grid.
inline std::vector<std::pair<std::size_t, std::size_t>> sign_changes(const std::vector<int>& signs) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t last = signs.size();
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] == 0) continue;
    if (last < signs.size() && signs[i] != signs[last]) out.emplace_back(last, i);
    last = i;
  }
  return out;
}

}  // namespace detail

/// Psi''(1; alpha, c) on n evenly spaced alpha across the admissible interval.
inline ScanReport alpha_root_scan(double psi_minus, double c, int n, int steps = 0) {
  require(n >= 1000, "alpha_root_scan: n must be >= 1000");
  steps = detail::resolve_steps(steps, c);
  const BandInterval band = band_interval(psi_minus, c, 1e-15, steps);

  ScanReport r;
  r.axis = "alpha";
  r.grid.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    r.grid[static_cast<std::size_t>(i)] = band.alpha_lower + (band.alpha_upper - band.alpha_lower) * i / (n - 1);
  }
  r.grid.back() = band.alpha_upper;
  auto value = [&](double a) {
    const Endpoint e = shoot({psi_minus, a, c}, steps);
    return e.in_band() ? detail::sign_of(e.state.theta2) : 0;
  };
  r.signs = parallel_map(r.grid, value);

  for (auto [i, j] : detail::sign_changes(r.signs)) {
    double lo = r.grid[i], hi = r.grid[j];
    const int s_lo = r.signs[i];
    while (!detail::collapsed(lo, hi)) {
      const double mid = 0.5 * (lo + hi);
      const int s = value(mid);
      if (s == 0 && !shoot({psi_minus, mid, c}, steps).in_band()) break;
      if (s == 0) {
        lo = hi = mid;
        break;
      }
      (s == s_lo ? lo : hi) = mid;
    }
    r.crossings.push_back(0.5 * (lo + hi));
  }
  r.count = static_cast<int>(r.crossings.size());
  return r;
}

/// Psi-hat(1; c) on a log grid. The curve does not depend on psi_+, so threshold searches over
/// psi_+ reuse it.
struct CScanCurve {
  double psi_minus = 0.0;
  std::vector<double> c;
  std::vector<double> theta_end;
};

inline CScanCurve c_scan_curve(double psi_minus, double c_lo, double c_hi, int n) {
  require(n >= 1000, "c_root_scan: n must be >= 1000");
  CScanCurve curve;
  curve.psi_minus = psi_minus;
  curve.c = log_grid(c_lo, c_hi, n);
  curve.theta_end =
      parallel_map(curve.c, [&](double c) { return find_alpha_hat(psi_minus, c).theta_end; });
  return curve;
}

/// Sign changes of the mismatch on a cached curve. With `refine`, each is bisected in c.
inline ScanReport c_root_scan(const CScanCurve& curve, double psi_plus, bool refine = true, double rel_tol = 1e-10) {
  ScanReport r;
  r.axis = "c";
  r.grid = curve.c;
  r.signs.reserve(curve.c.size());
  for (double t : curve.theta_end) r.signs.push_back(detail::sign_of(t + psi_plus));
  for (auto [i, j] : detail::sign_changes(r.signs)) {
    r.crossings.push_back(refine ? refine_c_root(curve.psi_minus, psi_plus, r.grid[i], r.grid[j], rel_tol)
                                 : std::sqrt(r.grid[i] * r.grid[j]));
  }
  r.count = static_cast<int>(r.crossings.size());
  return r;
}

inline ScanReport c_root_scan(double psi_minus, double psi_plus, double c_lo, double c_hi, int n) {
  require(psi_plus > -kHalfPi && psi_plus < psi_minus, "c_root_scan: need -pi/2 < psi_plus < psi_minus");
  return c_root_scan(c_scan_curve(psi_minus, c_lo, c_hi, n), psi_plus);
}

/// Largest psi_+ in (lo, hi) at which the cached curve shows at least `min_roots` sign changes,
/// found by bisection on psi_+.
inline double multiplicity_threshold(const CScanCurve& curve, int min_roots, double lo, double hi, double tol = 1e-6) {
  auto enough = [&](double p) { return c_root_scan(curve, p, false).count >= min_roots; };
  require(enough(lo), "multiplicity_threshold: lower end does not reach the requested root count");
  if (enough(hi)) return hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (enough(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace sdtw
