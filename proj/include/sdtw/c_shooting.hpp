#pragma once

// Outer shooting on the wave speed: roots of c -> Psi-hat(1; c) + psi_+ on a log-spaced grid.

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sdtw/alpha_shooting.hpp"
#include "sdtw/errors.hpp"
#include "sdtw/geometry.hpp"
#include "sdtw/parallel.hpp"
#include "sdtw/residuals.hpp"
#include "sdtw/zero_structure.hpp"

namespace sdtw {

struct MismatchSample {
  double c = 0.0;
  double alpha_hat = 0.0;
  double theta_end = 0.0;  ///< Psi-hat(1; c)
  double mismatch = 0.0;   ///< Psi-hat(1; c) + psi_+
  bool resolution_limited = false;
  ZeroLadder ladder;
};

/// Error raised when a c-scan finds no sign change; carries the sampled curve for diagnosis.
class NoWaveFoundError : public SolverError {
 public:
  NoWaveFoundError(const std::string& what, std::vector<std::pair<double, double>> curve)
      : SolverError(ErrorKind::no_wave_found, what), curve_(std::move(curve)) {}

  /// (c, mismatch) pairs of the scan.
  const std::vector<std::pair<double, double>>& curve() const { return curve_; }

 private:
  std::vector<std::pair<double, double>> curve_;
};

struct ShootingOptions {
  double c_min = 1e-4;
  double c_max = 1e4;
  int grid = 160;
  double c_rel_tol = 1e-10;
  double dedup_rel = 1e-8;
  double mismatch_tol = 1e-8;
  bool allow_negative_psi_plus = false;
  AlphaOptions alpha;
};

inline MismatchSample mismatch(double psi_minus, double psi_plus, double c, const AlphaOptions& alpha = {}) {
  require(psi_plus > -kHalfPi && psi_plus < psi_minus, "mismatch: need -pi/2 < psi_plus < psi_minus");
  const AlphaHatResult a = find_alpha_hat(psi_minus, c, alpha);
  MismatchSample m;
  m.c = c;
  m.alpha_hat = a.alpha_hat;
  m.theta_end = a.theta_end;
  m.mismatch = a.theta_end + psi_plus;
  m.resolution_limited = a.resolution_limited;
  m.ladder = extract_zeros(a.trajectory);
  return m;
}

/// J-set membership of a speed: the deepest mu- and delta-labels present in its ladder.
struct BranchLabel {
  std::optional<ZeroLabel> mu;
  ZeroLabel delta;

  /// Whichever of the two comes later in the alternation template names the branch.
  ZeroLabel branch() const { return (mu && mu->rank() > delta.rank()) ? *mu : delta; }
  std::string name() const { return branch().name() + "-branch"; }
};

inline BranchLabel classify_branch(const ZeroLadder& ladder) {
  BranchLabel b;
  b.mu = ladder.deepest_mu;
  b.delta = ladder.deepest_delta.value_or(ZeroLabel{Family::delta, 1, +1});
  return b;
}

inline BranchLabel classify_branch(const MismatchSample& sample) { return classify_branch(sample.ladder); }

/// Branch the existence argument assigns to the k-th root. For psi_+ > 0: odd k = 2l-1 lies in
/// J(mu_l-) minus J(delta_l-), even k = 2l-2 lies in J(delta_l+) minus J(mu_l-). For psi_+ < 0:
/// odd k = 2l-1 lies in J(delta_l-) minus J(mu_l+), even k = 2l in J(mu_l+) minus J(delta_{l+1}+).
/// The convex first wave (no mu at all) belongs to the delta_1+ branch.
inline std::optional<ZeroLabel> expected_branch(int k, bool psi_plus_positive = true) {
  if (k < 1) return std::nullopt;
  if (psi_plus_positive) {
    if (k % 2 == 1) return ZeroLabel{Family::mu, (k + 1) / 2, -1};
    return ZeroLabel{Family::delta, k / 2 + 1, +1};
  }
  if (k % 2 == 1) return ZeroLabel{Family::delta, (k + 1) / 2, -1};
  return ZeroLabel{Family::mu, k / 2, +1};
}

inline bool matches_expected_branch(const BranchLabel& label, int k, bool psi_plus_positive = true) {
  const auto expected = expected_branch(k, psi_plus_positive);
  if (!expected) return false;
  if (k == 1 && psi_plus_positive && !label.mu) return label.branch() == ZeroLabel{Family::delta, 1, +1};
  return label.branch() == *expected;
}

inline std::vector<double> log_grid(double lo, double hi, int n) {
  require(lo > 0.0 && hi > lo && n >= 2, "log_grid: need 0 < lo < hi and n >= 2");
  std::vector<double> g(static_cast<std::size_t>(n));
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

/// Bisection on c for a sign change of the mismatch inside [lo, hi].
inline double refine_c_root(double psi_minus, double psi_plus, double lo, double hi, double rel_tol,
                            const AlphaOptions& alpha = {}) {
  auto value = [&](double c) { return find_alpha_hat(psi_minus, c, alpha).theta_end + psi_plus; };
  double f_lo = value(lo);
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = value(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0) == (f_lo < 0)) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Assembles and validates the wave at a root speed c > 0.
inline WaveSolution build_wave(double psi_minus, double psi_plus, double c, const AlphaOptions& alpha = {}) {
  const AlphaHatResult a = find_alpha_hat(psi_minus, c, alpha);
  WaveSolution w;
  w.psi_minus = psi_minus;
  w.psi_plus = psi_plus;
  w.c = c;
  w.alpha_hat = a.alpha_hat;
  w.trajectory = a.trajectory;
  w.resolution_limited = a.resolution_limited;
  w.mismatch = a.theta_end + psi_plus;
  w.ladder = extract_zeros(w.trajectory);
  w.counts = sign_change_counts(w.ladder);
  w.k_index = wave_index(w.counts);
  w.profile = reconstruct_profile(w.trajectory, c, psi_plus);
  w.energy_residual = energy_residual(w.trajectory, c);
  w.closure_residual = closure_residual(w.trajectory);
  return w;
}

inline std::vector<MismatchSample> mismatch_curve(double psi_minus, double psi_plus, const std::vector<double>& cs,
                                                  const AlphaOptions& alpha = {}) {
  return parallel_map(cs, [&](double c) { return mismatch(psi_minus, psi_plus, c, alpha); });
}

/// All waves with speed in [c_min, c_max] for psi_- > psi_+, sorted by c.
inline std::vector<WaveSolution> enumerate_waves(double psi_minus, double psi_plus, const ShootingOptions& opt = {}) {
  require(psi_minus > 0.0 && psi_minus < kHalfPi, "enumerate_waves: psi_minus must lie in (0, pi/2)");
  require(psi_plus != psi_minus, "enumerate_waves: equal angles give the stationary arc; use arc_solution");
  require(psi_plus < psi_minus, "enumerate_waves: need psi_plus < psi_minus (reflect for the other case)");
  require(psi_plus > -kHalfPi, "enumerate_waves: psi_plus must exceed -pi/2");
  if (psi_plus <= 0.0 && !opt.allow_negative_psi_plus) {
    fail(ErrorKind::domain, "enumerate_waves: psi_plus <= 0 requires the negative-branch flag");
  }
  require(opt.grid >= 64, "enumerate_waves: grid must be >= 64");
  require(opt.c_min > 0.0 && opt.c_max > opt.c_min, "enumerate_waves: need 0 < c_min < c_max");

  const auto cs = log_grid(opt.c_min, opt.c_max, opt.grid);
  const auto samples = mismatch_curve(psi_minus, psi_plus, cs, opt.alpha);

  std::vector<std::pair<double, double>> brackets;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const double a = samples[i].mismatch, b = samples[i + 1].mismatch;
    if (a == 0.0) brackets.emplace_back(cs[i], cs[i]);
    else if ((a < 0) != (b < 0) && b != 0.0) brackets.emplace_back(cs[i], cs[i + 1]);
  }
  if (samples.back().mismatch == 0.0) brackets.emplace_back(cs.back(), cs.back());

  if (brackets.empty()) {
    if (psi_plus <= 0.0) return {};
    std::vector<std::pair<double, double>> curve;
    for (const auto& s : samples) curve.emplace_back(s.c, s.mismatch);
    std::ostringstream msg;
    msg << "no sign change of the mismatch on c in [" << opt.c_min << ", " << opt.c_max << "] with " << opt.grid
        << " points; raise c_max or grid";
    throw NoWaveFoundError(msg.str(), std::move(curve));
  }

  const auto roots = parallel_map(brackets, [&](const std::pair<double, double>& br) {
    return br.first == br.second ? br.first
                                 : refine_c_root(psi_minus, psi_plus, br.first, br.second, opt.c_rel_tol, opt.alpha);
  });

  std::vector<double> unique;
  std::vector<bool> merged;
  for (double r : roots) {
    if (!unique.empty() && std::abs(r - unique.back()) <= opt.dedup_rel * r) {
      merged.back() = true;
      continue;
    }
    unique.push_back(r);
    merged.push_back(false);
  }

  auto waves = parallel_map(unique, [&](double c) { return build_wave(psi_minus, psi_plus, c, opt.alpha); });
  for (std::size_t i = 0; i < waves.size(); ++i) waves[i].merged = merged[i];
  return waves;
}

/// Mirror image of a wave: angles swapped, speed negated.
inline WaveSolution reflect_wave(const WaveSolution& w) {
  WaveSolution r;
  r.psi_minus = w.psi_plus;
  r.psi_plus = w.psi_minus;
  r.c = -w.c;
  r.trajectory = reflect_trajectory(w.trajectory);
  r.alpha_hat = r.trajectory.front().theta1;
  r.resolution_limited = w.resolution_limited;
  r.merged = w.merged;
  r.mismatch = r.trajectory.back().theta + r.psi_plus;
  r.ladder = w.ladder;  // zero structure is reported for the unreflected profile equation
  r.counts = w.counts;
  r.k_index = w.k_index;
  r.profile = reconstruct_profile(r.trajectory, r.c, r.psi_plus);
  r.energy_residual = energy_residual(r.trajectory, r.c);
  r.closure_residual = closure_residual(r.trajectory);
  return r;
}

/// Dispatch on the contact angles: equal angles give the arc, psi_- < psi_+ is solved through the
/// mirrored problem.
inline std::vector<WaveSolution> solve_waves(double psi_minus, double psi_plus, const ShootingOptions& opt = {}) {
  require(psi_minus > -kHalfPi && psi_minus < kHalfPi && psi_plus > -kHalfPi && psi_plus < kHalfPi,
          "contact angles must lie in (-pi/2, pi/2)");
  if (psi_minus == psi_plus) return {arc_solution(psi_minus)};
  if (psi_minus > psi_plus) return enumerate_waves(psi_minus, psi_plus, opt);
  auto mirrored = enumerate_waves(psi_plus, psi_minus, opt);
  std::vector<WaveSolution> out;
  out.reserve(mirrored.size());
  for (const auto& w : mirrored) out.push_back(reflect_wave(w));
  return out;
}

}  // namespace sdtw
