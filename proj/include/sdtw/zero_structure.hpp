#pragma once

// Zero ladder of Psi-hat, Psi-hat' and Psi-hat''. On a solved profile the zeros interleave as
//   delta_1+ < mu_1- < gamma_1+ < delta_1- < mu_1+ < gamma_1- < delta_2+ < ...
// where delta are zeros of Psi, mu of Psi', gamma interior zeros of Psi''. The sign superscript
// records which way the function was heading before the zero.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "sdtw/errors.hpp"
#include "sdtw/ode.hpp"

namespace sdtw {

enum class Family { delta = 0, mu = 1, gamma = 2 };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::delta: return "delta";
    case Family::mu: return "mu";
    case Family::gamma: return "gamma";
  }
  return "?";
}

/// Position of a zero in the ladder, e.g. {mu, 1, -1} is mu_1^-.
struct ZeroLabel {
  Family family = Family::delta;
  int j = 1;
  int sign = +1;

  /// Index in the alternation template delta+, mu-, gamma+, delta-, mu+, gamma-, delta+, ...
  int rank() const {
    const int within = static_cast<int>(family);
    const int half = (family == Family::mu) ? (sign < 0 ? 0 : 1) : (sign > 0 ? 0 : 1);
    return 6 * (j - 1) + 3 * half + within;
  }

  /// Label of the i-th zero (0-based) of a family.
  static ZeroLabel nth(Family f, std::size_t i) {
    ZeroLabel l;
    l.family = f;
    l.j = static_cast<int>(i / 2) + 1;
    const bool first_half = (i % 2) == 0;
    l.sign = (f == Family::mu) ? (first_half ? -1 : +1) : (first_half ? +1 : -1);
    return l;
  }

  std::string name() const {
    std::ostringstream os;
    os << family_name(family) << '_' << j << (sign > 0 ? '+' : '-');
    return os.str();
  }

  friend bool operator==(const ZeroLabel&, const ZeroLabel&) = default;
};

struct LadderEntry {
  double s = 0.0;
  ZeroLabel label;
};

struct ZeroLadder {
  std::vector<double> delta;  ///< zeros of Psi-hat
  std::vector<double> mu;     ///< zeros of Psi-hat'
  std::vector<double> gamma;  ///< interior zeros of Psi-hat''
  bool alternating = false;
  /// Deepest label present in each family (the J-sets the speed c belongs to).
  std::optional<ZeroLabel> deepest_delta, deepest_mu, deepest_gamma;

  /// All zeros merged and sorted by arclength.
  std::vector<LadderEntry> merged() const {
    std::vector<LadderEntry> out;
    auto add = [&](const std::vector<double>& zs, Family f) {
      for (std::size_t i = 0; i < zs.size(); ++i) out.push_back({zs[i], ZeroLabel::nth(f, i)});
    };
    add(delta, Family::delta);
    add(mu, Family::mu);
    add(gamma, Family::gamma);
    std::sort(out.begin(), out.end(), [](const LadderEntry& a, const LadderEntry& b) { return a.s < b.s; });
    return out;
  }

  /// Deepest label in template order across all families.
  std::optional<ZeroLabel> deepest() const {
    std::optional<ZeroLabel> best;
    for (const auto& l : {deepest_delta, deepest_mu, deepest_gamma}) {
      if (l && (!best || l->rank() > best->rank())) best = l;
    }
    return best;
  }
};

struct ZeroOptions {
  double s_tol = 1e-10;
  double dead_band = 1e-9;  ///< samples with |f| below this carry no sign
  /// Accept trajectories that left the band; only zeros before `truncate_at * band_exit` are kept.
  bool allow_truncated = false;
  double truncate_at = 0.5;
};

/// Membership test for the template: the merged ladder must be a prefix of
/// delta_1+, mu_1-, gamma_1+, delta_1-, mu_1+, gamma_1-, delta_2+, ...
inline bool verify_alternation(const ZeroLadder& ladder) {
  const auto merged = ladder.merged();
  for (std::size_t k = 0; k < merged.size(); ++k) {
    if (merged[k].label.rank() != static_cast<int>(k)) return false;
  }
  return true;
}

struct SignChangeCounts {
  int theta = 0;   ///< sign changes of Psi-hat  (= sign changes of w_x)
  int theta1 = 0;  ///< sign changes of Psi-hat' (= sign changes of w_xx)
  int theta2 = 0;  ///< sign changes of Psi-hat'' (= sign changes of w)

  friend bool operator==(const SignChangeCounts&, const SignChangeCounts&) = default;
};

inline SignChangeCounts sign_change_counts(const ZeroLadder& ladder) {
  return {static_cast<int>(ladder.delta.size()), static_cast<int>(ladder.mu.size()),
          static_cast<int>(ladder.gamma.size())};
}

/// Counts a wave of index k must show: (k, k, k-1) for odd k and (k+1, k, k) for even k when
/// Psi-hat(1) < 0. When Psi-hat(1) > 0 (negative right contact angle) the parities swap.
inline SignChangeCounts expected_counts(int k, bool end_negative = true) {
  const bool odd = (k % 2) == 1;
  if (odd == end_negative) return {k, k, k - 1};
  return {k + 1, k, k};
}

/// Wave index from the counts: the number of sign changes of Psi-hat'. A profile without any
/// curvature sign change, counts (1, 0, 0), is the convex member of class 1. Returns 0 when the
/// counts fit no class.
inline int wave_index(const SignChangeCounts& n) {
  if (n.theta1 == 0) return (n.theta == 1 && n.theta2 == 0) ? 1 : 0;
  const int k = n.theta1;
  if (n == expected_counts(k, true) || n == expected_counts(k, false)) return k;
  return 0;
}

namespace detail {

inline double component(const State3& y, Family f) {
  switch (f) {
    case Family::delta: return y.theta;
    case Family::mu: return y.theta1;
    case Family::gamma: return y.theta2;
  }
  return 0.0;
}

inline int dead_sign(double v, double dead) { return v > dead ? 1 : (v < -dead ? -1 : 0); }

/// Zeros of one component: sign changes on the samples, refined by bisection on a fourth-order
/// dense evaluation.
inline std::vector<double> family_zeros(const Trajectory& traj, Family f, std::size_t n_samples,
                                        const ZeroOptions& opt) {
  const auto& st = traj.states;
  std::vector<double> zeros;
  std::size_t last_idx = 0;
  int last_sign = 0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const int sg = dead_sign(component(st[i], f), opt.dead_band);
    if (sg == 0) continue;
    if (last_sign != 0 && sg != last_sign) {
      double lo = st[last_idx].s, hi = st[i].s;
      const double f_lo = component(st[last_idx], f);
      while (hi - lo > opt.s_tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = component(evaluate_precise(traj, mid), f);
        if ((fm > 0) == (f_lo > 0) && fm != 0.0) lo = mid;
        else hi = mid;
      }
      zeros.push_back(0.5 * (lo + hi));
    }
    last_sign = sg;
    last_idx = i;
  }
  return zeros;
}

}  // namespace detail

/// Extracts the ladder from a Psi-hat trajectory.
///
/// Boundary zeros of Psi'' at s = 0 and s = 1 are excluded. A Psi'' sign change near s = 1 is
/// attributed to the boundary condition when Psi'' never exceeds the endpoint residual scale
/// between the refined zero and s = 1.
inline ZeroLadder extract_zeros(const Trajectory& traj, const ZeroOptions& opt = {}) {
  require(traj.states.size() >= 2, "extract_zeros: empty trajectory");
  std::size_t n = traj.states.size();
  if (!traj.complete()) {
    if (!opt.allow_truncated) fail(ErrorKind::domain, "extract_zeros: trajectory left the band");
    const double cut = opt.truncate_at * *traj.band_exit;
    while (n > 2 && traj.states[n - 1].s > cut) --n;
  }
  const double h = traj.step;

  ZeroLadder ladder;
  ladder.delta = detail::family_zeros(traj, Family::delta, n, opt);
  ladder.mu = detail::family_zeros(traj, Family::mu, n, opt);
  ladder.gamma = detail::family_zeros(traj, Family::gamma, n, opt);

  if (traj.complete() && !ladder.gamma.empty()) {
    const double z = ladder.gamma.back();
    const double end_scale = 4.0 * std::abs(traj.back().theta2) + opt.dead_band * std::max(1.0, std::abs(traj.params.c));
    double tail_max = 0.0;
    for (const auto& y : traj.states) {
      if (y.s >= z) tail_max = std::max(tail_max, std::abs(y.theta2));
    }
    if (z >= 1.0 - 10.0 * opt.s_tol || (z > 1.0 - 4.0 * h && tail_max <= end_scale)) ladder.gamma.pop_back();
  }

  for (const auto* zs : {&ladder.delta, &ladder.mu, &ladder.gamma}) {
    for (std::size_t i = 1; i < zs->size(); ++i) {
      if ((*zs)[i] - (*zs)[i - 1] < 4.0 * h) {
        std::ostringstream msg;
        msg << "zeros at s=" << (*zs)[i - 1] << " and s=" << (*zs)[i] << " are closer than 4 grid steps; raise steps";
        fail(ErrorKind::under_resolved, msg.str());
      }
    }
  }

  auto deepest = [](const std::vector<double>& zs, Family f) -> std::optional<ZeroLabel> {
    if (zs.empty()) return std::nullopt;
    return ZeroLabel::nth(f, zs.size() - 1);
  };
  ladder.deepest_delta = deepest(ladder.delta, Family::delta);
  ladder.deepest_mu = deepest(ladder.mu, Family::mu);
  ladder.deepest_gamma = deepest(ladder.gamma, Family::gamma);
  ladder.alternating = verify_alternation(ladder);
  return ladder;
}

}  // namespace sdtw
