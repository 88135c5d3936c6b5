#pragma once

// CSV and JSON serialization. Numbers are written with 17 significant digits so output is
// reproducible and round-trips exactly.

#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sdtw/c_shooting.hpp"
#include "sdtw/geometry.hpp"
#include "sdtw/ode.hpp"
#include "sdtw/oracle.hpp"
#include "sdtw/validation.hpp"
#include "sdtw/zero_structure.hpp"

namespace sdtw {

using json = nlohmann::json;

inline std::string format17(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

/// Columns s, x, y, theta, theta1, theta2. Without a profile, x and y are integrated here.
inline void write_csv(std::ostream& out, const Trajectory& traj, const ProfileCurve* profile = nullptr) {
  out << "s,x,y,theta,theta1,theta2\n";
  std::vector<double> xs(traj.states.size(), 0.0), ys(traj.states.size(), 0.0);
  if (profile) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      xs[i] = profile->points[i].x;
      ys[i] = profile->points[i].y;
    }
  } else {
    // trapezoid keeps this valid for the off-grid band-exit sample
    for (std::size_t i = 1; i < xs.size(); ++i) {
      const auto& a = traj.states[i - 1];
      const auto& b = traj.states[i];
      const double h = b.s - a.s;
      xs[i] = xs[i - 1] + 0.5 * h * (std::cos(a.theta) + std::cos(b.theta));
      ys[i] = ys[i - 1] + 0.5 * h * (std::sin(a.theta) + std::sin(b.theta));
    }
  }
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const auto& y = traj.states[i];
    out << format17(y.s) << ',' << format17(xs[i]) << ',' << format17(ys[i]) << ',' << format17(y.theta) << ','
        << format17(y.theta1) << ',' << format17(y.theta2) << '\n';
  }
}

inline json to_json(const ZeroLadder& l) {
  json entries = json::array();
  for (const auto& e : l.merged()) entries.push_back({{"label", e.label.name()}, {"s", e.s}});
  return {{"delta", l.delta}, {"mu", l.mu}, {"gamma", l.gamma}, {"alternating", l.alternating}, {"entries", entries}};
}

inline json to_json(const ScalingFit& f) {
  return {{"quantity", f.quantity}, {"exponent", f.exponent}, {"theoretical", f.theoretical},
          {"prefactor", f.prefactor}, {"r2", f.r2},
          {"c_range", {f.c_lo, f.c_hi}},  {"n_points", f.n_points}};
}

inline json to_json(const ScanReport& r) {
  return {{"axis", r.axis}, {"grid", r.grid}, {"signs", r.signs}, {"crossings", r.crossings}, {"count", r.count}};
}

/// Wave report; the first seven keys form the stable schema, the rest are diagnostics.
inline json to_json(const WaveSolution& w, const std::vector<ScalingFit>& fits = {}) {
  json j;
  j["c"] = w.c;
  j["alpha_hat"] = w.alpha_hat;
  j["k_index"] = w.k_index;
  j["energy_residual"] = w.energy_residual;
  j["closure_residual"] = w.closure_residual;
  j["ladder"] = to_json(w.ladder);
  j["fits"] = json::array();
  for (const auto& f : fits) j["fits"].push_back(to_json(f));
  j["psi_minus"] = w.psi_minus;
  j["psi_plus"] = w.psi_plus;
  j["mismatch"] = w.mismatch;
  j["sign_changes"] = {w.counts.theta, w.counts.theta1, w.counts.theta2};
  j["y_end_residual"] = w.profile.y_end_residual;
  j["resolution_limited"] = w.resolution_limited;
  j["merged"] = w.merged;
  return j;
}

/// JSON text with round-trip precision.
inline std::string dump(const json& j) {
  // nlohmann writes doubles with max_digits10 already; indent for readability
  return j.dump(2) + "\n";
}

}  // namespace sdtw
