// sdtw: traveling waves of surface diffusion with free contact angles.
//
//   sdtw ivp      --psi-minus 1 --alpha -2 --c 50           trajectory CSV
//   sdtw alpha    --psi-minus 1 --c-lo 1 --c-hi 1e4 --n 20  alpha-hat curve JSON
//   sdtw waves    --psi-minus 0.9 --psi-plus 0.3            wave reports JSON
//   sdtw profile  --psi-minus 1.2 --psi-plus 0.01 --k 2     profile CSV of one wave
//   sdtw scaling  --psi-minus 1 --c-lo 1e3 --c-hi 1e6       exponent fits JSON
//   sdtw validate --psi-minus 0.9 --psi-plus 0.3            invariant suite JSON
//   sdtw scan     --axis alpha --psi-minus 0.7 --c 10       oracle report JSON

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sdtw/sdtw.hpp"

namespace {

using namespace sdtw;

struct RunConfig {
  std::string command;
  double psi_minus = 0.0;
  double psi_plus = 0.0;
  double alpha = 0.0;
  double c = 0.0;
  double c_max = 1e4;
  double c_lo = 0.0;
  double c_hi = 0.0;
  int steps = 0;
  int grid = 160;
  int n = 0;
  int k = 1;
  std::string axis = "alpha";
  bool allow_negative_psi_plus = false;
  bool degrees = false;
  std::string output_path;
  std::string format;
};

enum ExitCode { kOk = 0, kDomain = 1, kNoWave = 2, kContradiction = 3 };

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::no_wave_found: return kNoWave;
    case ErrorKind::internal_contradiction: return kContradiction;
    default: return kDomain;
  }
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) fail(ErrorKind::domain, "cannot write output file '" + path + "'");
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void check_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (cfg.format == f) return;
  }
  fail(ErrorKind::domain, "format '" + cfg.format + "' is not available for '" + cfg.command + "'");
}

ShootingOptions shooting_options(const RunConfig& cfg) {
  ShootingOptions opt;
  opt.c_max = cfg.c_max;
  opt.grid = cfg.grid;
  opt.allow_negative_psi_plus = cfg.allow_negative_psi_plus;
  opt.alpha.steps = cfg.steps;
  return opt;
}

json wave_list_json(const std::vector<WaveSolution>& waves) {
  json arr = json::array();
  for (const auto& w : waves) arr.push_back(to_json(w));
  return arr;
}

const WaveSolution& pick_wave(const std::vector<WaveSolution>& waves, int k) {
  for (const auto& w : waves) {
    if (w.k_index == k) return w;
  }
  std::ostringstream msg;
  msg << "no wave with index k=" << k << " among " << waves.size() << " found";
  fail(ErrorKind::no_wave_found, msg.str());
}

int run(const RunConfig& cfg) {
  if (cfg.format.empty()) fail(ErrorKind::internal_contradiction, "format not resolved");
  Output out(cfg.output_path);
  std::ostream& os = out.stream();

  if (cfg.command == "ivp") {
    check_format(cfg, {"csv", "json"});
    const IvpParams p{cfg.psi_minus, cfg.alpha, cfg.c};
    const Trajectory t = cfg.steps > 0 ? integrate_ivp(p, cfg.steps) : integrate_ivp(p);
    if (cfg.format == "csv") {
      write_csv(os, t);
    } else {
      json states = json::array();
      for (const auto& y : t.states) states.push_back({y.s, y.theta, y.theta1, y.theta2});
      os << dump({{"psi_minus", p.psi_minus},
                  {"alpha", p.alpha},
                  {"c", p.c},
                  {"band_exit", t.band_exit ? json(*t.band_exit) : json(nullptr)},
                  {"error_estimate", t.error_estimate},
                  {"states", states}});
    }
    return kOk;
  }

  if (cfg.command == "alpha") {
    check_format(cfg, {"json"});
    std::vector<double> cs;
    if (cfg.n > 0) cs = log_grid(cfg.c_lo, cfg.c_hi, cfg.n);
    else cs = {cfg.c};
    AlphaOptions opt;
    opt.steps = cfg.steps;
    json arr = json::array();
    for (const auto& r : alpha_hat_curve(cfg.psi_minus, cs, opt)) {
      arr.push_back({{"c", r.c},
                     {"alpha_hat", r.alpha_hat},
                     {"residual", r.residual},
                     {"theta_end", r.theta_end},
                     {"resolution_limited", r.resolution_limited}});
    }
    os << dump(arr);
    return kOk;
  }

  if (cfg.command == "waves") {
    check_format(cfg, {"json"});
    const auto waves = solve_waves(cfg.psi_minus, cfg.psi_plus, shooting_options(cfg));
    os << dump(wave_list_json(waves));
    return kOk;
  }

  if (cfg.command == "profile") {
    check_format(cfg, {"csv", "json"});
    const auto waves = solve_waves(cfg.psi_minus, cfg.psi_plus, shooting_options(cfg));
    const WaveSolution& w = cfg.psi_minus == cfg.psi_plus ? waves.front() : pick_wave(waves, cfg.k);
    if (cfg.format == "csv") {
      write_csv(os, w.trajectory, &w.profile);
    } else {
      json pts = json::array();
      for (std::size_t i = 0; i < w.profile.points.size(); ++i) {
        pts.push_back({w.profile.s[i], w.profile.points[i].x, w.profile.points[i].y, w.profile.w[i]});
      }
      os << dump({{"c", w.c}, {"k_index", w.k_index}, {"points", pts}});
    }
    return kOk;
  }

  if (cfg.command == "scaling") {
    check_format(cfg, {"json"});
    json arr = json::array();
    for (const auto& f : fit_all_exponents(cfg.psi_minus, cfg.c_lo, cfg.c_hi, cfg.n)) arr.push_back(to_json(f));
    os << dump(arr);
    return kOk;
  }

  if (cfg.command == "validate") {
    check_format(cfg, {"json"});
    const auto waves = solve_waves(cfg.psi_minus, cfg.psi_plus, shooting_options(cfg));
    json arr = json::array();
    bool ok = sign_relation_check(cfg.psi_minus, cfg.psi_plus, waves);
    for (const auto& w : waves) {
      const auto checks = validate_wave(w);
      json j = to_json(w);
      j["checks"] = json::array();
      for (const auto& c : checks) {
        j["checks"].push_back({{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"detail", c.detail}});
        if (!c.passed) std::cerr << "check failed at c=" << w.c << ": " << c.name << " (" << c.value << ")\n";
      }
      ok = ok && all_passed(checks);
      arr.push_back(std::move(j));
    }
    os << dump({{"passed", ok}, {"waves", arr}});
    return ok ? kOk : kContradiction;
  }

  if (cfg.command == "scan") {
    check_format(cfg, {"json"});
    const int n = cfg.n > 0 ? cfg.n : 10000;
    if (cfg.axis == "alpha") {
      os << dump(to_json(alpha_root_scan(cfg.psi_minus, cfg.c, n, cfg.steps)));
    } else if (cfg.axis == "c") {
      if (cfg.psi_plus <= 0.0 && !cfg.allow_negative_psi_plus) {
        fail(ErrorKind::domain, "psi_plus <= 0 requires --allow-negative-psi-plus");
      }
      os << dump(to_json(c_root_scan(cfg.psi_minus, cfg.psi_plus, cfg.c_lo, cfg.c_hi, n)));
    } else {
      fail(ErrorKind::domain, "--axis must be 'alpha' or 'c'");
    }
    return kOk;
  }
  fail(ErrorKind::domain, "unknown command '" + cfg.command + "'");
}

void validate_config(RunConfig& cfg) {
  if (cfg.degrees) {
    cfg.psi_minus *= std::numbers::pi / 180.0;
    cfg.psi_plus *= std::numbers::pi / 180.0;
  }
  auto in_range = [](double a) { return a > -kHalfPi && a < kHalfPi; };
  const bool c_axis = cfg.command == "scan" && cfg.axis == "c";
  if (cfg.command == "waves" || cfg.command == "profile" || cfg.command == "validate") {
    if (!in_range(cfg.psi_minus) || !in_range(cfg.psi_plus)) {
      fail(ErrorKind::domain, "contact angles must lie strictly between -pi/2 and pi/2 (use --degrees for degrees)");
    }
    const double hi = std::max(cfg.psi_minus, cfg.psi_plus), lo = std::min(cfg.psi_minus, cfg.psi_plus);
    if (hi <= 0.0) fail(ErrorKind::domain, "at least one contact angle must be positive");
    if (lo <= 0.0 && hi != lo && !cfg.allow_negative_psi_plus) {
      fail(ErrorKind::domain, "a non-positive contact angle requires --allow-negative-psi-plus");
    }
  } else if (!(cfg.psi_minus > 0.0 && cfg.psi_minus < kHalfPi)) {
    fail(ErrorKind::domain, "--psi-minus must lie in (0, pi/2) radians");
  }
  if (c_axis && !(cfg.psi_plus < cfg.psi_minus && cfg.psi_plus > -kHalfPi)) {
    fail(ErrorKind::domain, "--psi-plus must lie in (-pi/2, psi_minus)");
  }
  const bool c_range = cfg.command == "scaling" || c_axis || (cfg.command == "alpha" && cfg.n > 0);
  if (c_range && !(cfg.c_lo > 0.0 && cfg.c_hi > cfg.c_lo)) fail(ErrorKind::domain, "need 0 < --c-lo < --c-hi");
  if (!c_range && cfg.command != "ivp" && (cfg.command == "alpha" || cfg.command == "scan") && !(cfg.c > 0.0)) {
    fail(ErrorKind::domain, "--c must be positive");
  }
  if (cfg.steps < 0 || (cfg.steps > 0 && cfg.steps % 2 != 0)) fail(ErrorKind::domain, "--steps must be even");
  if (cfg.format.empty()) cfg.format = (cfg.command == "ivp" || cfg.command == "profile") ? "csv" : "json";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Traveling waves of surface diffusion with free contact angles"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto angles = [&](CLI::App* sub, bool plus) {
    sub->add_option("--psi-minus", cfg.psi_minus, "left contact angle (radians)")->required();
    if (plus) sub->add_option("--psi-plus", cfg.psi_plus, "right contact angle (radians)")->required();
    sub->add_flag("--degrees", cfg.degrees, "angles are given in degrees");
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--steps", cfg.steps, "RK4 steps on [0,1] (default max(4096, 64 c^(1/3)))");
    sub->add_option("--output,-o", cfg.output_path, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto wave_opts = [&](CLI::App* sub) {
    sub->add_option("--c-max", cfg.c_max, "largest speed sampled")->check(CLI::PositiveNumber);
    sub->add_option("--grid", cfg.grid, "log-spaced speed samples (>= 64)")->check(CLI::Range(64, 1 << 20));
    sub->add_flag("--allow-negative-psi-plus", cfg.allow_negative_psi_plus, "enable psi_plus <= 0");
  };

  auto* ivp = app.add_subcommand("ivp", "integrate the initial value problem");
  angles(ivp, false);
  ivp->add_option("--alpha", cfg.alpha, "initial slope Psi'(0)")->required();
  ivp->add_option("--c", cfg.c, "wave speed")->required();
  common(ivp);

  auto* alpha = app.add_subcommand("alpha", "alpha-hat(c) at one speed or on a log grid");
  angles(alpha, false);
  auto* c_opt = alpha->add_option("--c", cfg.c, "single speed");
  alpha->add_option("--c-lo", cfg.c_lo, "grid start");
  alpha->add_option("--c-hi", cfg.c_hi, "grid end");
  auto* n_opt = alpha->add_option("--n", cfg.n, "grid size")->check(CLI::Range(2, 1 << 20));
  c_opt->excludes(n_opt);
  common(alpha);

  auto* waves = app.add_subcommand("waves", "enumerate traveling waves");
  angles(waves, true);
  wave_opts(waves);
  common(waves);

  auto* profile = app.add_subcommand("profile", "profile curve of the wave with index k");
  angles(profile, true);
  wave_opts(profile);
  profile->add_option("--k", cfg.k, "wave index")->check(CLI::PositiveNumber);
  common(profile);

  auto* scaling = app.add_subcommand("scaling", "large-c exponent fits");
  angles(scaling, false);
  scaling->add_option("--c-lo", cfg.c_lo, "smallest speed (>= 1e3)")->required();
  scaling->add_option("--c-hi", cfg.c_hi, "largest speed")->required();
  scaling->add_option("--n", cfg.n, "number of speeds (>= 8)")->required()->check(CLI::Range(8, 1 << 16));
  common(scaling);

  auto* validate = app.add_subcommand("validate", "run the invariant suite on every wave");
  angles(validate, true);
  wave_opts(validate);
  common(validate);

  auto* scan = app.add_subcommand("scan", "oracle sign-change scans");
  scan->add_option("--axis", cfg.axis, "alpha or c")->check(CLI::IsMember({"alpha", "c"}));
  scan->add_option("--psi-minus", cfg.psi_minus, "left contact angle (radians)")->required();
  scan->add_option("--psi-plus", cfg.psi_plus, "right contact angle (axis c)");
  scan->add_flag("--degrees", cfg.degrees, "angles are given in degrees");
  scan->add_option("--c", cfg.c, "speed (axis alpha)");
  scan->add_option("--c-lo", cfg.c_lo, "speed range start (axis c)");
  scan->add_option("--c-hi", cfg.c_hi, "speed range end (axis c)");
  scan->add_option("--n", cfg.n, "grid size (>= 1000, default 10000)")->check(CLI::Range(1000, 1 << 24));
  scan->add_flag("--allow-negative-psi-plus", cfg.allow_negative_psi_plus, "enable psi_plus <= 0");
  common(scan);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kDomain;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    validate_config(cfg);
    return run(cfg);
  } catch (const NoWaveFoundError& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& [c, m] : e.curve()) std::cerr << "  c=" << c << "  mismatch=" << m << "\n";
    return kNoWave;
  } catch (const SolverError& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kContradiction;
  }
}
