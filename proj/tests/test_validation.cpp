#include <gtest/gtest.h>

#include <cmath>

#include "sdtw/c_shooting.hpp"
#include "sdtw/residuals.hpp"
#include "sdtw/validation.hpp"

using namespace sdtw;

TEST(Energy, ArcIsExact) {
  const WaveSolution w = arc_solution(0.4);
  EXPECT_EQ(energy_residual(w.trajectory, 0.0), 0.0);
  EXPECT_LT(closure_residual(w.trajectory), 1e-15);
}

TEST(Energy, HoldsOnWaveAndSubinterval) {
  const auto waves = enumerate_waves(1.0, 0.3);
  ASSERT_FALSE(waves.empty());
  const WaveSolution& w = waves.front();
  EXPECT_LT(energy_residual(w.trajectory, w.c), 1e-6);
  ASSERT_FALSE(w.ladder.delta.empty());
  EXPECT_LT(energy_residual(w.trajectory, w.c, 0.0, w.ladder.delta.front()), 1e-6);
  EXPECT_LT(energy_residual(w.trajectory, w.c, 0.1234, 0.8765), 1e-6);
  // reduced form: -int (Theta'')^2 = c (cos psi_- - cos psi_+)
  EXPECT_LT(w.closure_residual, 1e-8);
}

TEST(Energy, HoldsOffTheWaveToo) {
  // the identity is a property of every solution, not only the solved one
  const Trajectory t = integrate_ivp({1.0, -3.0, 20.0}, 4096);
  EXPECT_LT(energy_residual(t, 20.0), 1e-9);
  EXPECT_THROW(energy_residual(t, 20.0, 0.5, 0.4), SolverError);
}

TEST(Closure, EqualsEndCurvatureOverSpeed) {
  const double c = 20.0;
  const Trajectory t = integrate_ivp({1.0, -3.0, c}, 4096);
  ASSERT_TRUE(t.complete());
  const double expected = std::abs(t.back().theta2) / c;
  EXPECT_GT(closure_residual(t), 1e-3);
  EXPECT_NEAR(closure_residual(t), expected, 1e-10);
}

TEST(Amplitude, OrderingOnWaves) {
  for (const auto& w : enumerate_waves(1.2, 0.01)) {
    EXPECT_TRUE(amplitude_monotonicity_check(w.trajectory, w.ladder)) << w.c;
    const GlobalBounds g = global_bounds_check(w.trajectory, w.ladder);
    EXPECT_TRUE(g.all()) << w.c;
  }
  const WaveSolution arc = arc_solution(0.7);
  EXPECT_TRUE(amplitude_monotonicity_check(arc.trajectory, arc.ladder));
}

TEST(Amplitude, DetectsViolation) {
  // a ladder that puts a mu checkpoint where |Psi| has grown again
  const Trajectory t = integrate_ivp({0.5, 1.0, 0.0}, 64);
  ZeroLadder fake;
  fake.mu = {0.5};
  EXPECT_FALSE(amplitude_monotonicity_check(t, fake));
}

TEST(Scaling, ExponentsOnSmallGrid) {
  for (auto q : kAllScalingQuantities) {
    const ScalingFit f = fit_scaling_exponent(1.0, q, 1e3, 1e5, 8);
    EXPECT_NEAR(f.exponent, f.theoretical, 0.02) << f.quantity;
    EXPECT_GE(f.r2, 0.999) << f.quantity;
    EXPECT_EQ(f.n_points, 8);
    EXPECT_LT(f.c_lo, f.c_hi);
  }
}

TEST(Scaling, PrefactorBounded) {
  const auto samples = scaling_samples(1.0, 1e3, 1e6, 10);
  double lo = INFINITY, hi = 0.0;
  for (const auto& s : samples) {
    const double m = -s.alpha_hat / std::cbrt(s.c);
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  EXPECT_GT(lo, 0.0);
  EXPECT_LT(hi / lo, 10.0);
}

TEST(Scaling, Preconditions) {
  EXPECT_THROW(fit_scaling_exponent(1.0, ScalingQuantity::alpha_hat, 100.0, 1e4, 8), SolverError);
  EXPECT_THROW(fit_scaling_exponent(1.0, ScalingQuantity::alpha_hat, 1e3, 1e4, 4), SolverError);
  EXPECT_THROW(parse_quantity("beta"), SolverError);
  EXPECT_EQ(parse_quantity("gap_mu1_delta1"), ScalingQuantity::gap_mu1_delta1);
}

TEST(SignRelation, Cases) {
  EXPECT_TRUE(sign_relation_check(0.5, 0.5, {arc_solution(0.5)}));
  const auto waves = enumerate_waves(0.9, 0.1);
  EXPECT_TRUE(sign_relation_check(0.9, 0.1, waves));
  std::vector<WaveSolution> mirrored;
  for (const auto& w : waves) mirrored.push_back(reflect_wave(w));
  EXPECT_TRUE(sign_relation_check(0.1, 0.9, mirrored));
  EXPECT_FALSE(sign_relation_check(0.9, 0.1, mirrored));
}
