#include <gtest/gtest.h>

#include <cmath>

#include "sdtw/c_shooting.hpp"
#include "sdtw/oracle.hpp"
#include "sdtw/validation.hpp"

using namespace sdtw;

TEST(Mismatch, FlatLimit) {
  const MismatchSample m = mismatch(1.0, 0.3, 1e-4);
  EXPECT_NEAR(m.mismatch, 0.3 - 1.0, 1e-3);
  EXPECT_LT(m.mismatch, 0.0);
}

TEST(Mismatch, PinnedAtSpeed20) {
  // frozen from the alpha-grid oracle at 2^14 steps and the 2^17 reference integration
  const MismatchSample m = mismatch(1.0, 0.3, 20.0);
  EXPECT_NEAR(m.mismatch, -0.213386893003603, 1e-9);
  EXPECT_LT(std::abs(m.theta_end), kHalfPi);
}

TEST(Mismatch, DeltaOneMinusReachingTheEnd) {
  // where Psi-hat(1; c) first vanishes the last delta zero sits at s = 1 and the mismatch is psi_+
  const double c = refine_c_root(1.0, 0.0, 20.0, 200.0, 1e-12);
  const MismatchSample m = mismatch(1.0, 0.25, c);
  EXPECT_NEAR(m.theta_end, 0.0, 1e-8);
  EXPECT_NEAR(m.mismatch, 0.25, 1e-8);
}

TEST(Mismatch, Domain) {
  EXPECT_THROW(mismatch(1.0, 1.2, 5.0), SolverError);
  EXPECT_THROW(mismatch(1.0, -1.6, 5.0), SolverError);
  EXPECT_THROW(mismatch(1.0, 0.3, 0.0), SolverError);
}

TEST(Branch, Labels) {
  ZeroLadder a;
  a.delta = {0.2};
  a.mu = {0.5};
  a.deepest_delta = ZeroLabel{Family::delta, 1, +1};
  a.deepest_mu = ZeroLabel{Family::mu, 1, -1};
  EXPECT_EQ(classify_branch(a).name(), "mu_1--branch");
  EXPECT_TRUE(matches_expected_branch(classify_branch(a), 1));

  ZeroLadder b;
  b.deepest_delta = ZeroLabel{Family::delta, 2, +1};
  b.deepest_mu = ZeroLabel{Family::mu, 1, +1};
  EXPECT_EQ(classify_branch(b).name(), "delta_2+-branch");
  EXPECT_TRUE(matches_expected_branch(classify_branch(b), 2));
  EXPECT_FALSE(matches_expected_branch(classify_branch(b), 3));

  ZeroLadder c;
  c.delta = {0.5};
  c.deepest_delta = ZeroLabel{Family::delta, 1, +1};
  EXPECT_EQ(classify_branch(c).name(), "delta_1+-branch");
}

TEST(Enumerate, SingleWaveCase) {
  const auto waves = enumerate_waves(0.5, 0.4);
  ASSERT_GE(waves.size(), 1u);
  EXPECT_EQ(waves.size() % 2, 1u);
  for (const auto& w : waves) {
    EXPECT_GT(w.c, 0.0);
    EXPECT_LE(std::abs(w.mismatch), 1e-8);
    EXPECT_EQ(w.trajectory.front().theta, 0.5);
    EXPECT_TRUE(all_passed(validate_wave(w)));
  }
}

TEST(Enumerate, ThreeWaves) {
  const auto waves = enumerate_waves(1.2, 0.01);
  ASSERT_EQ(waves.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    const auto& w = waves[static_cast<std::size_t>(i)];
    EXPECT_EQ(w.k_index, i + 1);
    EXPECT_EQ(w.counts, expected_counts(i + 1));
    EXPECT_TRUE(matches_expected_branch(classify_branch(w.ladder), w.k_index)) << classify_branch(w.ladder).name();
    if (i > 0) {
      EXPECT_LT(waves[static_cast<std::size_t>(i - 1)].c, w.c);
    }
    // amplitude ceiling |Psi-hat(1)| = psi_+ <= psi_-
    EXPECT_NEAR(std::abs(w.trajectory.back().theta), 0.01, 1e-8);
  }
}

TEST(Enumerate, NegativeBranchNeedsFlag) {
  EXPECT_THROW(enumerate_waves(0.5, -0.05), SolverError);
  ShootingOptions opt;
  opt.allow_negative_psi_plus = true;
  const auto waves = enumerate_waves(0.5, -0.05, opt);
  EXPECT_GE(waves.size(), 2u);
  EXPECT_EQ(waves.size() % 2, 0u);
  for (const auto& w : waves) {
    EXPECT_GT(w.c, 0.0);
    EXPECT_TRUE(matches_expected_branch(classify_branch(w.ladder), w.k_index, false));
  }
}

TEST(Enumerate, NegativeBranchWithoutRootsIsEmpty) {
  ShootingOptions opt;
  opt.allow_negative_psi_plus = true;
  opt.c_max = 10.0;
  opt.grid = 64;
  EXPECT_TRUE(enumerate_waves(0.5, -0.3, opt).empty());
}

TEST(Enumerate, NoWaveCarriesCurve) {
  ShootingOptions opt;
  opt.c_max = 1e-2;
  opt.grid = 64;
  try {
    enumerate_waves(0.5, 0.4, opt);
    FAIL();
  } catch (const NoWaveFoundError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::no_wave_found);
    EXPECT_EQ(e.curve().size(), 64u);
  }
}

TEST(Enumerate, Preconditions) {
  EXPECT_THROW(enumerate_waves(0.5, 0.5), SolverError);
  EXPECT_THROW(enumerate_waves(0.5, 0.6), SolverError);
  ShootingOptions opt;
  opt.grid = 32;
  EXPECT_THROW(enumerate_waves(0.5, 0.3, opt), SolverError);
}

TEST(Enumerate, AgreesWithCScan) {
  const auto waves = enumerate_waves(0.9, 0.3);
  const ScanReport scan = c_root_scan(0.9, 0.3, 1e-4, 1e4, 1000);
  ASSERT_EQ(static_cast<std::size_t>(scan.count), waves.size());
  for (std::size_t i = 0; i < waves.size(); ++i) EXPECT_NEAR(scan.crossings[i], waves[i].c, 1e-8 * waves[i].c);
}

TEST(Solve, DispatchesOnAngles) {
  const auto arc = solve_waves(0.5, 0.5);
  ASSERT_EQ(arc.size(), 1u);
  EXPECT_EQ(arc[0].c, 0.0);

  const auto forward = solve_waves(1.0, 0.2);
  const auto mirrored = solve_waves(0.2, 1.0);
  ASSERT_EQ(forward.size(), mirrored.size());
  for (std::size_t i = 0; i < forward.size(); ++i) {
    EXPECT_DOUBLE_EQ(mirrored[i].c, -forward[i].c);
    EXPECT_NEAR(mirrored[i].profile.left_angle, 0.2, 1e-8);
    EXPECT_NEAR(mirrored[i].profile.right_angle, 1.0, 1e-12);
    EXPECT_LT(mirrored[i].profile.y_end_residual, 1e-8);
    EXPECT_TRUE(sign_relation_check(0.2, 1.0, {mirrored[i]}));
  }
}
