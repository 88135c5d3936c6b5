#include <gtest/gtest.h>

#include <cmath>

#include "sdtw/alpha_shooting.hpp"
#include "sdtw/geometry.hpp"
#include "sdtw/oracle.hpp"
#include "sdtw/zero_structure.hpp"

using namespace sdtw;

TEST(Labels, RankFollowsTemplate) {
  const ZeroLabel order[] = {{Family::delta, 1, +1}, {Family::mu, 1, -1}, {Family::gamma, 1, +1},
                             {Family::delta, 1, -1}, {Family::mu, 1, +1}, {Family::gamma, 1, -1},
                             {Family::delta, 2, +1}, {Family::mu, 2, -1}};
  for (int k = 0; k < 8; ++k) EXPECT_EQ(order[k].rank(), k);
  EXPECT_EQ(ZeroLabel::nth(Family::mu, 0).name(), "mu_1-");
  EXPECT_EQ(ZeroLabel::nth(Family::delta, 2).name(), "delta_2+");
  EXPECT_EQ(ZeroLabel::nth(Family::gamma, 1).name(), "gamma_1-");
}

TEST(Alternation, Prefixes) {
  ZeroLadder l;
  l.delta = {0.5};
  EXPECT_TRUE(verify_alternation(l));
  l.gamma = {0.7};  // gamma_1+ without mu_1-
  EXPECT_FALSE(verify_alternation(l));
  l.mu = {0.6};
  EXPECT_TRUE(verify_alternation(l));
  l.mu = {0.8};
  EXPECT_FALSE(verify_alternation(l));
}

TEST(Counts, ExpectedPatterns) {
  EXPECT_EQ(expected_counts(1), (SignChangeCounts{1, 1, 0}));
  EXPECT_EQ(expected_counts(2), (SignChangeCounts{3, 2, 2}));
  EXPECT_EQ(expected_counts(3), (SignChangeCounts{3, 3, 2}));
  EXPECT_EQ(expected_counts(1, false), (SignChangeCounts{2, 1, 1}));
  EXPECT_EQ(wave_index({1, 1, 0}), 1);
  EXPECT_EQ(wave_index({3, 2, 2}), 2);
  EXPECT_EQ(wave_index({3, 3, 2}), 3);
  EXPECT_EQ(wave_index({1, 0, 0}), 1);
  EXPECT_EQ(wave_index({2, 3, 0}), 0);
}

TEST(Extract, LinearArc) {
  const WaveSolution arc = arc_solution(0.6);
  ASSERT_EQ(arc.ladder.delta.size(), 1u);
  EXPECT_NEAR(arc.ladder.delta[0], 0.5, 1e-10);
  EXPECT_TRUE(arc.ladder.mu.empty());
  EXPECT_TRUE(arc.ladder.gamma.empty());
  EXPECT_TRUE(arc.ladder.alternating);
}

TEST(Extract, SmallSpeedHasSingleDelta) {
  const AlphaHatResult r = find_alpha_hat(0.8, 0.5);
  const ZeroLadder l = extract_zeros(r.trajectory);
  EXPECT_EQ(l.delta.size(), 1u);
  EXPECT_TRUE(l.mu.empty());
  EXPECT_TRUE(l.gamma.empty());
}

TEST(Extract, LadderAgainstReference) {
  // lengths frozen from sign changes of the 2^17-step reference
  struct Case {
    double c;
    std::size_t d, m, g;
  };
  for (const Case& k : {Case{300.0, 2, 1, 1}, Case{1000.0, 3, 2, 2}, Case{2000.0, 4, 3, 3}}) {
    const AlphaHatResult r = find_alpha_hat(1.2, k.c);
    const ZeroLadder l = extract_zeros(r.trajectory);
    EXPECT_EQ(l.delta.size(), k.d) << k.c;
    EXPECT_EQ(l.mu.size(), k.m) << k.c;
    EXPECT_EQ(l.gamma.size(), k.g) << k.c;
    EXPECT_TRUE(l.alternating);
    const ZeroLadder ref = extract_zeros(reference_solution({1.2, r.alpha_hat, k.c}));
    ASSERT_EQ(ref.delta.size(), l.delta.size());
    // late zeros inherit the discretization error amplified by the growing mode exp(c^{1/3} s)
    for (std::size_t i = 0; i < l.delta.size(); ++i) EXPECT_NEAR(l.delta[i], ref.delta[i], 1e-7);
  }
}

TEST(Extract, SignsFlipAndFirstLobePositive) {
  const AlphaHatResult r = find_alpha_hat(1.2, 1000.0);
  const ZeroLadder l = extract_zeros(r.trajectory);
  ASSERT_FALSE(l.delta.empty());
  ASSERT_FALSE(l.gamma.empty());
  EXPECT_LT(l.delta.front(), l.gamma.front());
  for (const auto& y : r.trajectory.states) {
    if (y.s > 0.0 && y.s < l.delta.front() - 1e-6) {
      ASSERT_GT(y.theta, 0.0);
    }
    if (y.s > 0.0 && y.s < l.gamma.front() - 1e-6) {
      ASSERT_GT(y.theta2, 0.0);
    }
  }
  for (double z : l.delta) {
    EXPECT_LT(evaluate_precise(r.trajectory, z - 1e-4).theta * evaluate_precise(r.trajectory, z + 1e-4).theta, 0.0);
  }
  for (double z : l.mu) {
    EXPECT_LT(evaluate_precise(r.trajectory, z - 1e-4).theta1 * evaluate_precise(r.trajectory, z + 1e-4).theta1, 0.0);
  }
  // constant sign of Psi'' between consecutive gamma zeros
  for (std::size_t i = 0; i + 1 < l.gamma.size(); ++i) {
    int sign = 0;
    for (const auto& y : r.trajectory.states) {
      if (y.s <= l.gamma[i] + 1e-6 || y.s >= l.gamma[i + 1] - 1e-6) continue;
      const int sg = y.theta2 > 0 ? 1 : -1;
      if (sign == 0) sign = sg;
      ASSERT_EQ(sg, sign);
    }
  }
  // Psi'' vanishes at both ends
  EXPECT_EQ(r.trajectory.front().theta2, 0.0);
  EXPECT_LE(std::abs(r.trajectory.back().theta2), 1e-9 * 1000.0);
}

TEST(Extract, TruncatedNeedsOption) {
  const Trajectory t = integrate_ivp({1.0, -2.0, 100.0}, 4096);
  EXPECT_THROW(extract_zeros(t), SolverError);
  ZeroOptions opt;
  opt.allow_truncated = true;
  EXPECT_NO_THROW(extract_zeros(t, opt));
}
