#include <gtest/gtest.h>

#include <cmath>

#include "sdtw/alpha_shooting.hpp"
#include "sdtw/oracle.hpp"

using namespace sdtw;

TEST(AlphaScan, UniqueCrossing) {
  for (double c : {1.0, 1e4}) {
    const ScanReport r = alpha_root_scan(0.7, c, 10000);
    EXPECT_EQ(r.axis, "alpha");
    EXPECT_EQ(r.count, 1) << c;
    EXPECT_EQ(r.grid.size(), 10000u);
    ASSERT_EQ(r.crossings.size(), 1u);
    EXPECT_NEAR(r.crossings[0], find_alpha_hat(0.7, c).alpha_hat, 1e-9) << c;
  }
}

TEST(AlphaScan, Deterministic) {
  const ScanReport a = alpha_root_scan(0.5, 10.0, 1000);
  const ScanReport b = alpha_root_scan(0.5, 10.0, 1000);
  EXPECT_EQ(a.grid, b.grid);
  EXPECT_EQ(a.signs, b.signs);
  EXPECT_EQ(a.crossings, b.crossings);
  EXPECT_THROW(alpha_root_scan(0.5, 10.0, 999), SolverError);
}

TEST(CScan, CountAndParity) {
  const CScanCurve curve = c_scan_curve(1.2, 1.0, 1e4, 1000);
  const ScanReport near = c_root_scan(curve, 1.0, false);
  EXPECT_GE(near.count, 1);
  EXPECT_EQ(near.count % 2, 1);
  const ScanReport small = c_root_scan(curve, 0.01, false);
  EXPECT_GE(small.count, 3);
  const ScanReport negative = c_root_scan(curve, -0.01, false);
  EXPECT_EQ(negative.count % 2, 0);
  for (std::size_t i = 1; i < small.crossings.size(); ++i) EXPECT_LT(small.crossings[i - 1], small.crossings[i]);
}

TEST(CScan, ThresholdBracketsRootCount) {
  const CScanCurve curve = c_scan_curve(1.2, 1.0, 1e4, 1000);
  const double t = multiplicity_threshold(curve, 3, 1e-4, 1.0);
  EXPECT_GT(t, 0.0);
  EXPECT_LT(t, 1.2);
  EXPECT_GE(c_root_scan(curve, t, false).count, 3);
  EXPECT_LT(c_root_scan(curve, t + 1e-5, false).count, 3);
}

TEST(Reference, LinearCase) {
  const Trajectory t = reference_solution({0.7, -1.4, 0.0});
  EXPECT_EQ(t.states.size(), static_cast<std::size_t>(kReferenceSteps) + 1);
  // exact up to 2^17 accumulated roundings
  EXPECT_NEAR(t.back().theta, -0.7, 1e-11);
}

TEST(Reference, CoarseRunWithinTolerance) {
  // alpha = -4.5 lies inside the admissible interval at c = 100
  const IvpParams p{1.0, -4.5, 100.0};
  const Trajectory coarse = integrate_ivp(p, 8192);
  const Trajectory ref = reference_solution(p);
  ASSERT_EQ(coarse.complete(), ref.complete());
  EXPECT_LT(detail::max_diff(coarse.back(), ref.back()), 1e-9);
}
