#include <gtest/gtest.h>

#include <cmath>

#include "bireg/grid.hpp"

using namespace bireg;

TEST(Grid, PointsAreUniformAndEndsExact) {
  const Grid g(0.0, 1.0, 201);
  EXPECT_EQ(g.size(), 201u);
  EXPECT_DOUBLE_EQ(g.spacing(), 0.005);
  EXPECT_EQ(g[0], 0.0);
  EXPECT_EQ(g[200], 1.0);
  EXPECT_EQ(g[100], 0.5);
}

TEST(Grid, IndexOfFindsGridPointsOnly) {
  const Grid g(0.0, 2.0, 201);
  ASSERT_TRUE(g.index_of(1.0));
  EXPECT_EQ(*g.index_of(1.0), 100u);
  EXPECT_EQ(*g.index_of(2.0), 200u);
  EXPECT_FALSE(g.index_of(1.005));
  EXPECT_FALSE(g.index_of(-0.01));
  EXPECT_FALSE(g.index_of(2.01));
}

TEST(Grid, DegenerateGridHasOnePoint) {
  const Grid g(3.0, 3.0, 1);
  EXPECT_EQ(g.size(), 1u);
  EXPECT_EQ(g[0], 3.0);
  EXPECT_EQ(g.spacing(), 0.0);
  EXPECT_EQ(*g.index_of(3.0), 0u);
}

TEST(Grid, InvalidConfigurationsThrow) {
  EXPECT_THROW(Grid(1.0, 0.0, 5), ConfigError);
  EXPECT_THROW(Grid(0.0, 1.0, 0), ConfigError);
  EXPECT_THROW(Grid(0.0, 1.0, 1), ConfigError);
  EXPECT_THROW(Grid(0.0, 0.0, 2), ConfigError);
  EXPECT_THROW(Grid(0.0, kInf, 5), ConfigError);
}

TEST(Interval, BoundednessAndContainment) {
  const Interval half{0.0, kInf};
  EXPECT_FALSE(half.bounded());
  EXPECT_TRUE(half.bounded_below());
  EXPECT_FALSE(half.bounded_above());
  EXPECT_TRUE(half.contains(1e9));
  EXPECT_FALSE(half.contains(-1e-6));
  EXPECT_TRUE(half.contains(-1e-10, 1e-9));
}

TEST(TruncationSchedule, RealLineIsAnchoredAtZero) {
  const TruncationSchedule s({-kInf, kInf}, 0.125, 1, 8);
  EXPECT_EQ(s.anchor(), 0.0);
  const auto k1 = s.truncation(1);
  EXPECT_EQ(k1.grid.lower(), -1.0);
  EXPECT_EQ(k1.grid.upper(), 1.0);
  EXPECT_EQ(k1.grid.size(), 17u);
  EXPECT_EQ(s.truncation(8).grid.size(), 129u);
}

TEST(TruncationSchedule, HalfLineIsAnchoredAtItsEnd) {
  const TruncationSchedule s({0.3, kInf}, 0.25, 1, 3);
  EXPECT_EQ(s.anchor(), 0.3);
  const auto k1 = s.truncation(1);
  EXPECT_DOUBLE_EQ(k1.grid.lower(), 0.3);
  EXPECT_DOUBLE_EQ(k1.grid.upper(), 0.8);
  const auto k3 = s.truncation(3);
  EXPECT_DOUBLE_EQ(k3.grid.upper(), 2.8);
}

TEST(TruncationSchedule, CoarserGridsAreSubLattices) {
  const TruncationSchedule s({-kInf, 0.7}, 0.1, 1, 4);
  const auto k2 = s.truncation(2);
  const auto k4 = s.truncation(4);
  for (double p : k2.grid.points()) EXPECT_TRUE(k4.grid.index_of(p)) << p;
}

TEST(TruncationSchedule, InteriorExcludesTheTruncationBoundary) {
  const TruncationSchedule s({0.0, kInf}, 0.125, 1, 2);
  const auto k2 = s.truncation(2);
  EXPECT_TRUE(k2.interior.front());  // 0 is interior to K_2 = [0, 2] in the sense |x| < 2
  EXPECT_FALSE(k2.interior.back());
  EXPECT_TRUE(k2.interior[k2.grid.size() - 2]);
}

TEST(TruncationSchedule, RejectsBadSchedules) {
  EXPECT_THROW(TruncationSchedule({-kInf, kInf}, 0.0, 1, 2), ConfigError);
  EXPECT_THROW(TruncationSchedule({-kInf, kInf}, 0.1, 3, 2), ConfigError);
  EXPECT_THROW(TruncationSchedule({5.0, kInf}, 0.1, 1, 2), DomainError);
  const TruncationSchedule s({-kInf, kInf}, 0.5, 1, 2);
  EXPECT_THROW(s.truncation(3), UsageError);
}
