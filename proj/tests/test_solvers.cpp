#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "bireg/solvers.hpp"

using namespace bireg;

namespace {

ValueTable random_table(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(-3, 3);
  std::vector<double> v(n * n);
  for (auto& e : v) e = pick(rng) / 3.0;
  return ValueTable(Grid(-1.0, 1.0, n), std::move(v));
}

std::vector<std::size_t> ep_oracle(const ValueTable& f) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < f.size(); ++j) ok = ok && !(f(i, j) < -1e-9);
    if (ok) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> cfp_oracle(const ValueTable& f, double radius) {
  std::vector<std::size_t> out;
  const Grid& g = f.grid();
  for (std::size_t x = 0; x < f.size(); ++x) {
    bool ok = true;
    for (std::size_t y = 0; y < f.size(); ++y)
      if (std::abs(g[x] - g[y]) <= radius + 1e-12 && f(y, x) > 1e-9) ok = false;
    if (ok) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST(SolveEp, LinearHasLeftEndpoint) {
  const Grid g(0.0, 1.0, 11);
  const auto f = sample_matrix(parse_spec("y - x", {0.0, 1.0}), g);
  const auto ep = solve_ep(f);
  ASSERT_EQ(ep.size(), 1u);
  EXPECT_EQ(ep.points().front(), 0.0);
  EXPECT_EQ(solve_cfp(f).indices, ep.indices);
}

TEST(SolveEp, EmptyForReversedLinear) {
  const Grid g(0.0, 1.0, 11);
  const auto f = sample_matrix(parse_spec("x - y", {0.0, 1.0}), g);
  EXPECT_EQ(solve_ep(f).points(), std::vector<double>{1.0});
  const auto cfp = solve_cfp(f);
  EXPECT_EQ(cfp.points(), std::vector<double>{1.0});
}

TEST(SolveEp, ToleranceBand) {
  const ValueTable f(Grid(0.0, 1.0, 2), {0.0, -5e-10, -2e-9, 0.0});
  EXPECT_EQ(solve_ep(f).indices, std::vector<std::size_t>{0});
  EXPECT_EQ(solve_ep(f, 1e-8).indices, (std::vector<std::size_t>{0, 1}));
}

TEST(SolveEp, MatchesOracle) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    auto f = random_table(seed, 6);
    for (std::size_t i = 0; i < f.size(); ++i)
      if (seed % 3 == 0) f(i, (i + 1) % f.size()) = std::abs(f(i, (i + 1) % f.size()));
    EXPECT_EQ(solve_ep(f).indices, ep_oracle(f)) << "seed " << seed;
  }
}

TEST(SolveCfp, MatchesOracleGlobalAndLocal) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const auto f = random_table(seed, 7);
    const double h = f.grid().spacing();
    EXPECT_EQ(solve_cfp(f).indices, cfp_oracle(f, 1e300)) << "seed " << seed;
    for (double r : {h, 2 * h, 3 * h})
      EXPECT_EQ(solve_cfp(f, 1e-9, r).indices, cfp_oracle(f, r)) << "seed " << seed << " r " << r;
  }
}

TEST(SolveCfp, LocalContainsGlobal) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto f = random_table(seed, 9);
    EXPECT_TRUE(solve_cfp(f).subset_of(solve_cfp(f, 1e-9, f.grid().spacing())));
  }
}

TEST(SolveCfp, RadiusMustBePositive) {
  const auto f = ValueTable::constant(Grid(0.0, 1.0, 3), 0.0);
  EXPECT_THROW(solve_cfp(f, 1e-9, 0.0), UsageError);
  EXPECT_THROW(solve_cfp(f, 1e-9, -1.0), UsageError);
}

TEST(SolutionSet, SubsetAndContains) {
  const Grid g(0.0, 1.0, 5);
  const SolutionSet a{g, {1, 3}}, b{g, {0, 1, 3, 4}};
  EXPECT_TRUE(a.subset_of(b));
  EXPECT_FALSE(b.subset_of(a));
  EXPECT_TRUE(a.contains(3));
  EXPECT_FALSE(a.contains(2));
  EXPECT_EQ(a.points(), (std::vector<double>{0.25, 0.75}));
}

TEST(KyFan, PicksMaximalRowFloor) {
  // Row floors: -1, 0.5, 0.5. Lowest index among ties wins.
  const ValueTable f(Grid(0.0, 1.0, 3), {0, -1, 2, 1, 0.5, 0.5, 0.5, 0.5, 1});
  const auto k = ky_fan_point(f);
  EXPECT_EQ(k.index, 1u);
  EXPECT_EQ(k.floor, 0.5);
  EXPECT_EQ(k.diagonal_min, 0.0);
  EXPECT_TRUE(k.verdict);
}

TEST(KyFan, FloorBelowDiagonalFails) {
  const ValueTable f(Grid(0.0, 1.0, 2), {1, -1, -1, 1});
  const auto k = ky_fan_point(f);
  EXPECT_EQ(k.floor, -1.0);
  EXPECT_FALSE(k.verdict);
}
