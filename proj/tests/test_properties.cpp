#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "bireg/bifunction.hpp"
#include "bireg/properties.hpp"

using namespace bireg;

namespace {

ValueTable table(const char* expr, Interval k, const Grid& g) { return sample_matrix(parse_spec(expr, k), g); }

ValueTable random_table(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(-4, 4);
  std::vector<double> v(n * n);
  for (auto& e : v) e = pick(rng) / 4.0;
  return ValueTable(Grid(0.0, 1.0, n), std::move(v));
}

// Definition-literal oracles, written independently of the checkers.
bool monotone_oracle(const ValueTable& f, Monotonicity kind) {
  const Tolerances t;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < f.size(); ++j) {
      const double a = f(i, j), b = f(j, i);
      if (kind == Monotonicity::monotone && a + b > t.tol) return false;
      if (kind == Monotonicity::pseudomonotone && a >= -t.tol && b > t.tol) return false;
      if (kind == Monotonicity::quasimonotone && a > t.tol_strict && b > t.tol) return false;
    }
  return true;
}

// Upper sign with x_t enumerated by coordinates rather than indices.
bool upper_sign_oracle(const ValueTable& f) {
  const Grid& g = f.grid();
  const Tolerances t;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < f.size(); ++j) {
      bool premise = true;
      for (std::size_t k = 0; k < f.size(); ++k) {
        const bool between = (g[k] - g[i]) * (g[j] - g[k]) > 0.0;
        if (between && f(k, i) > t.tol) premise = false;
      }
      if (i == j) premise = f(i, i) <= t.tol;
      if (premise && f(i, j) < -t.tol) return false;
    }
  return true;
}

bool beta_oracle(const ValueTable& f) {
  const Tolerances t;
  const std::size_t n = f.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t k = 0; k < n; ++k) {
        const bool between = (k > x && k < y) || (k < x && k > y);
        if (between && std::abs(f(x, x)) <= t.tol && f(x, y) < -t.tol_strict && f(x, k) >= -t.tol_strict) return false;
      }
  return true;
}

bool alpha_oracle(const ValueTable& f) {
  const Tolerances t;
  const std::size_t n = f.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t k = 0; k < n; ++k) {
          const bool between = (k > a && k < b) || (k < a && k > b);
          if (between && f(x, a) <= t.tol && f(x, b) < -t.tol_strict && f(x, k) >= -t.tol_strict) return false;
        }
  return true;
}

}  // namespace

TEST(Monotonicity, SpikeFailsWithWitness) {
  const Grid g(0.0, 1.0, 201);
  const auto f = table("if x == 1 and y == 0: 1; if x == 0 and y == 1: 1; else: 0", {0.0, 1.0}, g);
  const auto v = check_monotonicity(f, Monotonicity::monotone);
  ASSERT_FALSE(v.passed);
  EXPECT_EQ(g[v.witness->index("x")], 1.0);
  EXPECT_EQ(g[v.witness->index("y")], 0.0);
  EXPECT_EQ(f(v.witness->index("x"), v.witness->index("y")) + f(v.witness->index("y"), v.witness->index("x")), 2.0);
}

TEST(Monotonicity, AntisymmetricPasses) {
  const auto f = table("y - x", {0.0, 1.0}, Grid(0.0, 1.0, 11));
  for (auto k : {Monotonicity::monotone, Monotonicity::pseudomonotone, Monotonicity::quasimonotone})
    EXPECT_TRUE(check_monotonicity(f, k).passed);
}

TEST(Monotonicity, MatchesOracleOnRandomTables) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const auto f = random_table(seed, 8);
    for (auto k : {Monotonicity::monotone, Monotonicity::pseudomonotone, Monotonicity::quasimonotone})
      EXPECT_EQ(check_monotonicity(f, k).passed, monotone_oracle(f, k)) << "seed " << seed;
  }
}

TEST(Monotonicity, WitnessesReproduceTheViolation) {
  const Tolerances t;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto f = random_table(seed, 6);
    const auto v = check_monotonicity(f, Monotonicity::pseudomonotone);
    if (v.passed) continue;
    const double a = f(v.witness->index("x"), v.witness->index("y"));
    const double b = f(v.witness->index("y"), v.witness->index("x"));
    EXPECT_TRUE(a >= -t.tol && b > t.tol);
  }
}

TEST(ProperlyQuasimonotone, Examples) {
  const Grid g(0.0, 1.0, 5);
  EXPECT_TRUE(check_properly_quasimonotone(ValueTable::constant(g, -1.0)).passed);
  EXPECT_TRUE(check_properly_quasimonotone(ValueTable::constant(g, 0.0)).passed);
  const auto lin = table("y - x", {0.0, 1.0}, Grid(0.0, 1.0, 3));
  EXPECT_TRUE(check_properly_quasimonotone(lin, ProperMethod::pair).passed);
  EXPECT_TRUE(check_properly_quasimonotone(lin, ProperMethod::subset).passed);
}

TEST(ProperlyQuasimonotone, PairFailureWitness) {
  // Column 1 is positive on both sides.
  const ValueTable f(Grid(0.0, 1.0, 3), {0, 1, 0, 0, 0, 0, 0, 1, 0});
  const auto v = check_properly_quasimonotone(f, ProperMethod::pair);
  ASSERT_FALSE(v.passed);
  EXPECT_EQ(v.witness->index("i"), 0u);
  EXPECT_EQ(v.witness->index("x"), 1u);
  EXPECT_EQ(v.witness->index("j"), 2u);
  EXPECT_FALSE(check_properly_quasimonotone(f, ProperMethod::subset).passed);
}

TEST(ProperlyQuasimonotone, MethodsAgreeOnSmallGrids) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const auto f = random_table(seed, 2 + seed % 5);
    EXPECT_EQ(check_properly_quasimonotone(f, ProperMethod::pair).passed,
              check_properly_quasimonotone(f, ProperMethod::subset).passed)
        << "seed " << seed;
  }
}

TEST(ProperlyQuasimonotone, SubsetMethodIsLimited) {
  EXPECT_THROW(check_properly_quasimonotone(ValueTable::constant(Grid(0.0, 1.0, 13), 0.0), ProperMethod::subset),
               UsageError);
}

TEST(UpperSign, Examples) {
  const Grid g(0.0, 1.0, 21);
  EXPECT_TRUE(check_upper_sign(ValueTable::constant(g, 1.0)).passed);
  EXPECT_TRUE(check_upper_sign(ValueTable::constant(g, 0.0)).passed);
}

TEST(UpperSign, NegativeRowsFail) {
  const Grid g(0.0, 1.0, 3);
  const auto f = table("if x > 0: -1; else: 0", {0.0, 1.0}, g);
  const auto v = check_upper_sign(f);
  ASSERT_FALSE(v.passed);
  EXPECT_EQ(g[v.witness->index("x")], 0.5);
  EXPECT_EQ(g[v.witness->index("y")], 0.0);
}

TEST(UpperSign, LocalScopeIgnoresDistantPairs) {
  // Negative only between the two end points, which are 1 apart.
  const ValueTable f(Grid(0.0, 1.0, 3), {0, 1, -1, 0, 0, 0, -1, 1, 0});
  EXPECT_FALSE(check_upper_sign(f).passed);
  EXPECT_TRUE(check_upper_sign(f, UpperSignScope::local(0.5)).passed);
  EXPECT_THROW(UpperSignScope::local(0.0), UsageError);
}

TEST(UpperSign, MatchesOracleOnRandomTables) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    auto f = random_table(seed, 7);
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = 0; j < f.size(); ++j)
        if (i != j && (i + j + seed) % 3 == 0) f(i, j) = std::abs(f(i, j));
    EXPECT_EQ(check_upper_sign(f).passed, upper_sign_oracle(f)) << "seed " << seed;
  }
}

TEST(SegmentCondition, SqExampleFailsBoth) {
  const Grid g(0.0, 2.0, 201);
  const auto f = table("if y == 1: 0; else: y - 2", {0.0, 2.0}, g);
  const auto beta = check_segment_condition(f, SegmentCondition::beta);
  ASSERT_FALSE(beta.passed);
  EXPECT_EQ(g[beta.witness->index("x")], 2.0);
  EXPECT_EQ(g[beta.witness->index("y")], 0.0);
  EXPECT_EQ(g[beta.witness->index("x_t")], 1.0);
  const auto alpha = check_segment_condition(f, SegmentCondition::alpha);
  ASSERT_FALSE(alpha.passed);
  EXPECT_EQ(g[alpha.witness->index("y1")], 2.0);
  EXPECT_EQ(g[alpha.witness->index("y2")], 0.0);
  EXPECT_EQ(g[alpha.witness->index("y_t")], 1.0);
}

TEST(SegmentCondition, LinearPassesBeta) {
  EXPECT_TRUE(check_segment_condition(table("y - x", {0.0, 1.0}, Grid(0.0, 1.0, 11)), SegmentCondition::beta).passed);
}

TEST(SegmentCondition, MatchesOraclesOnRandomTables) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    auto f = random_table(seed, 6);
    for (std::size_t i = 0; i < f.size(); ++i)
      if (seed % 2 == 0) f(i, i) = 0.0;
    EXPECT_EQ(check_segment_condition(f, SegmentCondition::beta).passed, beta_oracle(f)) << "seed " << seed;
    EXPECT_EQ(check_segment_condition(f, SegmentCondition::alpha).passed, alpha_oracle(f)) << "seed " << seed;
  }
}
