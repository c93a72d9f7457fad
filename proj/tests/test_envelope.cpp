#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "bireg/envelope.hpp"

using namespace bireg;

namespace {

SampledFunction samples(double lo, double hi, std::vector<double> v) {
  const std::size_t n = v.size();
  return SampledFunction(Grid(lo, hi, n), std::move(v));
}

void expect_values(const SampledFunction& f, const std::vector<double>& want, double tol = 1e-12) {
  ASSERT_EQ(f.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(f[i], want[i], tol) << "index " << i;
}

// One-sided values at distance h/256 stand in for the one-sided limits.
std::vector<double> dense_lsc_oracle(const std::function<double(double)>& f, const Grid& g) {
  const double d = g.spacing() / 256.0;
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    double v = f(g[i]);
    if (i > 0) v = std::min(v, f(g[i] - d));
    if (i + 1 < g.size()) v = std::min(v, f(g[i] + d));
    out[i] = v;
  }
  return out;
}

}  // namespace

TEST(EnvelopeKind, NamesRoundTrip) {
  for (auto k : {EnvelopeKind::lsc, EnvelopeKind::convex, EnvelopeKind::quasiconvex, EnvelopeKind::convex_closed,
                 EnvelopeKind::quasiconvex_closed})
    EXPECT_EQ(parse_envelope_kind(to_string(k)), k);
  EXPECT_EQ(to_string(EnvelopeKind::quasiconvex_closed), "qbar");
  EXPECT_EQ(parse_envelope_kind("convex"), EnvelopeKind::convex);
  EXPECT_THROW(parse_envelope_kind("hull"), UsageError);
}

TEST(LscEnvelope, SpikeSliceVanishes) {
  const auto f = [](double y) { return y == 0.0 ? 1.0 : 0.0; };
  const auto out = lsc_envelope(f, Grid(0.0, 1.0, 201));
  for (double v : out.values) EXPECT_EQ(v, 0.0);
}

TEST(LscEnvelope, ContinuousFunctionIsUnchanged) {
  const Grid g(-1.0, 1.0, 41);
  const auto out = lsc_envelope([](double y) { return y * y; }, g);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(out[i], g[i] * g[i]);
}

TEST(LscEnvelope, StepMatchesDenseOracle) {
  const auto step = [](double y) { return y < 0.5 ? 0.0 : 1.0; };
  const Grid g(0.0, 1.0, 21);
  const auto out = lsc_envelope(step, g);
  const auto oracle = dense_lsc_oracle(step, g);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(out[i], oracle[i]) << g[i];
  EXPECT_EQ(out[*g.index_of(0.5)], 0.0);
  EXPECT_EQ(out[*g.index_of(0.55)], 1.0);
}

TEST(LscEnvelope, PureSamplesAreClosed) {
  const auto f = samples(0.0, 1.0, {1.0, 0.0, 3.0});
  EXPECT_EQ(lsc_envelope(f).values, f.values);
}

TEST(LscEnvelope, RejectsBadOptionsAndInvalidValues) {
  const Grid g(0.0, 1.0, 3);
  EXPECT_THROW(lsc_envelope([](double) { return 0.0; }, g, LscOptions{1, 3, 1e-7}), UsageError);
  EXPECT_THROW(lsc_envelope([](double y) { return y > 0.6 ? std::nan("") : 0.0; }, g), EvaluationError);
}

TEST(OneSidedLimits, EnterTheEnvelopes) {
  // Samples of y - 2 on [0, 2] with the value 0 at y = 1; both one-sided
  // limits at 1 are -1.
  const auto f = samples(0.0, 2.0, {-2.0, -1.5, 0.0, -0.5, 0.0});
  OneSidedLimits lim{{kInf, -1.5, -1.0, -0.5, 0.0}, {-2.0, -1.5, -1.0, -0.5, kInf}};
  expect_values(lsc_envelope(f, lim), {-2.0, -1.5, -1.0, -0.5, 0.0});
  expect_values(quasiconvex_envelope(f, lim), {-2.0, -1.5, -1.0, -0.5, 0.0});
  // From the samples alone the two-sided running minimum gives -0.5 at 1.
  expect_values(quasiconvex_envelope(f), {-2.0, -1.5, -0.5, -0.5, 0.0});
}

TEST(OneSidedLimits, PlainConvexEnvelopeKeepsEndpoints) {
  // Row x = 1 of the spike: 1 at y = 0, 0 elsewhere.
  const auto f = samples(0.0, 1.0, {1.0, 0.0, 0.0, 0.0, 0.0});
  OneSidedLimits lim{{kInf, 0.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 0.0, kInf}};
  expect_values(convex_envelope(f, lim), {1.0, 0.0, 0.0, 0.0, 0.0});
  expect_values(apply_envelope(f, EnvelopeKind::convex_closed, lim), {0.0, 0.0, 0.0, 0.0, 0.0});
  expect_values(apply_envelope(f, EnvelopeKind::quasiconvex, lim), {1.0, 0.0, 0.0, 0.0, 0.0});
  expect_values(apply_envelope(f, EnvelopeKind::quasiconvex_closed, lim), {0.0, 0.0, 0.0, 0.0, 0.0});
}

TEST(OneSidedLimits, MinusInfinityIsRejected) {
  const auto f = samples(0.0, 1.0, {0.0, 0.0});
  OneSidedLimits lim{{kInf, -kInf}, {0.0, kInf}};
  EXPECT_THROW(lsc_envelope(f, lim), DomainError);
}

TEST(ConvexEnvelope, CfpSliceCollapsesToZero) {
  expect_values(convex_envelope(samples(0.0, 1.0, {0.0, 0.25, 0.5, 0.75, 0.0})), {0, 0, 0, 0, 0});
}

TEST(ConvexEnvelope, AffineSamplesAreUnchanged) {
  expect_values(convex_envelope(samples(0.0, 4.0, {0, 1, 2, 3, 4})), {0, 1, 2, 3, 4});
}

TEST(ConvexEnvelope, MatchesChordOracle) {
  const auto f = samples(0.0, 4.0, {0, 1, -1, 1, 0});
  expect_values(convex_envelope(f), {0, -0.5, -1, -0.5, 0});
  expect_values(envelope_oracle(f, EnvelopeKind::convex), {0, -0.5, -1, -0.5, 0});
}

TEST(ConvexEnvelope, CollinearInputIsAFixedPoint) {
  const auto f = samples(0.0, 1.0, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7});
  EXPECT_EQ(convex_envelope(f).values, f.values);
  const auto c = convex_envelope(samples(0.0, 1.0, {0.3, -0.7, 0.9, 0.1, -0.2, 0.8}));
  EXPECT_EQ(convex_envelope(c).values, c.values);
}

TEST(ConvexEnvelope, RejectsInfiniteValues) {
  EXPECT_THROW(convex_envelope(samples(0.0, 1.0, {0.0, kInf})), DomainError);
  EXPECT_THROW(quasiconvex_envelope(samples(0.0, 1.0, {-kInf, 0.0})), DomainError);
}

TEST(QuasiconvexEnvelope, WShape) {
  const auto f = samples(0.0, 4.0, {2, 0, 1, 0, 2});
  expect_values(quasiconvex_envelope(f), {2, 0, 0, 0, 2});
  expect_values(envelope_oracle(f, EnvelopeKind::quasiconvex), {2, 0, 0, 0, 2});
}

TEST(QuasiconvexEnvelope, MonotoneSamplesAreUnchanged) {
  const auto f = samples(0.0, 1.0, {-1, -1, 0, 0.5, 3});
  EXPECT_EQ(quasiconvex_envelope(f).values, f.values);
}

TEST(EnvelopeOracle, UnsupportedKindIsAUsageError) {
  EXPECT_THROW(envelope_oracle(samples(0.0, 1.0, {0, 1}), EnvelopeKind::lsc), UsageError);
}

TEST(AffineMinorant, ParabolaAtZero) {
  const Grid g(-1.0, 1.0, 21);
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = g[i] * g[i];
  const auto m = affine_minorant(SampledFunction(g, v), *g.index_of(0.0));
  EXPECT_NEAR(m.slope, 0.0, 1e-12);
  EXPECT_NEAR(m.intercept, 0.0, 1e-12);
}

TEST(AffineMinorant, CfpSliceGivesZeroLine) {
  const auto f = samples(0.0, 1.0, {0.0, 0.25, 0.5, 0.75, 0.0});
  for (std::size_t at = 0; at < f.size(); ++at) {
    const auto m = affine_minorant(f, at);
    EXPECT_NEAR(m.slope, 0.0, 1e-12);
    EXPECT_NEAR(m.intercept, 0.0, 1e-12);
    for (std::size_t i = 0; i < f.size(); ++i) EXPECT_LE(m.slope * f.grid[i] + m.intercept, f[i] + 1e-9);
  }
}

TEST(AffineMinorant, LeastNormSubgradientAtTheKink) {
  const auto f = samples(0.0, 4.0, {0, 1, -1, 1, 0});
  const auto m = affine_minorant(f, 2);
  EXPECT_NEAR(m.slope, 0.0, 1e-12);
  EXPECT_NEAR(m.intercept, -1.0, 1e-12);
  const auto edge = affine_minorant(f, 0);
  EXPECT_NEAR(edge.slope, -0.5, 1e-12);
  EXPECT_NEAR(edge.intercept, 0.0, 1e-12);
}

TEST(ShapeCheck, SemistrictRamp) {
  EXPECT_TRUE(shape_check(samples(0.0, 2.0, {-2, -1.5, -1, -0.5, 0}), Shape::semistrictly_quasiconvex).passed);
}

TEST(ShapeCheck, BumpIsNotQuasiconvex) {
  const auto v = shape_check(samples(0.0, 4.0, {0, 1, -1, 1, 0}), Shape::quasiconvex);
  ASSERT_FALSE(v.passed);
  const std::size_t k = v.witness->index("k");
  EXPECT_TRUE(k == 1 || k == 3);
}

TEST(ShapeCheck, SpikedRampWitness) {
  const auto v = shape_check(samples(0.0, 2.0, {-2, -1.5, 0, -0.5, 0}), Shape::quasiconvex);
  ASSERT_FALSE(v.passed);
  EXPECT_EQ(v.witness->index("i"), 1u);
  EXPECT_EQ(v.witness->index("k"), 2u);
  EXPECT_EQ(v.witness->index("j"), 3u);
}

TEST(ShapeCheck, PlateauIsQuasiconvexButNotSemistrict) {
  const auto f = samples(0.0, 1.0, {0, 1, 1, 2});
  EXPECT_TRUE(shape_check(f, Shape::quasiconvex).passed);
  const auto v = shape_check(samples(0.0, 1.0, {1, 1, 0}), Shape::semistrictly_quasiconvex);
  ASSERT_FALSE(v.passed);
  // f(2) < f(0) but f(1) is not below f(0).
  EXPECT_EQ(v.witness->index("k"), 1u);
}

TEST(ShapeCheck, ConvexWitnessIsASecondDifference) {
  const auto v = shape_check(samples(0.0, 4.0, {0, 1, -1, 1, 0}), Shape::convex);
  ASSERT_FALSE(v.passed);
  const std::size_t k = v.witness->index("k");
  EXPECT_EQ(v.witness->index("i"), k - 1);
  EXPECT_EQ(v.witness->index("j"), k + 1);
  EXPECT_TRUE(shape_check(samples(0.0, 4.0, {0, -0.5, -1, -0.5, 0}), Shape::convex).passed);
}

TEST(EnvelopeChain, ConvexBelowQuasiconvexBelowF) {
  const auto f = samples(0.0, 1.0, {0.5, -0.25, 0.75, 0.125, -0.5, 1.0, 0.0});
  const auto c = convex_envelope(f);
  const auto q = quasiconvex_envelope(f);
  for (std::size_t i = 0; i < f.size(); ++i) {
    EXPECT_LE(c[i], q[i]);
    EXPECT_LE(q[i], f[i]);
  }
}
