#pragma once

// Exhaustive checkers for generalized monotonicity, the (local) upper sign
// property and the segment conditions alpha/beta on sampled tables.
//
// Segments are discretized to their strict-interior grid points; a pair of
// adjacent grid points has no interior point, so any "for all t" premise
// over it holds vacuously. Failing verdicts report the first violation in
// scan order.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string_view>

#include "bireg/bifunction.hpp"
#include "bireg/verdict.hpp"

namespace bireg {

enum class Monotonicity { monotone, pseudomonotone, quasimonotone };

inline std::string_view to_string(Monotonicity m) {
  switch (m) {
    case Monotonicity::monotone: return "monotone";
    case Monotonicity::pseudomonotone: return "pseudomonotone";
    case Monotonicity::quasimonotone: return "quasimonotone";
  }
  return "?";
}

// monotone:       f(x,y) + f(y,x) <= 0
// pseudomonotone: f(x,y) >= 0  =>  f(y,x) <= 0
// quasimonotone:  f(x,y) >  0  =>  f(y,x) <= 0
//
// Pairs are scanned with x_i >= y_j (row index i, column j <= i) for the
// symmetric monotone condition and over all ordered pairs otherwise.
inline Verdict check_monotonicity(const ValueTable& f, Monotonicity kind, Tolerances tol = {}) {
  const std::size_t n = f.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t jmax = kind == Monotonicity::monotone ? i + 1 : n;
    for (std::size_t j = 0; j < jmax; ++j) {
      const double a = f(i, j), b = f(j, i);
      bool violated = false;
      switch (kind) {
        case Monotonicity::monotone: violated = !tol.nonpositive(a + b); break;
        case Monotonicity::pseudomonotone: violated = tol.nonnegative(a) && !tol.nonpositive(b); break;
        case Monotonicity::quasimonotone: violated = tol.positive(a) && !tol.nonpositive(b); break;
      }
      if (violated)
        return Verdict::fail(Witness{}.at("x", i).at("y", j).with("f(x,y)", a).with("f(y,x)", b), tol);
    }
  }
  return Verdict::pass(tol);
}

enum class ProperMethod { pair, subset };

// Properly quasimonotone: for every finite point set and every x in its
// convex hull, some point x_i of the set has f(x_i, x) <= 0.
//
// pair: in 1-D the hull of a set is [min, max], so it suffices that for every
// k and every i <= k <= j, min(f(x_i,x_k), f(x_j,x_k)) <= 0.
// subset: the literal definition over all subsets of grid points; limited to
// 12 points.
inline Verdict check_properly_quasimonotone(const ValueTable& f, ProperMethod method = ProperMethod::pair,
                                            Tolerances tol = {}) {
  const std::size_t n = f.size();
  if (method == ProperMethod::pair) {
    for (std::size_t k = 0; k < n; ++k) {
      // Nearest positive entries of column k on each side suffice as witness.
      if (!tol.nonpositive(f(k, k)))
        return Verdict::fail(Witness{}.at("i", k).at("x", k).at("j", k).with("f(x_i,x)", f(k, k)), tol);
      std::optional<std::size_t> left, right;
      for (std::size_t i = 0; i < k && !left; ++i)
        if (!tol.nonpositive(f(i, k))) left = i;
      for (std::size_t j = n; j-- > k + 1 && !right;)
        if (!tol.nonpositive(f(j, k))) right = j;
      if (left && right)
        return Verdict::fail(Witness{}.at("i", *left).at("x", k).at("j", *right)
                                 .with("f(x_i,x)", f(*left, k)).with("f(x_j,x)", f(*right, k)),
                             tol);
    }
    return Verdict::pass(tol);
  }
  if (n > 12) throw UsageError("subset method is limited to grids with at most 12 points");
  const std::size_t subsets = std::size_t{1} << n;
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    std::size_t lo = n, hi = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) {
        lo = std::min(lo, i);
        hi = std::max(hi, i);
      }
    for (std::size_t k = lo; k <= hi; ++k) {
      bool some_nonpositive = false;
      for (std::size_t i = 0; i < n && !some_nonpositive; ++i)
        if ((mask >> i & 1U) && tol.nonpositive(f(i, k))) some_nonpositive = true;
      if (!some_nonpositive) {
        Witness w;
        for (std::size_t i = 0; i < n; ++i)
          if (mask >> i & 1U) w.at("member", i);
        w.at("x", k);
        return Verdict::fail(std::move(w), tol);
      }
    }
  }
  return Verdict::pass(tol);
}

// Upper sign: (f(x_t, x) <= 0 for all t in ]0,1[, x_t = (1-t)x + t y)
// implies f(x,y) >= 0. For y = x the premise reads f(x,x) <= 0. The local
// variant only considers y with |x - y| <= radius.
struct UpperSignScope {
  std::optional<double> radius;

  static UpperSignScope global() { return {}; }
  static UpperSignScope local(double r) {
    if (!(r > 0.0)) throw UsageError("local upper sign radius must be positive");
    return UpperSignScope{r};
  }
};

inline Verdict check_upper_sign(const ValueTable& f, UpperSignScope scope = UpperSignScope::global(),
                                Tolerances tol = {}) {
  const std::size_t n = f.size();
  const Grid& g = f.grid();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (scope.radius && std::abs(g[i] - g[j]) > *scope.radius + 1e-12) continue;
      bool premise = true;
      if (i == j) {
        premise = tol.nonpositive(f(i, i));
      } else {
        const std::size_t lo = std::min(i, j), hi = std::max(i, j);
        for (std::size_t k = lo + 1; k < hi && premise; ++k) premise = tol.nonpositive(f(k, i));
      }
      if (premise && !tol.nonnegative(f(i, j)))
        return Verdict::fail(Witness{}.at("x", i).at("y", j).with("f(x,y)", f(i, j)), tol);
    }
  }
  return Verdict::pass(tol);
}

enum class SegmentCondition { alpha, beta };

// beta:  f(x,y) < 0 and f(x,x) = 0  =>  f(x, x_t) < 0 for x_t = t x + (1-t) y
// alpha: f(x,y1) <= 0 and f(x,y2) < 0  =>  f(x, y_t) < 0 for y_t = t y1 + (1-t) y2
//
// Scan order: beta over (x, y, x_t) ascending from y; alpha over x, then
// y2 ascending, y1 descending, y_t ascending.
inline Verdict check_segment_condition(const ValueTable& f, SegmentCondition kind, Tolerances tol = {}) {
  const std::size_t n = f.size();
  if (kind == SegmentCondition::beta) {
    for (std::size_t x = 0; x < n; ++x) {
      if (std::abs(f(x, x)) > tol.tol) continue;
      for (std::size_t y = 0; y < n; ++y) {
        if (!tol.negative(f(x, y))) continue;
        const std::size_t lo = std::min(x, y), hi = std::max(x, y);
        for (std::size_t t = lo + 1; t < hi; ++t) {
          // Walk from y toward x.
          const std::size_t xt = y < x ? t : hi - (t - lo);
          if (!tol.negative(f(x, xt)))
            return Verdict::fail(Witness{}.at("x", x).at("y", y).at("x_t", xt)
                                     .with("f(x,y)", f(x, y)).with("f(x,x)", f(x, x)).with("f(x,x_t)", f(x, xt)),
                                 tol);
        }
      }
    }
    return Verdict::pass(tol);
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y2 = 0; y2 < n; ++y2) {
      if (!tol.negative(f(x, y2))) continue;
      for (std::size_t y1 = n; y1-- > 0;) {
        if (!tol.nonpositive(f(x, y1))) continue;
        const std::size_t lo = std::min(y1, y2), hi = std::max(y1, y2);
        for (std::size_t yt = lo + 1; yt < hi; ++yt)
          if (!tol.negative(f(x, yt)))
            return Verdict::fail(Witness{}.at("x", x).at("y1", y1).at("y2", y2).at("y_t", yt)
                                     .with("f(x,y1)", f(x, y1)).with("f(x,y2)", f(x, y2)).with("f(x,y_t)", f(x, yt)),
                                 tol);
      }
    }
  }
  return Verdict::pass(tol);
}

}  // namespace bireg
