#pragma once

// Regularizations of a one-variable function sampled on a uniform grid:
// lower semicontinuous, convex and quasiconvex envelopes, plus shape checks
// and affine minorants read off the convex hull.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bireg/error.hpp"
#include "bireg/grid.hpp"
#include "bireg/verdict.hpp"

namespace bireg {

struct SampledFunction {
  Grid grid;
  std::vector<ExtendedReal> values;

  SampledFunction(Grid g, std::vector<ExtendedReal> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size()) throw ConfigError("sample count does not match grid size");
  }

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t i) const noexcept { return values[i]; }
};

enum class EnvelopeKind { lsc, convex, quasiconvex, convex_closed, quasiconvex_closed };

inline std::string_view to_string(EnvelopeKind k) {
  switch (k) {
    case EnvelopeKind::lsc: return "s";
    case EnvelopeKind::convex: return "c";
    case EnvelopeKind::quasiconvex: return "q";
    case EnvelopeKind::convex_closed: return "cbar";
    case EnvelopeKind::quasiconvex_closed: return "qbar";
  }
  return "?";
}

inline EnvelopeKind parse_envelope_kind(std::string_view s) {
  if (s == "s" || s == "lsc") return EnvelopeKind::lsc;
  if (s == "c" || s == "convex") return EnvelopeKind::convex;
  if (s == "q" || s == "quasiconvex") return EnvelopeKind::quasiconvex;
  if (s == "cbar" || s == "convex_closed") return EnvelopeKind::convex_closed;
  if (s == "qbar" || s == "quasiconvex_closed") return EnvelopeKind::quasiconvex_closed;
  throw UsageError("unknown envelope kind '" + std::string(s) + "' (expected s|c|q|cbar|qbar)");
}

// Kinds whose envelope includes the lsc closure.
inline bool is_closed(EnvelopeKind k) noexcept {
  return k == EnvelopeKind::lsc || k == EnvelopeKind::convex_closed || k == EnvelopeKind::quasiconvex_closed;
}

struct AffineMinorant {
  double slope = 0.0;
  double intercept = 0.0;

  double operator()(double y) const noexcept { return slope * y + intercept; }
};

struct LscOptions {
  int refinement = 16;
  // Probes at distances h/r, h/r^2, ..., h/r^depth on each side.
  int depth = 3;
  // Drops smaller than this are attributed to extrapolation error.
  double jump_tol = 1e-7;
};

namespace detail {

inline void require_finite(std::span<const double> v, const char* op) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!std::isfinite(v[i]))
      throw DomainError(std::string(op) + ": non-finite value at index " + std::to_string(i));
}

// Vertices of the lower convex hull of {(i, v_i)}, left to right. Points
// that are collinear up to rounding are kept, which makes the envelope
// reproduce its own output bit-for-bit.
inline std::vector<std::size_t> lower_hull(std::span<const double> v) {
  std::vector<std::size_t> hull;
  hull.reserve(v.size());
  for (std::size_t c = 0; c < v.size(); ++c) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2];
      const std::size_t b = hull.back();
      const double dx1 = static_cast<double>(b - a);
      const double dx2 = static_cast<double>(c - a);
      const double dy1 = v[b] - v[a];
      const double dy2 = v[c] - v[a];
      // cross > 0: b lies above segment ac.
      const double cross = dx2 * dy1 - dx1 * dy2;
      const double mag = std::max({std::abs(v[a]), std::abs(v[b]), std::abs(v[c]), 1.0});
      const double eps = 1e-14 * (dx1 + dx2) * mag;
      if (cross > eps) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(c);
  }
  return hull;
}

}  // namespace detail

inline SampledFunction lsc_envelope(const SampledFunction& f) { return f; }

// One-sided limits lim_{y -> x_k-} and lim_{y -> x_k+} of the function that
// was sampled, at every grid point. +inf where a side lies outside the grid
// or the function blows up upward.
struct OneSidedLimits {
  std::vector<double> left;
  std::vector<double> right;
};

// Numeric one-sided limits: probes at offsets h/r, ..., h/r^depth and
// extrapolates linearly to offset zero. Limits within jump_tol of the value
// at the grid point are snapped to it.
template <class Fn>
OneSidedLimits probe_limits(Fn&& f, const Grid& grid, LscOptions opt = {}) {
  if (opt.refinement < 2) throw UsageError("lsc refinement must be at least 2");
  if (opt.depth < 2) throw UsageError("lsc probe depth must be at least 2");
  const std::size_t n = grid.size();
  OneSidedLimits out{std::vector<double>(n, kInf), std::vector<double>(n, kInf)};
  auto eval = [&](double y) {
    const double v = f(y);
    if (std::isnan(v) || v == -kInf)
      throw EvaluationError("probe produced an invalid value at y=" + std::to_string(y), 0.0, y);
    return v;
  };
  const double h = grid.spacing();
  const double r = static_cast<double>(opt.refinement);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid[i];
    const double fx = eval(x);
    if (!std::isfinite(fx)) throw EvaluationError("non-finite value at y=" + std::to_string(x), 0.0, x);
    for (int side : {-1, +1}) {
      if ((side < 0 && i == 0) || (side > 0 && i + 1 == n)) continue;
      double prev = 0.0, last = 0.0, delta = h;
      for (int k = 1; k <= opt.depth; ++k) {
        delta /= r;
        prev = last;
        last = eval(x + side * delta);
      }
      double limit = last;
      if (std::isfinite(last) && std::isfinite(prev)) limit = last - (prev - last) / (r - 1.0);
      if (std::abs(fx - limit) <= opt.jump_tol) limit = fx;
      (side < 0 ? out.left : out.right)[i] = limit;
    }
  }
  return out;
}

namespace detail {

inline void check_limits(const SampledFunction& f, const OneSidedLimits& lim) {
  if (lim.left.size() != f.size() || lim.right.size() != f.size())
    throw ConfigError("one-sided limits do not match the sample count");
  for (std::size_t i = 0; i < f.size(); ++i)
    if (lim.left[i] == -kInf || lim.right[i] == -kInf)
      throw DomainError("one-sided limit is -inf at index " + std::to_string(i) + "; the envelope is not well defined");
}

}  // namespace detail

// lsc envelope from one-sided limits: min(f, lim inf from either side).
inline SampledFunction lsc_envelope(const SampledFunction& f, const OneSidedLimits& lim) {
  detail::check_limits(f, lim);
  std::vector<double> out(f.values);
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::min({out[i], lim.left[i], lim.right[i]});
  return SampledFunction(f.grid, std::move(out));
}

// Lower semicontinuous envelope of an evaluable function (numeric limits).
template <class Fn>
SampledFunction lsc_envelope(Fn&& f, const Grid& grid, LscOptions opt = {}) {
  const auto lim = probe_limits(f, grid, opt);
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = f(grid[i]);
  return lsc_envelope(SampledFunction(grid, std::move(v)), lim);
}

inline SampledFunction convex_envelope(const SampledFunction& f) {
  detail::require_finite(f.values, "convex_envelope");
  const std::size_t n = f.size();
  if (n <= 2) return f;
  const auto hull = detail::lower_hull(f.values);
  std::vector<double> out(f.values);
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const std::size_t a = hull[s], c = hull[s + 1];
    const double span = static_cast<double>(c - a);
    for (std::size_t k = a + 1; k < c; ++k) {
      const double t = static_cast<double>(k - a) / span;
      out[k] = std::min(f.values[k], f.values[a] + t * (f.values[c] - f.values[a]));
    }
  }
  return SampledFunction(f.grid, std::move(out));
}

// In one dimension co(S_lambda) is [min S_lambda, max S_lambda], so the
// quasiconvex envelope is the larger of the two running minima.
inline SampledFunction quasiconvex_envelope(const SampledFunction& f) {
  detail::require_finite(f.values, "quasiconvex_envelope");
  const std::size_t n = f.size();
  std::vector<double> left(n), right(n), out(n);
  for (std::size_t k = 0; k < n; ++k) left[k] = k == 0 ? f[k] : std::min(left[k - 1], f[k]);
  for (std::size_t k = n; k-- > 0;) right[k] = k + 1 == n ? f[k] : std::min(right[k + 1], f[k]);
  for (std::size_t k = 0; k < n; ++k) out[k] = std::max(left[k], right[k]);
  return SampledFunction(f.grid, std::move(out));
}

// Convex envelope (without closure) of the function behind the samples:
// inside the grid it agrees with the closed envelope, while the end points
// keep their own values since no proper convex combination reaches them.
inline SampledFunction convex_envelope(const SampledFunction& f, const OneSidedLimits& lim) {
  auto out = convex_envelope(lsc_envelope(f, lim));
  if (f.size() > 0) {
    out.values.front() = f.values.front();
    out.values.back() = f.values.back();
  }
  return out;
}

// Quasiconvex envelope (without closure): min(f(x), max(inf_{y<x} f,
// inf_{y>x} f)), where the infima see one-sided limits.
inline SampledFunction quasiconvex_envelope(const SampledFunction& f, const OneSidedLimits& lim) {
  detail::require_finite(f.values, "quasiconvex_envelope");
  detail::check_limits(f, lim);
  const std::size_t n = f.size();
  std::vector<double> low(n), before(n), after(n), out(n);
  for (std::size_t i = 0; i < n; ++i) low[i] = std::min({f[i], lim.left[i], lim.right[i]});
  double acc = kInf;
  for (std::size_t k = 0; k < n; ++k) {
    before[k] = std::min(acc, lim.left[k]);
    acc = std::min(acc, low[k]);
  }
  acc = kInf;
  for (std::size_t k = n; k-- > 0;) {
    after[k] = std::min(acc, lim.right[k]);
    acc = std::min(acc, low[k]);
  }
  for (std::size_t k = 0; k < n; ++k) out[k] = std::min(f[k], std::max(before[k], after[k]));
  return SampledFunction(f.grid, std::move(out));
}

// Envelope for `kind` given one-sided limits of the sampled function.
inline SampledFunction apply_envelope(const SampledFunction& f, EnvelopeKind kind, const OneSidedLimits& lim) {
  switch (kind) {
    case EnvelopeKind::lsc: return lsc_envelope(f, lim);
    case EnvelopeKind::convex: return convex_envelope(f, lim);
    case EnvelopeKind::convex_closed: return convex_envelope(lsc_envelope(f, lim));
    case EnvelopeKind::quasiconvex: return quasiconvex_envelope(f, lim);
    case EnvelopeKind::quasiconvex_closed: return quasiconvex_envelope(lsc_envelope(f, lim));
  }
  throw UsageError("unknown envelope kind");
}

// Applies the envelope for `kind` to samples alone. Closed and non-closed
// kinds coincide by value on a finite grid.
inline SampledFunction apply_envelope(const SampledFunction& f, EnvelopeKind kind) {
  switch (kind) {
    case EnvelopeKind::lsc: return lsc_envelope(f);
    case EnvelopeKind::convex:
    case EnvelopeKind::convex_closed: return convex_envelope(f);
    case EnvelopeKind::quasiconvex:
    case EnvelopeKind::quasiconvex_closed: return quasiconvex_envelope(f);
  }
  throw UsageError("unknown envelope kind");
}

// Brute-force envelopes used as independent test witnesses. O(n^3).
inline SampledFunction envelope_oracle(const SampledFunction& f, EnvelopeKind kind) {
  detail::require_finite(f.values, "envelope_oracle");
  const std::size_t n = f.size();
  std::vector<double> out(n);
  if (kind == EnvelopeKind::convex || kind == EnvelopeKind::convex_closed) {
    for (std::size_t k = 0; k < n; ++k) {
      double best = f[k];
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = k + 1; j < n; ++j) {
          const double t = static_cast<double>(k - i) / static_cast<double>(j - i);
          best = std::min(best, (1.0 - t) * f[i] + t * f[j]);
        }
      out[k] = best;
    }
  } else if (kind == EnvelopeKind::quasiconvex || kind == EnvelopeKind::quasiconvex_closed) {
    std::vector<double> levels(f.values);
    std::sort(levels.begin(), levels.end());
    for (std::size_t k = 0; k < n; ++k) {
      for (double lambda : levels) {
        bool below_left = false, below_right = false;
        for (std::size_t i = 0; i <= k; ++i) below_left = below_left || f[i] <= lambda;
        for (std::size_t j = k; j < n; ++j) below_right = below_right || f[j] <= lambda;
        if (below_left && below_right) {
          out[k] = lambda;
          break;
        }
      }
    }
  } else {
    throw UsageError("envelope_oracle supports only convex and quasiconvex kinds");
  }
  return SampledFunction(f.grid, std::move(out));
}

// Supporting line of the convex envelope at grid index `at`; picks the
// least-norm slope of the discrete subdifferential.
inline AffineMinorant affine_minorant(const SampledFunction& f, std::size_t at) {
  detail::require_finite(f.values, "affine_minorant");
  if (f.size() < 2) throw DomainError("affine_minorant needs at least two grid points");
  if (at >= f.size()) throw DomainError("affine_minorant index out of range");
  const auto env = convex_envelope(f);
  const auto hull = detail::lower_hull(env.values);
  const double h = f.grid.spacing();
  auto slope_between = [&](std::size_t a, std::size_t c) {
    return (env[c] - env[a]) / (static_cast<double>(c - a) * h);
  };
  double lo = -kInf, hi = kInf;
  const auto pos = std::lower_bound(hull.begin(), hull.end(), at);
  if (pos != hull.end() && *pos == at) {
    if (pos != hull.begin()) lo = slope_between(*(pos - 1), at);
    if (pos + 1 != hull.end()) hi = slope_between(at, *(pos + 1));
  } else {
    lo = hi = slope_between(*(pos - 1), *pos);
  }
  const double slope = std::clamp(0.0, lo, hi);
  return AffineMinorant{slope, env[at] - slope * f.grid[at]};
}

enum class Shape { convex, quasiconvex, semistrictly_quasiconvex };

inline Verdict shape_check(const SampledFunction& f, Shape shape, Tolerances tol = {}) {
  detail::require_finite(f.values, "shape_check");
  const std::size_t n = f.size();
  if (shape == Shape::convex) {
    for (std::size_t k = 1; k + 1 < n; ++k) {
      const double d2 = f[k - 1] - 2.0 * f[k] + f[k + 1];
      if (d2 < -tol.tol)
        return Verdict::fail(Witness{}.at("i", k - 1).at("k", k).at("j", k + 1).with("second_difference", d2), tol);
    }
    return Verdict::pass(tol);
  }
  // Quasiconvexity fails at k exactly when both sides hold a smaller value;
  // report the nearest such pair.
  for (std::size_t k = 1; k + 1 < n; ++k) {
    std::optional<std::size_t> left, right;
    for (std::size_t i = k; i-- > 0;)
      if (f[i] < f[k] - tol.tol) { left = i; break; }
    if (!left) continue;
    for (std::size_t j = k + 1; j < n; ++j)
      if (f[j] < f[k] - tol.tol) { right = j; break; }
    if (right)
      return Verdict::fail(Witness{}.at("i", *left).at("k", k).at("j", *right)
                               .with("f_i", f[*left]).with("f_k", f[k]).with("f_j", f[*right]),
                           tol);
  }
  if (shape == Shape::quasiconvex) return Verdict::pass(tol);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (!(f[i] < f[j] - tol.tol)) continue;
      const std::size_t lo = std::min(i, j), hi = std::max(i, j);
      for (std::size_t k = lo + 1; k < hi; ++k)
        if (!(f[k] < f[j] - tol.tol_strict))
          return Verdict::fail(Witness{}.at("i", i).at("k", k).at("j", j)
                                   .with("f_i", f[i]).with("f_k", f[k]).with("f_j", f[j]),
                               tol);
    }
  return Verdict::pass(tol);
}

}  // namespace bireg
