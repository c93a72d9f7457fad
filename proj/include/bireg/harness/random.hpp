#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "bireg/bifunction.hpp"
#include "bireg/properties.hpp"

namespace bireg::harness {

// mt19937_64 with hand-rolled mappings so instances are identical across
// standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool coin(double p = 0.5) { return uniform() < p; }

  // Value in [-1, 1]; half of the draws snap to multiples of 1/8 so ties and
  // exact zeros occur often.
  double value() {
    const double v = uniform(-1.0, 1.0);
    return coin() ? std::round(v * 8.0) / 8.0 : v;
  }

 private:
  std::mt19937_64 engine_;
};

enum class InstanceClass { unrestricted, monotone, pseudomonotone, quasimonotone, properly_quasimonotone, sq };

inline std::string_view to_string(InstanceClass c) {
  switch (c) {
    case InstanceClass::unrestricted: return "unrestricted";
    case InstanceClass::monotone: return "monotone";
    case InstanceClass::pseudomonotone: return "pseudomonotone";
    case InstanceClass::quasimonotone: return "quasimonotone";
    case InstanceClass::properly_quasimonotone: return "properly_quasimonotone";
    case InstanceClass::sq: return "sq";
  }
  return "?";
}

inline InstanceClass parse_instance_class(std::string_view s) {
  for (auto c : {InstanceClass::unrestricted, InstanceClass::monotone, InstanceClass::pseudomonotone,
                 InstanceClass::quasimonotone, InstanceClass::properly_quasimonotone, InstanceClass::sq})
    if (to_string(c) == s) return c;
  throw UsageError("unknown instance class '" + std::string(s) + "'");
}

namespace detail {

// Strictly increasing sequence starting near -1.
inline std::vector<double> increasing(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  double acc = rng.uniform(-1.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = acc;
    acc += rng.uniform(0.05, 0.5);
  }
  return v;
}

inline ValueTable unrestricted(Rng& rng, const Grid& g) {
  const std::size_t n = g.size();
  std::vector<double> v(n * n);
  for (auto& e : v) e = rng.value();
  return ValueTable(g, std::move(v));
}

// g(y) - g(x) - d(x,y) with d >= 0 symmetric and zero on the diagonal.
inline ValueTable monotone(Rng& rng, const Grid& g) {
  const std::size_t n = g.size();
  std::vector<double> pot(n);
  for (auto& p : pot) p = rng.value();
  ValueTable t = ValueTable::constant(g, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const double d = i == j ? 0.0 : (rng.coin(0.3) ? 0.0 : rng.uniform(0.0, 1.0));
      t(i, j) = pot[j] - pot[i] - d;
      t(j, i) = pot[i] - pot[j] - d;
    }
  return t;
}

// a(x) * (phi(y) - phi(x)) with a > 0 and phi strictly increasing.
inline ValueTable pseudomonotone(Rng& rng, const Grid& g) {
  const std::size_t n = g.size();
  const auto phi = increasing(rng, n);
  ValueTable t = ValueTable::constant(g, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double a = rng.uniform(0.1, 2.0);
    for (std::size_t j = 0; j < n; ++j) t(i, j) = a * (phi[j] - phi[i]);
  }
  return t;
}

// Random table repaired toward quasimonotonicity: whenever both f(x,y) and
// f(y,x) are positive one of them is flipped.
inline ValueTable quasimonotone_candidate(Rng& rng, const Grid& g) {
  ValueTable t = unrestricted(rng, g);
  for (std::size_t i = 0; i < t.size(); ++i) {
    t(i, i) = -std::abs(t(i, i));
    for (std::size_t j = 0; j < i; ++j)
      if (t(i, j) > 0.0 && t(j, i) > 0.0) {
        if (rng.coin()) t(i, j) = -t(i, j);
        else t(j, i) = -t(j, i);
      }
  }
  return t;
}

// Column k may carry positive entries on one side of k only.
inline ValueTable properly_quasimonotone_candidate(Rng& rng, const Grid& g) {
  ValueTable t = unrestricted(rng, g);
  const std::size_t n = t.size();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t side = rng.below(3);  // 0: positives left, 1: right, 2: none
    for (std::size_t i = 0; i < n; ++i) {
      const bool allowed = (side == 0 && i < k) || (side == 1 && i > k);
      if (!allowed) t(i, k) = -std::abs(t(i, k));
    }
  }
  return t;
}

// Rows strictly decreasing to a random minimum and strictly increasing after
// it: semistrictly quasiconvex, unchanged by quasiconvexification.
inline ValueTable sq(Rng& rng, const Grid& g) {
  const std::size_t n = g.size();
  ValueTable t = ValueTable::constant(g, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t m = rng.below(n);
    const double base = rng.uniform(-1.0, 0.5);
    t(i, m) = base;
    double acc = base;
    for (std::size_t j = m; j-- > 0;) t(i, j) = (acc += rng.uniform(0.05, 0.5));
    acc = base;
    for (std::size_t j = m + 1; j < n; ++j) t(i, j) = (acc += rng.uniform(0.05, 0.5));
  }
  return t;
}

}  // namespace detail

// Deterministic instance of the given class on `grid`. Classes without a
// direct construction are generated by repair and then verified against
// their checker, retrying up to `retries` times.
inline ValueTable random_bifunction(InstanceClass cls, std::uint64_t seed, const Grid& grid, int retries = 100) {
  Rng rng(seed);
  switch (cls) {
    case InstanceClass::unrestricted: return detail::unrestricted(rng, grid);
    case InstanceClass::monotone: return detail::monotone(rng, grid);
    case InstanceClass::pseudomonotone: return detail::pseudomonotone(rng, grid);
    case InstanceClass::sq: return detail::sq(rng, grid);
    case InstanceClass::quasimonotone:
      for (int attempt = 0; attempt < retries; ++attempt) {
        auto t = detail::quasimonotone_candidate(rng, grid);
        if (check_monotonicity(t, Monotonicity::quasimonotone)) return t;
      }
      break;
    case InstanceClass::properly_quasimonotone:
      for (int attempt = 0; attempt < retries; ++attempt) {
        auto t = detail::properly_quasimonotone_candidate(rng, grid);
        if (check_properly_quasimonotone(t)) return t;
      }
      break;
  }
  throw GenerationError("could not generate a " + std::string(to_string(cls)) + " instance for seed " +
                        std::to_string(seed));
}

}  // namespace bireg::harness
