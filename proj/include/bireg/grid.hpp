#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "bireg/error.hpp"

namespace bireg {

// Value space of sampled functions: IEEE doubles, with +inf marking points
// outside a function's domain and -inf reserved for divergence reports.
using ExtendedReal = double;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline bool is_finite(ExtendedReal v) noexcept { return std::isfinite(v); }

// Closed interval of the real line; either end may be infinite.
struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  bool bounded() const noexcept { return std::isfinite(lower) && std::isfinite(upper); }
  bool bounded_below() const noexcept { return std::isfinite(lower); }
  bool bounded_above() const noexcept { return std::isfinite(upper); }

  bool contains(double x, double slack = 0.0) const noexcept {
    return x >= lower - slack && x <= upper + slack;
  }
};

// Uniform grid x_i = lower + i*h, i = 0..count-1.
class Grid {
 public:
  Grid() : Grid(0.0, 0.0, 1) {}
  Grid(double lower, double upper, std::size_t count) : lower_(lower), upper_(upper), count_(count) {
    if (!std::isfinite(lower) || !std::isfinite(upper))
      throw ConfigError("grid bounds must be finite");
    if (lower > upper) throw ConfigError("grid lower bound exceeds upper bound");
    if (count == 0) throw ConfigError("grid needs at least one point");
    if (lower < upper && count < 2) throw ConfigError("non-degenerate grid needs at least two points");
    if (lower == upper && count != 1) throw ConfigError("degenerate grid must have exactly one point");
    spacing_ = count > 1 ? (upper - lower) / static_cast<double>(count - 1) : 0.0;
  }

  double lower() const noexcept { return lower_; }
  double upper() const noexcept { return upper_; }
  std::size_t size() const noexcept { return count_; }
  double spacing() const noexcept { return spacing_; }

  double operator[](std::size_t i) const noexcept {
    // Pin the last point so upper is reproduced exactly.
    if (i + 1 == count_) return upper_;
    return lower_ + static_cast<double>(i) * spacing_;
  }

  std::vector<double> points() const {
    std::vector<double> out(count_);
    for (std::size_t i = 0; i < count_; ++i) out[i] = (*this)[i];
    return out;
  }

  // Index of the grid point within `slack` of x, if any.
  std::optional<std::size_t> index_of(double x, double slack = 1e-9) const {
    if (count_ == 1) {
      if (std::abs(x - lower_) <= slack) return 0;
      return std::nullopt;
    }
    const double pos = (x - lower_) / spacing_;
    const double r = std::round(pos);
    if (r < 0.0 || r > static_cast<double>(count_ - 1)) return std::nullopt;
    const auto i = static_cast<std::size_t>(r);
    if (std::abs((*this)[i] - x) <= slack) return i;
    return std::nullopt;
  }

 private:
  double lower_;
  double upper_;
  std::size_t count_;
  double spacing_ = 0.0;
};

inline Grid make_grid(double lower, double upper, std::size_t count) { return Grid(lower, upper, count); }

// Grid over K_n = K ∩ [-n, n] together with the interior flags |x| < n.
struct TruncatedGrid {
  int level = 0;
  Grid grid;
  std::vector<bool> interior;

  // Interior is decided as |x| <= n - h/2 so that the strict inequality is
  // robust to rounding of lattice points.
  static bool is_interior(double x, int level, double spacing) {
    return std::abs(x) <= static_cast<double>(level) - spacing / 2.0;
  }
};

// Nested truncations K_n of an interval K on a fixed-spacing lattice.
//
// The lattice is anchored at K's finite lower end, else its finite upper end,
// else at 0, so that every K_n grid is a sub-lattice of K_{n+1}'s.
class TruncationSchedule {
 public:
  TruncationSchedule(Interval domain, double spacing, int n_min, int n_max)
      : domain_(domain), spacing_(spacing), n_min_(n_min), n_max_(n_max) {
    if (!(spacing > 0.0) || !std::isfinite(spacing)) throw ConfigError("schedule spacing must be positive");
    if (n_min < 1 || n_max < n_min) throw ConfigError("schedule needs 1 <= n_min <= n_max");
    if (domain.lower > domain.upper) throw ConfigError("domain lower bound exceeds upper bound");
    if (domain.lower > static_cast<double>(n_min) || domain.upper < -static_cast<double>(n_min))
      throw DomainError("truncation K_" + std::to_string(n_min) + " is empty");
  }

  const Interval& domain() const noexcept { return domain_; }
  double spacing() const noexcept { return spacing_; }
  int n_min() const noexcept { return n_min_; }
  int n_max() const noexcept { return n_max_; }
  int levels() const noexcept { return n_max_ - n_min_ + 1; }

  double anchor() const noexcept {
    if (domain_.bounded_below()) return domain_.lower;
    if (domain_.bounded_above()) return domain_.upper;
    return 0.0;
  }

  // Lattice grid over [max(K.lower, -r), min(K.upper, r)] for any radius r.
  Grid lattice_grid(double radius) const {
    const double lo = std::max(domain_.lower, -radius);
    const double hi = std::min(domain_.upper, radius);
    if (lo > hi) throw DomainError("truncation is empty");
    const double a = anchor();
    constexpr double eps = 1e-9;
    const double k_lo = std::ceil((lo - a) / spacing_ - eps);
    const double k_hi = std::floor((hi - a) / spacing_ + eps);
    if (k_lo > k_hi) throw DomainError("truncation contains no lattice point");
    const double g_lo = a + k_lo * spacing_;
    const double g_hi = a + k_hi * spacing_;
    return Grid(g_lo, g_hi, static_cast<std::size_t>(k_hi - k_lo) + 1);
  }

  TruncatedGrid truncation(int n) const {
    if (n < n_min_ || n > n_max_) throw UsageError("truncation level outside schedule");
    Grid g = lattice_grid(static_cast<double>(n));
    std::vector<bool> interior(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) interior[i] = TruncatedGrid::is_interior(g[i], n, spacing_);
    return TruncatedGrid{n, g, std::move(interior)};
  }

 private:
  Interval domain_;
  double spacing_;
  int n_min_;
  int n_max_;
};

inline TruncatedGrid truncation_grid(const TruncationSchedule& schedule, int n) { return schedule.truncation(n); }

}  // namespace bireg
