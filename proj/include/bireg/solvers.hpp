#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "bireg/bifunction.hpp"
#include "bireg/properties.hpp"

namespace bireg {

struct SolutionSet {
  Grid grid;
  std::vector<std::size_t> indices;
  double tol = 1e-9;

  bool empty() const noexcept { return indices.empty(); }
  std::size_t size() const noexcept { return indices.size(); }
  bool contains(std::size_t i) const { return std::binary_search(indices.begin(), indices.end(), i); }

  std::vector<double> points() const {
    std::vector<double> out;
    out.reserve(indices.size());
    for (auto i : indices) out.push_back(grid[i]);
    return out;
  }

  bool subset_of(const SolutionSet& other) const {
    return std::includes(other.indices.begin(), other.indices.end(), indices.begin(), indices.end());
  }
  bool operator==(const SolutionSet& o) const { return indices == o.indices; }
};

// EP: x with f(x,y) >= 0 for all y.
inline SolutionSet solve_ep(const ValueTable& f, double tol = 1e-9) {
  SolutionSet out{f.grid(), {}, tol};
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto r = f.row(i);
    if (*std::min_element(r.begin(), r.end()) >= -tol) out.indices.push_back(i);
  }
  return out;
}

// CFP: x with f(y,x) <= 0 for all y, or only for y in the ball B(x, r) when
// a radius is given.
inline SolutionSet solve_cfp(const ValueTable& f, double tol = 1e-9, std::optional<double> radius = std::nullopt) {
  if (radius && !(*radius > 0.0)) throw UsageError("local CFP radius must be positive");
  const Grid& g = f.grid();
  SolutionSet out{g, {}, tol};
  for (std::size_t j = 0; j < f.size(); ++j) {
    bool ok = true;
    for (std::size_t i = 0; i < f.size() && ok; ++i) {
      if (radius && std::abs(g[i] - g[j]) > *radius + 1e-12) continue;
      ok = f(i, j) <= tol;
    }
    if (ok) out.indices.push_back(j);
  }
  return out;
}

struct KyFanPoint {
  std::size_t index = 0;
  double floor = 0.0;          // min_y f(x*, y)
  double diagonal_min = 0.0;   // min_w f(w, w)
  bool verdict = false;        // floor >= diagonal_min - tol
};

// Grid point maximizing inf_y f(x, y); lowest index wins ties.
inline KyFanPoint ky_fan_point(const ValueTable& f, double tol = 1e-9) {
  KyFanPoint out;
  out.floor = -std::numeric_limits<double>::infinity();
  out.diagonal_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto r = f.row(i);
    const double m = *std::min_element(r.begin(), r.end());
    if (m > out.floor) {
      out.floor = m;
      out.index = i;
    }
    out.diagonal_min = std::min(out.diagonal_min, f(i, i));
  }
  out.verdict = out.floor >= out.diagonal_min - tol;
  return out;
}

}  // namespace bireg
