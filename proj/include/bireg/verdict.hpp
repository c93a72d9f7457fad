#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bireg/error.hpp"

namespace bireg {

// Non-strict comparisons (a <= 0, a >= 0) use tol; strict ones (a < 0,
// a > 0) use tol_strict.
struct Tolerances {
  double tol = 1e-9;
  double tol_strict = 1e-12;

  bool nonpositive(double v) const noexcept { return v <= tol; }
  bool nonnegative(double v) const noexcept { return v >= -tol; }
  bool negative(double v) const noexcept { return v < -tol_strict; }
  bool positive(double v) const noexcept { return v > tol_strict; }
};

// Counterexample: role-tagged grid indices plus the values that violate the
// defining inequality.
struct Witness {
  struct Point {
    std::string role;
    std::size_t index;
  };
  struct Value {
    std::string label;
    double value;
  };

  std::vector<Point> points;
  std::vector<Value> values;

  Witness& at(std::string role, std::size_t index) {
    points.push_back({std::move(role), index});
    return *this;
  }
  Witness& with(std::string label, double value) {
    values.push_back({std::move(label), value});
    return *this;
  }

  std::size_t index(const std::string& role) const {
    for (const auto& p : points)
      if (p.role == role) return p.index;
    throw UsageError("witness has no point with role '" + role + "'");
  }
  bool has(const std::string& role) const {
    for (const auto& p : points)
      if (p.role == role) return true;
    return false;
  }
};

struct Verdict {
  bool passed = true;
  std::optional<Witness> witness;
  Tolerances tolerances;

  static Verdict pass(Tolerances t) { return Verdict{true, std::nullopt, t}; }
  static Verdict fail(Witness w, Tolerances t) { return Verdict{false, std::move(w), t}; }

  explicit operator bool() const noexcept { return passed; }
};

}  // namespace bireg
