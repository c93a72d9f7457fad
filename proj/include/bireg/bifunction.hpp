#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "bireg/envelope.hpp"
#include "bireg/error.hpp"
#include "bireg/expr.hpp"
#include "bireg/grid.hpp"

namespace bireg {

// A bifunction f: K x K -> R given by a piecewise expression.
class BifunctionSpec {
 public:
  BifunctionSpec(std::string name, Interval domain, std::string expression)
      : name_(std::move(name)),
        domain_(domain),
        expression_(std::move(expression)),
        program_(std::make_shared<const expr::Program>(expr::parse(expression_))) {
    if (domain_.lower > domain_.upper) throw ConfigError("bifunction domain is empty");
  }

  const std::string& name() const noexcept { return name_; }
  const Interval& domain() const noexcept { return domain_; }
  const std::string& expression() const noexcept { return expression_; }

  double eval(double x, double y) const {
    constexpr double slack = 1e-9;
    if (!domain_.contains(x, slack) || !domain_.contains(y, slack))
      throw EvaluationError("argument outside domain of '" + name_ + "'", x, y);
    const double v = (*program_)(x, y);
    if (!std::isfinite(v))
      throw EvaluationError("non-finite value of '" + name_ + "' at (" + std::to_string(x) + ", " +
                                std::to_string(y) + ")",
                            x, y);
    return v;
  }

  double operator()(double x, double y) const { return eval(x, y); }

  // One-sided limits in y of f(x, .) at the grid points. The branch taken
  // just beside y_j is continued to y_j itself, which is exact for
  // expressions continuous within each branch; where that yields NaN the
  // numeric probe extrapolation is used instead.
  OneSidedLimits row_limits(double x, const Grid& grid, LscOptions opt = {}) const {
    const std::size_t n = grid.size();
    OneSidedLimits out{std::vector<double>(n, kInf), std::vector<double>(n, kInf)};
    const double delta = grid.spacing() * 0x1.0p-20;
    std::optional<OneSidedLimits> numeric;
    for (std::size_t j = 0; j < n; ++j) {
      const double y = grid[j];
      for (int side : {-1, +1}) {
        if ((side < 0 && j == 0) || (side > 0 && j + 1 == n)) continue;
        const std::size_t b = program_->branch_at(x, y + side * delta);
        double v = program_->evaluate_branch(b, x, y);
        if (std::isnan(v)) {
          if (!numeric) numeric = probe_limits([&](double t) { return (*program_)(x, t); }, grid, opt);
          v = side < 0 ? numeric->left[j] : numeric->right[j];
        }
        (side < 0 ? out.left : out.right)[j] = v;
      }
    }
    return out;
  }

 private:
  std::string name_;
  Interval domain_;
  std::string expression_;
  std::shared_ptr<const expr::Program> program_;
};

inline BifunctionSpec parse_spec(std::string_view text, Interval domain = {-kInf, kInf},
                                 std::string name = "anonymous") {
  return BifunctionSpec(std::move(name), domain, std::string(text));
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline double parse_bound(const std::string& tok) {
  if (tok == "inf" || tok == "+inf") return kInf;
  if (tok == "-inf") return -kInf;
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw ConfigError("bad domain bound '" + tok + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ConfigError("bad domain bound '" + tok + "'");
  }
}

}  // namespace detail

// Spec files are "key = value" lines with keys name, domain and expression;
// '#' starts a comment line. Example:
//
//   name = one-over-y
//   domain = 0 inf
//   expression = if y == 0: 0; else: 1 / y
inline BifunctionSpec parse_spec_file_text(std::string_view text) {
  std::optional<std::string> name, domain, expression;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ConfigError("spec file line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = detail::trim(std::string_view(t).substr(0, eq));
    const std::string value = detail::trim(std::string_view(t).substr(eq + 1));
    if (key == "name") name = value;
    else if (key == "domain") domain = value;
    else if (key == "expression") expression = value;
    else throw ConfigError("spec file line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  if (!expression) throw ConfigError("spec file has no expression");
  Interval k{-kInf, kInf};
  if (domain) {
    std::istringstream ds(*domain);
    std::string a, b, extra;
    if (!(ds >> a >> b) || (ds >> extra)) throw ConfigError("domain needs exactly two bounds");
    k = Interval{detail::parse_bound(a), detail::parse_bound(b)};
  }
  return BifunctionSpec(name.value_or("anonymous"), k, *expression);
}

inline BifunctionSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open spec file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec_file_text(buf.str());
}

// Square table F[i][j] = f(x_i, x_j) over a grid.
class ValueTable {
 public:
  ValueTable(Grid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size() * grid_.size()) throw ConfigError("value table is not square over its grid");
  }

  static ValueTable constant(Grid grid, double c) {
    return ValueTable(grid, std::vector<double>(grid.size() * grid.size(), c));
  }

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return grid_.size(); }

  double operator()(std::size_t i, std::size_t j) const noexcept { return values_[i * grid_.size() + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return values_[i * grid_.size() + j]; }

  std::span<const double> row(std::size_t i) const noexcept {
    return std::span<const double>(values_).subspan(i * grid_.size(), grid_.size());
  }
  std::span<const double> values() const noexcept { return values_; }

  SampledFunction row_function(std::size_t i) const {
    const auto r = row(i);
    return SampledFunction(grid_, std::vector<double>(r.begin(), r.end()));
  }

  bool operator==(const ValueTable& o) const {
    return grid_.size() == o.grid_.size() && grid_.lower() == o.grid_.lower() &&
           grid_.upper() == o.grid_.upper() && values_ == o.values_;
  }

 private:
  Grid grid_;
  std::vector<double> values_;
};

inline ValueTable sample_matrix(const BifunctionSpec& spec, const Grid& grid) {
  const std::size_t n = grid.size();
  std::vector<double> v(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      try {
        v[i * n + j] = spec.eval(grid[i], grid[j]);
      } catch (const EvaluationError& e) {
        throw EvaluationError(std::string(e.what()) + " [table entry (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ")]",
                              grid[i], grid[j]);
      }
    }
  return ValueTable(grid, std::move(v));
}

// Replaces each row f(x_i, .) by its envelope. With the source spec, one-sided
// limits at the grid points enter the envelope (this is what separates the
// closed kinds from the plain ones); without it the samples are taken as
// they are.
inline ValueTable regularize(const ValueTable& table, EnvelopeKind kind, const BifunctionSpec* source = nullptr,
                             LscOptions lsc = {}) {
  const Grid& g = table.grid();
  const std::size_t n = g.size();
  std::vector<double> out(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    SampledFunction row = table.row_function(i);
    if (source) row = apply_envelope(row, kind, source->row_limits(g[i], g, lsc));
    else if (kind != EnvelopeKind::lsc) row = apply_envelope(row, kind);
    std::copy(row.values.begin(), row.values.end(), out.begin() + static_cast<std::ptrdiff_t>(i * n));
  }
  return ValueTable(g, std::move(out));
}

// ---------------------------------------------------------------------------
// Family membership over truncations.

enum class Family { C, Q, Cbar, Qbar, S, SQ };
enum class Membership { member, not_member, member_on_compact_truncations };

inline std::string_view to_string(Family f) {
  switch (f) {
    case Family::C: return "C";
    case Family::Q: return "Q";
    case Family::Cbar: return "Cbar";
    case Family::Qbar: return "Qbar";
    case Family::S: return "S";
    case Family::SQ: return "SQ";
  }
  return "?";
}

inline std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::member: return "member";
    case Membership::not_member: return "not-member";
    case Membership::member_on_compact_truncations: return "member-on-compact-truncations";
  }
  return "?";
}

struct ProbeTrajectory {
  double probe = 0.0;
  std::vector<int> levels;
  std::vector<double> values;
  Membership verdict = Membership::member;
};

struct FamilyEntry {
  Family family = Family::C;
  Membership verdict = Membership::member;
  std::vector<ProbeTrajectory> trajectories;
  std::string note;
};

struct FamilyReport {
  std::vector<FamilyEntry> entries;

  const FamilyEntry& operator[](Family f) const {
    for (const auto& e : entries)
      if (e.family == f) return e;
    throw UsageError("family missing from report");
  }
  FamilyEntry& operator[](Family f) {
    for (auto& e : entries)
      if (e.family == f) return e;
    throw UsageError("family missing from report");
  }
};

struct ClassifyOptions {
  double divergence_bound = 1e3;
  double tol = 1e-9;
  // A strictly decreasing trajectory whose level-weighted decrements n*d_n
  // stay above this fraction of the first one decays no faster than the
  // harmonic series and is reported as divergent.
  double harmonic_ratio = 0.5;
  LscOptions lsc{};
};

// Decides one trajectory: stable -> member; strictly decreasing past -M, or
// at a non-summable rate -> not-member; anything else stays inconclusive.
inline Membership judge_trajectory(std::span<const int> levels, std::span<const double> v, const ClassifyOptions& opt) {
  const std::size_t m = v.size();
  if (m < 2) return Membership::member;
  if (std::abs(v[m - 1] - v[m - 2]) < opt.tol) return Membership::member;
  bool decreasing = true;
  for (std::size_t k = 1; k < m; ++k) decreasing = decreasing && (v[k - 1] - v[k] > opt.tol);
  if (!decreasing) return Membership::member_on_compact_truncations;
  if (v[m - 1] < -opt.divergence_bound) return Membership::not_member;
  if (m >= 3) {
    const double first = static_cast<double>(levels[1]) * (v[0] - v[1]);
    const double last = static_cast<double>(levels[m - 1]) * (v[m - 2] - v[m - 1]);
    if (last >= opt.harmonic_ratio * first) return Membership::not_member;
  }
  return Membership::member_on_compact_truncations;
}

namespace detail {

inline SampledFunction regularized_row(const BifunctionSpec& spec, double x, const Grid& g, EnvelopeKind kind,
                                       const LscOptions& lsc) {
  std::vector<double> raw(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) raw[j] = spec.eval(x, g[j]);
  return apply_envelope(SampledFunction(g, std::move(raw)), kind, spec.row_limits(x, g, lsc));
}

inline EnvelopeKind family_kind(Family f) {
  switch (f) {
    case Family::C: return EnvelopeKind::convex;
    case Family::Q:
    case Family::SQ: return EnvelopeKind::quasiconvex;
    case Family::Cbar: return EnvelopeKind::convex_closed;
    case Family::Qbar: return EnvelopeKind::quasiconvex_closed;
    case Family::S: return EnvelopeKind::lsc;
  }
  return EnvelopeKind::lsc;
}

}  // namespace detail

inline FamilyReport classify_families(const BifunctionSpec& spec, const TruncationSchedule& schedule,
                                      std::span<const double> probes, ClassifyOptions opt = {}) {
  if (probes.empty()) throw UsageError("classify_families needs at least one probe");
  for (double p : probes)
    if (!spec.domain().contains(p)) throw UsageError("probe " + std::to_string(p) + " lies outside the domain");

  FamilyReport report;
  for (Family fam : {Family::C, Family::Q, Family::Cbar, Family::Qbar, Family::S}) {
    FamilyEntry entry{fam, Membership::member, {}, {}};
    const EnvelopeKind kind = detail::family_kind(fam);
    bool any_inconclusive = false;
    for (double p : probes) {
      ProbeTrajectory tr;
      tr.probe = p;
      for (int n = schedule.n_min(); n <= schedule.n_max(); ++n) {
        if (std::abs(p) > static_cast<double>(n)) continue;
        const TruncatedGrid tg = schedule.truncation(n);
        const auto at = tg.grid.index_of(p);
        if (!at) throw UsageError("probe " + std::to_string(p) + " is not a lattice point of the schedule");
        const auto row = detail::regularized_row(spec, p, tg.grid, kind, opt.lsc);
        tr.levels.push_back(n);
        tr.values.push_back(row[*at]);
      }
      tr.verdict = judge_trajectory(tr.levels, tr.values, opt);
      if (tr.verdict == Membership::not_member) entry.verdict = Membership::not_member;
      if (tr.verdict == Membership::member_on_compact_truncations) any_inconclusive = true;
      entry.trajectories.push_back(std::move(tr));
    }
    if (entry.verdict != Membership::not_member && any_inconclusive)
      entry.verdict = Membership::member_on_compact_truncations;
    report.entries.push_back(std::move(entry));
  }

  // SQ: Q plus semistrict quasiconvexity of the regularized rows on the
  // finest truncation.
  FamilyEntry sq{Family::SQ, report[Family::Q].verdict, {}, {}};
  if (sq.verdict != Membership::not_member) {
    const TruncatedGrid tg = schedule.truncation(schedule.n_max());
    for (double p : probes) {
      const auto row = detail::regularized_row(spec, p, tg.grid, EnvelopeKind::quasiconvex, opt.lsc);
      const Verdict v = shape_check(row, Shape::semistrictly_quasiconvex, Tolerances{opt.tol, 1e-12});
      if (!v.passed) {
        sq.verdict = Membership::not_member;
        sq.note = "quasiconvex row at x=" + std::to_string(p) + " is not semistrictly quasiconvex";
        break;
      }
    }
  } else {
    sq.note = "implied by Q";
  }
  report.entries.push_back(std::move(sq));

  // Enforce the inclusion chains Cbar in Qbar in S and C in Q.
  auto propagate = [&](Family sub, Family super) {
    auto& a = report[sub];
    auto& b = report[super];
    if (b.verdict == Membership::not_member && a.verdict != Membership::not_member) {
      a.verdict = Membership::not_member;
      a.note = "implied by " + std::string(to_string(super));
    }
    if (a.verdict == Membership::member && b.verdict != Membership::member) {
      b.verdict = Membership::member;
      b.note = "implied by " + std::string(to_string(sub));
    }
  };
  for (int pass = 0; pass < 2; ++pass) {
    propagate(Family::Qbar, Family::S);
    propagate(Family::Cbar, Family::Qbar);
    propagate(Family::C, Family::Q);
  }
  return report;
}

}  // namespace bireg
