#pragma once

// Randomized property suites. Instance k of a suite is generated from seed
// base + k, so a failing check names the seed that replays it.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bireg/bifunction.hpp"
#include "bireg/envelope.hpp"
#include "bireg/existence.hpp"
#include "bireg/harness/fixtures.hpp"
#include "bireg/harness/random.hpp"
#include "bireg/harness/report.hpp"
#include "bireg/properties.hpp"
#include "bireg/solvers.hpp"

namespace bireg::harness {

struct SuiteConfig {
  std::string name = "all";
  std::size_t instances = 500;
  std::uint64_t seed = 1;
};

namespace detail {

// Accumulates one named check over many instances.
class Tally {
 public:
  Tally(SuiteReport& report, std::string name) : report_(report) {
    index_ = report_.checks.size();
    report_.checks.push_back(Check{std::move(name), true, {}, 0, 0, std::nullopt, nullptr});
  }

  // Records one instance; the first failure keeps its seed and counterexample.
  void record(bool ok, std::uint64_t seed, const std::function<json()>& counterexample = {}) {
    Check& c = report_.checks[index_];
    ++c.instances;
    if (ok) return;
    ++c.failures;
    if (c.passed) {
      c.passed = false;
      c.seed = seed;
      if (counterexample) c.counterexample = counterexample();
    }
  }

  void detail(std::string text) { report_.checks[index_].detail = std::move(text); }

 private:
  SuiteReport& report_;
  std::size_t index_ = 0;
};

inline json table_case(const ValueTable& t) { return to_json(t); }

inline json samples_json(const SampledFunction& f) {
  json v = json::array();
  for (double x : f.values) v.push_back(clean(x));
  return {{"grid", to_json(f.grid)}, {"values", v}};
}

inline double max_abs_diff(const SampledFunction& a, const SampledFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline ValueTable subtract_nonnegative(const ValueTable& f, Rng& rng) {
  ValueTable g = f;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      if (rng.coin(0.5)) g(i, j) -= std::abs(rng.value());
  return g;
}

// Raises every entry whose upper-sign premise holds but whose conclusion
// fails. Raising entries only removes premises, so one pass suffices.
inline ValueTable repair_upper_sign(ValueTable f, UpperSignScope scope = UpperSignScope::global(), double tol = 1e-9) {
  const std::size_t n = f.size();
  const ValueTable orig = f;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (scope.radius && std::abs(f.grid()[i] - f.grid()[j]) > *scope.radius + 1e-12) continue;
      bool premise = true;
      if (i == j) premise = orig(i, i) <= tol;
      const std::size_t lo = std::min(i, j), hi = std::max(i, j);
      for (std::size_t k = lo + 1; k < hi && premise; ++k) premise = orig(k, i) <= tol;
      if (premise && f(i, j) < -tol) f(i, j) = -f(i, j);
    }
  return f;
}

inline const std::vector<EnvelopeKind>& all_kinds() {
  static const std::vector<EnvelopeKind> k = {EnvelopeKind::lsc, EnvelopeKind::convex, EnvelopeKind::quasiconvex,
                                              EnvelopeKind::convex_closed, EnvelopeKind::quasiconvex_closed};
  return k;
}

// ---------------------------------------------------------------------------

inline void envelope_oracles(SuiteReport& r, const SuiteConfig& cfg) {
  Tally convex(r, "convex envelope equals chord oracle within 1e-12");
  Tally quasi(r, "quasiconvex envelope equals level-set oracle within 1e-12");
  Tally idem(r, "envelopes are exactly idempotent");
  Tally order(r, "convex <= quasiconvex <= f");
  Tally shapes(r, "envelopes pass their shape checks");
  Tally minorant(r, "affine minorant supports the convex envelope");
  for (std::size_t k = 0; k < cfg.instances; ++k) {
    const std::uint64_t seed = cfg.seed + k;
    Rng rng(seed);
    const std::size_t n = 2 + rng.below(63);
    std::vector<double> v(n);
    for (auto& e : v) e = rng.value();
    const SampledFunction f(Grid(0.0, 1.0, n), v);
    const auto c = convex_envelope(f);
    const auto q = quasiconvex_envelope(f);
    const auto ce = [&] { return json{{"f", samples_json(f)}, {"convex", samples_json(c)}, {"quasiconvex", samples_json(q)}}; };
    convex.record(max_abs_diff(c, envelope_oracle(f, EnvelopeKind::convex)) <= 1e-12, seed, ce);
    quasi.record(max_abs_diff(q, envelope_oracle(f, EnvelopeKind::quasiconvex)) <= 1e-12, seed, ce);
    idem.record(convex_envelope(c).values == c.values && quasiconvex_envelope(q).values == q.values, seed, ce);
    bool ordered = true;
    for (std::size_t i = 0; i < n; ++i) ordered = ordered && c[i] <= q[i] && q[i] <= f[i];
    order.record(ordered, seed, ce);
    shapes.record(shape_check(c, Shape::convex).passed && shape_check(q, Shape::quasiconvex).passed, seed, ce);
    const std::size_t at = rng.below(n);
    const auto m = affine_minorant(f, at);
    bool supports = std::abs(m.slope * f.grid[at] + m.intercept - c[at]) <= 1e-12;
    for (std::size_t i = 0; i < n; ++i) supports = supports && m.slope * f.grid[i] + m.intercept <= f[i] + 1e-12;
    minorant.record(supports, seed, ce);
  }
}

// Every convex function below f lies below the convex envelope; every
// quasiconvex one below the quasiconvex envelope.
inline void greatest_minorant(SuiteReport& r, const SuiteConfig& cfg) {
  Tally convex(r, "convex minorants lie below the convex envelope");
  Tally quasi(r, "quasiconvex minorants lie below the quasiconvex envelope");
  for (std::size_t k = 0; k < cfg.instances; ++k) {
    const std::uint64_t seed = cfg.seed + k;
    Rng rng(seed);
    const std::size_t n = 2 + rng.below(40);
    const Grid g(0.0, 1.0, n);
    std::vector<double> v(n);
    for (auto& e : v) e = rng.value();
    const SampledFunction f(g, v);
    // Max of affine functions, shifted down until it is a minorant.
    std::vector<double> cm(n, -kInf);
    for (int a = 0; a < 3; ++a) {
      const double s = rng.uniform(-3.0, 3.0), b = rng.uniform(-1.0, 1.0);
      for (std::size_t i = 0; i < n; ++i) cm[i] = std::max(cm[i], s * g[i] + b);
    }
    double shift = 0.0;
    for (std::size_t i = 0; i < n; ++i) shift = std::max(shift, cm[i] - f[i]);
    for (auto& e : cm) e -= shift;
    const auto c = convex_envelope(f);
    bool below = true;
    for (std::size_t i = 0; i < n; ++i) below = below && cm[i] <= c[i] + 1e-12;
    convex.record(below, seed, [&] { return samples_json(f); });
    // Prefix minima up to a random split, suffix minima after it, lowered
    // by a random amount: nonincreasing then nondecreasing, below f.
    const std::size_t split = rng.below(n);
    const double drop = std::abs(rng.value());
    std::vector<double> qm(n);
    double acc = kInf;
    for (std::size_t i = 0; i <= split; ++i) qm[i] = (acc = std::min(acc, f[i])) - drop;
    acc = kInf;
    for (std::size_t i = n; i-- > split + 1;) qm[i] = (acc = std::min(acc, f[i])) - drop;
    const auto q = quasiconvex_envelope(f);
    bool qbelow = shape_check(SampledFunction(g, qm), Shape::quasiconvex).passed;
    for (std::size_t i = 0; i < n; ++i) qbelow = qbelow && qm[i] <= f[i] && qm[i] <= q[i];
    quasi.record(qbelow, seed, [&] { return json{{"f", samples_json(f)}, {"minorant", qm}}; });
  }
}

inline ValueTable ep_table(Rng& rng, const Grid& g) {
  ValueTable t = random_bifunction(InstanceClass::unrestricted, rng.below(1u << 30), g);
  // Make some rows nonnegative so EP is often nonempty.
  for (std::size_t i = 0; i < t.size(); ++i)
    if (rng.coin(0.2))
      for (std::size_t j = 0; j < t.size(); ++j) t(i, j) = std::abs(t(i, j));
  return t;
}

inline void regularization_equality(SuiteReport& r, const SuiteConfig& cfg) {
  std::vector<Tally> tallies;
  for (auto kind : {EnvelopeKind::lsc, EnvelopeKind::convex, EnvelopeKind::quasiconvex})
    tallies.emplace_back(r, "EP(f_" + std::string(to_string(kind)) + ") = EP(f)");
  const Grid g(0.0, 1.0, 21);
  std::size_t nonempty = 0;
  for (std::size_t k = 0; k < cfg.instances; ++k) {
    const std::uint64_t seed = cfg.seed + k;
    Rng rng(seed);
    const ValueTable t = ep_table(rng, g);
    const auto ep = solve_ep(t);
    if (!ep.empty()) ++nonempty;
    std::size_t idx = 0;
    for (auto kind : {EnvelopeKind::lsc, EnvelopeKind::convex, EnvelopeKind::quasiconvex}) {
      const auto reg = solve_ep(regularize(t, kind));
      tallies[idx++].record(reg == ep, seed, [&] { return json{{"table", table_case(t)}, {"ep", to_json(ep)}, {"ep_regularized", to_json(reg)}}; });
    }
  }
  tallies[0].detail(std::to_string(nonempty) + " instances with nonempty EP");
}

inline const std::vector<std::pair<InstanceClass, std::function<Verdict(const ValueTable&)>>>& class_checkers() {
  static const std::vector<std::pair<InstanceClass, std::function<Verdict(const ValueTable&)>>> c = {
      {InstanceClass::monotone, [](const ValueTable& t) { return check_monotonicity(t, Monotonicity::monotone); }},
      {InstanceClass::pseudomonotone, [](const ValueTable& t) { return check_monotonicity(t, Monotonicity::pseudomonotone); }},
      {InstanceClass::quasimonotone, [](const ValueTable& t) { return check_monotonicity(t, Monotonicity::quasimonotone); }},
      {InstanceClass::properly_quasimonotone, [](const ValueTable& t) { return check_properly_quasimonotone(t); }},
  };
  return c;
}

inline void monotonicity_preservation(SuiteReport& r, const SuiteConfig& cfg) {
  const Grid g(0.0, 1.0, 11);
  for (const auto& [cls, check] : class_checkers()) {
    Tally base(r, std::string(to_string(cls)) + " instances pass their checker");
    Tally kept(r, std::string(to_string(cls)) + " preserved by every regularization");
    for (std::size_t k = 0; k < cfg.instances; ++k) {
      const std::uint64_t seed = cfg.seed + k;
      const ValueTable t = random_bifunction(cls, seed, g);
      base.record(check(t).passed, seed, [&] { return table_case(t); });
      for (auto kind : all_kinds()) {
        const auto reg = regularize(t, kind);
        const Verdict v = check(reg);
        kept.record(v.passed, seed, [&] {
          return json{{"kind", to_string(kind)}, {"table", table_case(t)}, {"verdict", to_json(v, g)}};
        });
      }
    }
  }
}

inline void hierarchy(SuiteReport& r, const SuiteConfig& cfg) {
  Tally mp(r, "monotone implies pseudomonotone");
  Tally pq(r, "pseudomonotone implies quasimonotone");
  Tally diag(r, "any passing class implies f(x,x) <= tol");
  const Grid g(0.0, 1.0, 11);
  const InstanceClass classes[] = {InstanceClass::unrestricted, InstanceClass::monotone, InstanceClass::pseudomonotone,
                                   InstanceClass::quasimonotone, InstanceClass::properly_quasimonotone, InstanceClass::sq};
  for (std::size_t k = 0; k < cfg.instances; ++k) {
    const std::uint64_t seed = cfg.seed + k;
    for (auto cls : classes) {
      const ValueTable t = random_bifunction(cls, seed, g);
      const bool m = check_monotonicity(t, Monotonicity::monotone).passed;
      const bool p = check_monotonicity(t, Monotonicity::pseudomonotone).passed;
      const bool q = check_monotonicity(t, Monotonicity::quasimonotone).passed;
      const bool pq_ = check_properly_quasimonotone(t).passed;
      mp.record(!m || p, seed, [&] { return table_case(t); });
      pq.record(!p || q, seed, [&] { return table_case(t); });
      bool d = true;
      for (std::size_t i = 0; i < t.size(); ++i) d = d && t(i, i) <= 1e-9;
      diag.record(!(m || p || q || pq_) || d, seed, [&] { return table_case(t); });
    }
  }
}

inline void pair_subset_agreement(SuiteReport& r, const SuiteConfig& cfg) {
  Tally agree(r, "pair and subset methods agree on grids up to 8 points");
  for (std::size_t k = 0; k < cfg.instances; ++k) {
    const std::uint64_t seed = cfg.seed + k;
    Rng rng(seed);
    const Grid g(0.0, 1.0, 2 + rng.below(7));
    const auto cls = rng.coin() ? InstanceClass::unrestricted : InstanceClass::properly_quasimonotone;
    const ValueTable t = random_bifunction(cls, seed, g);
    const auto a = check_properly_quasimonotone(t, ProperMethod::pair);
    const auto b = check_properly_quasimonotone(t, ProperMethod::subset);
    agree.record(a.passed == b.passed, seed, [&] { return table_case(t); });
  }
}

inline void downward_closure(SuiteReport& r, const SuiteConfig& cfg) {
  const Grid g(0.0, 1.0, 9);
  for (const auto& [cls, check] : class_checkers()) {
    Tally closed(r, std::string(to_string(cls)) + " is kept under F - D, D >= 0");
    for (std::size_t k = 0; k < cfg.instances; ++k) {
      const std::uint64_t seed = cfg.seed + k;
      Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
      const ValueTable f = random_bifunction(cls, seed, g);
      const ValueTable lowered = subtract_nonnegative(f, rng);
      closed.record(!check(f).passed || check(lowered).passed, seed,
                    [&] { return json{{"f", table_case(f)}, {"f_minus_d", table_case(lowered)}}; });
    }
  }
}

inline void upper_sign_transfer(SuiteReport& r, const SuiteConfig& cfg) {
  Tally lemma(r, "upper sign of G carries over to F >= G");
  Tally theorem(r, "upper sign of a regularization carries over to f");
  const Grid g(0.0, 1.0, 11);
  std::size_t premises = 0;
  for (std::size_t k = 0; k < cfg.instances; ++k) {
    const std::uint64_t seed = cfg.seed + k;
    Rng rng(seed);
    const ValueTable base = random_bifunction(InstanceClass::unrestricted, seed, g);
    const ValueTable lower = repair_upper_sign(base);
    ValueTable upper = lower;
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j)
        if (rng.coin()) upper(i, j) += std::abs(rng.value());
    lemma.record(!check_upper_sign(lower).passed || check_upper_sign(upper).passed, seed,
                 [&] { return json{{"g", table_case(lower)}, {"f", table_case(upper)}}; });
    // Tables with convex rows and the upper sign property make the premise
    // hold for every kind; repaired random tables cover the generic case.
    ValueTable f = rng.coin() ? repair_upper_sign(regularize(base, EnvelopeKind::convex)) : lower;
    for (auto kind : all_kinds()) {
      const auto reg = regularize(f, kind);
      if (!check_upper_sign(reg).passed) continue;
      ++premises;
      const Verdict v = check_upper_sign(f);
      theorem.record(v.passed, seed, [&] {
        return json{{"kind", to_string(kind)}, {"f", table_case(f)}, {"verdict", to_json(v, g)}};
      });
    }
  }
  theorem.detail(std::to_string(premises) + " (instance, kind) pairs with the premise");
}

// Makes column `star` nonpositive so that star solves CFP, and keeps it so
// under repair_upper_sign: the row of star is made nonnegative, neighbours
// get f(x, star) = 0, and every other negative f(x, star) loses its premise
// through a positive entry f(x_t, x) next to x.
inline ValueTable plant_cfp_point(ValueTable t, std::size_t star) {
  const std::size_t n = t.size();
  for (std::size_t j = 0; j < n; ++j) t(star, j) = std::abs(t(star, j));
  for (std::size_t i = 0; i < n; ++i) {
    t(i, star) = -std::abs(t(i, star));
    const std::size_t gap = i > star ? i - star : star - i;
    if (gap == 1) t(i, star) = 0.0;
    if (gap > 1 && t(i, star) < 0.0) {
      const std::size_t k = i > star ? i - 1 : i + 1;
      t(k, i) = std::abs(t(k, i)) + 0.125;
    }
  }
  t(star, star) = 0.0;
  return t;
}

inline void cfp_subset_ep(SuiteReport& r, const SuiteConfig& cfg) {
  Tally global(r, "upper sign implies CFP subset of EP");
  Tally local(r, "local upper sign and beta imply local CFP subset of EP");
  const Grid g(0.0, 1.0, 11);
  std::size_t nonempty = 0, local_premises = 0;
  for (std::size_t k = 0; k < cfg.instances; ++k) {
    const std::uint64_t seed = cfg.seed + k;
    Rng rng(seed);
    const ValueTable t = random_bifunction(InstanceClass::unrestricted, seed, g);
    const ValueTable f = repair_upper_sign(rng.coin() ? plant_cfp_point(t, rng.below(g.size())) : t);
    if (check_upper_sign(f).passed) {
      const auto cfp = solve_cfp(f);
      if (!cfp.empty()) ++nonempty;
      global.record(cfp.subset_of(solve_ep(f)), seed, [&] { return table_case(f); });
    }
    for (int m = 1; m <= 3; ++m) {
      const double radius = m * g.spacing();
      const auto scope = UpperSignScope::local(radius);
      const ValueTable lf = repair_upper_sign(t, scope);
      if (!check_upper_sign(lf, scope).passed || !check_segment_condition(lf, SegmentCondition::beta).passed) continue;
      ++local_premises;
      const auto cfp = solve_cfp(lf, 1e-9, radius);
      local.record(cfp.subset_of(solve_ep(lf)), seed,
                   [&] { return json{{"radius", radius}, {"table", table_case(lf)}}; });
    }
  }
  global.detail(std::to_string(nonempty) + " instances with nonempty CFP");
  local.detail(std::to_string(local_premises) + " (instance, radius) pairs with both premises");
}

inline void inclusion_lemma(SuiteReport& r, const SuiteConfig& cfg) {
  Tally ep(r, "EP(F - D) subset of EP(F)");
  Tally cfp(r, "CFP(F) subset of CFP(F - D)");
  const Grid g(0.0, 1.0, 11);
  for (std::size_t k = 0; k < cfg.instances; ++k) {
    const std::uint64_t seed = cfg.seed + k;
    Rng rng(seed);
    const ValueTable f = ep_table(rng, g);
    const ValueTable lowered = subtract_nonnegative(f, rng);
    const auto ce = [&] { return json{{"f", table_case(f)}, {"f_minus_d", table_case(lowered)}}; };
    ep.record(solve_ep(lowered).subset_of(solve_ep(f)), seed, ce);
    cfp.record(solve_cfp(f).subset_of(solve_cfp(lowered)), seed, ce);
  }
}

inline void coercivity_chain(SuiteReport& r, const SuiteConfig&) {
  Tally chain(r, "C1 implies C2 implies C3 on unbounded fixtures");
  Tally exhausted(r, "x - y on [0, inf) exhausts the C2 pipeline with C2 diagnostics");
  std::uint64_t id = 0;
  for (const auto& b : builtin_specs()) {
    if (b.domain.bounded()) continue;
    const auto spec = builtin_spec(b.name);
    const TruncationSchedule sched(spec.domain(), 0.125, 1, 8);
    for (std::optional<EnvelopeKind> kind :
         {std::optional<EnvelopeKind>{}, std::optional(EnvelopeKind::quasiconvex),
          std::optional(EnvelopeKind::quasiconvex_closed)}) {
      const bool c1 = check_coercivity(spec, sched, Coercivity::C1, kind).passed();
      const bool c2 = check_coercivity(spec, sched, Coercivity::C2, kind).passed();
      const bool c3 = check_coercivity(spec, sched, Coercivity::C3, kind).passed();
      chain.record((!c1 || c2) && (!c2 || c3), id++, [&] {
        return json{{"spec", b.name}, {"kind", kind ? std::string(to_string(*kind)) : "none"},
                    {"C1", c1}, {"C2", c2}, {"C3", c3}};
      });
    }
  }
  const auto spec = builtin_spec("x-minus-y");
  const auto res = existence_pipeline(spec, TruncationSchedule(spec.domain(), 0.125, 1, 8), PipelineVariant::C2);
  const bool has_c2 = std::any_of(res.diagnostics.begin(), res.diagnostics.end(),
                                  [](const std::string& d) { return d.find("C2 fails") != std::string::npos; });
  exhausted.record(!res.found && has_c2, 0, [&] { return json{{"diagnostics", res.diagnostics}}; });
}

// Upper sign of f_q versus its diagonal on tables whose regularized rows are
// semistrictly quasiconvex. On a grid only the "only if" direction holds in
// general: adjacent pairs have no interior point to carry the premise.
inline void sq_diagonal(SuiteReport& r, const SuiteConfig& cfg) {
  Tally only_if(r, "upper sign of f_q implies f_q(x,x) >= -tol");
  Tally if_rows(r, "f_q(x,x) >= -tol implies upper sign on row-constant tables");
  Tally counter(r, "adjacent-pair counterexample to the converse on a 2-point grid");
  const Grid g(0.0, 1.0, 11);
  for (std::size_t k = 0; k < cfg.instances; ++k) {
    const std::uint64_t seed = cfg.seed + k;
    Rng rng(seed);
    const ValueTable fq = regularize(random_bifunction(InstanceClass::sq, seed, g), EnvelopeKind::quasiconvex);
    bool diag = true;
    for (std::size_t i = 0; i < fq.size(); ++i) diag = diag && fq(i, i) >= -1e-9;
    only_if.record(!check_upper_sign(fq).passed || diag, seed, [&] { return table_case(fq); });
    ValueTable rows = ValueTable::constant(g, 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double c = rng.value();
      for (std::size_t j = 0; j < g.size(); ++j) rows(i, j) = c;
    }
    bool rdiag = true;
    for (std::size_t i = 0; i < g.size(); ++i) rdiag = rdiag && rows(i, i) >= -1e-9;
    if_rows.record(!rdiag || check_upper_sign(rows).passed, seed, [&] { return table_case(rows); });
  }
  const ValueTable t(Grid(0.0, 1.0, 2), {0.0, -1.0, -1.0, 0.0});
  const bool reproduced = shape_check(t.row_function(0), Shape::semistrictly_quasiconvex).passed &&
                          shape_check(t.row_function(1), Shape::semistrictly_quasiconvex).passed &&
                          !check_upper_sign(t).passed;
  counter.record(reproduced, 0, [&] { return table_case(t); });
}

inline void ky_fan(SuiteReport& r, const SuiteConfig& cfg) {
  Tally agree(r, "Ky Fan point maximizes the row minimum");
  Tally floor(r, "quasiconvex rows: row minimum at the Ky Fan point >= min diagonal");
  for (std::size_t k = 0; k < cfg.instances; ++k) {
    const std::uint64_t seed = cfg.seed + k;
    Rng rng(seed);
    const Grid g(0.0, 1.0, 2 + rng.below(20));
    const ValueTable t = random_bifunction(rng.coin() ? InstanceClass::sq : InstanceClass::unrestricted, seed, g);
    const auto kf = ky_fan_point(t);
    double best = -kInf;
    std::size_t arg = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      double m = kInf;
      for (std::size_t j = 0; j < t.size(); ++j) m = std::min(m, t(i, j));
      if (m > best) best = m, arg = i;
    }
    agree.record(kf.index == arg && kf.floor == best, seed, [&] { return table_case(t); });
    const ValueTable q = regularize(t, EnvelopeKind::quasiconvex);
    const auto kq = ky_fan_point(q);
    floor.record(kq.verdict, seed, [&] { return table_case(q); });
  }
}

// Properly quasimonotone tables on grids of 2..11 points should have a
// nonempty CFP. Coarse grids lack the interior points the continuous
// argument uses, so failures here are discretization effects.
inline void properly_qm_existence(SuiteReport& r, const SuiteConfig& cfg) {
  Tally exists(r, "properly quasimonotone implies CFP nonempty");
  for (std::size_t k = 0; k < cfg.instances; ++k) {
    const std::uint64_t seed = cfg.seed + k;
    Rng rng(seed);
    const Grid g(0.0, 1.0, 2 + rng.below(10));
    const ValueTable t = random_bifunction(InstanceClass::properly_quasimonotone, seed, g);
    exists.record(!solve_cfp(t).empty(), seed, [&] { return table_case(t); });
  }
}

struct SuiteEntry {
  std::string name;
  std::string summary;
  std::function<void(SuiteReport&, const SuiteConfig&)> run;
};

}  // namespace detail

inline const std::vector<detail::SuiteEntry>& suite_registry() {
  static const std::vector<detail::SuiteEntry> reg = {
      {"envelope-oracles", "fast envelopes against brute-force oracles", detail::envelope_oracles},
      {"greatest-minorant", "envelopes dominate every minorant of their shape", detail::greatest_minorant},
      {"regularization-equality", "EP is unchanged by regularization", detail::regularization_equality},
      {"monotonicity-preservation", "regularization keeps the monotonicity class", detail::monotonicity_preservation},
      {"hierarchy", "implications between monotonicity classes", detail::hierarchy},
      {"pair-subset-agreement", "properly quasimonotone checkers agree", detail::pair_subset_agreement},
      {"downward-closure", "monotonicity classes are closed under lowering", detail::downward_closure},
      {"upper-sign-transfer", "upper sign passes from below to above", detail::upper_sign_transfer},
      {"cfp-subset-ep", "CFP inside EP under upper sign", detail::cfp_subset_ep},
      {"inclusion-lemma", "solution sets of a lowered bifunction", detail::inclusion_lemma},
      {"coercivity-chain", "C1 => C2 => C3 on unbounded fixtures", detail::coercivity_chain},
      {"sq-diagonal", "upper sign of f_q versus its diagonal", detail::sq_diagonal},
      {"ky-fan", "Ky Fan point against enumeration and its floor", detail::ky_fan},
      {"properly-qm-existence", "CFP of properly quasimonotone tables", detail::properly_qm_existence},
  };
  return reg;
}

// Runs one suite, or every suite for "all". Per-instance seeds are
// cfg.seed + k for k < cfg.instances.
inline SuiteReport run_suite(const SuiteConfig& cfg) {
  SuiteReport r;
  r.command = "suite " + cfg.name;
  r.inputs = {{"suite", cfg.name}, {"instances", cfg.instances}, {"seed", cfg.seed}};
  r.seeds = {cfg.seed};
  const auto t0 = std::chrono::steady_clock::now();
  bool matched = false;
  for (const auto& s : suite_registry()) {
    if (cfg.name != "all" && cfg.name != s.name) continue;
    matched = true;
    const std::size_t first = r.checks.size();
    s.run(r, cfg);
    if (cfg.name == "all")
      for (std::size_t i = first; i < r.checks.size(); ++i) r.checks[i].name = s.name + ": " + r.checks[i].name;
  }
  if (!matched) {
    std::string known = "all";
    for (const auto& s : suite_registry()) known += ", " + s.name;
    throw UsageError("unknown suite '" + cfg.name + "' (known: " + known + ")");
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace bireg::harness
