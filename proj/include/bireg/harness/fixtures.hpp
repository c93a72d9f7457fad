#pragma once

// Worked examples shipped as fixtures. Each fixture runs the full chain
// (sample, regularize, check properties, solve) and compares the results
// with its stored expectations.
//
// Bifunctions built from indicators of the rationals cannot be sampled on a
// floating-point grid; for those only the stated regularizations (constant
// tables) are stored.

#include <chrono>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "bireg/bifunction.hpp"
#include "bireg/existence.hpp"
#include "bireg/harness/report.hpp"
#include "bireg/properties.hpp"
#include "bireg/solvers.hpp"

namespace bireg::harness {

struct BuiltinSpec {
  std::string name;
  Interval domain;
  std::string expression;
  std::string summary;
};

inline const std::vector<BuiltinSpec>& builtin_specs() {
  static const std::vector<BuiltinSpec> specs = {
      {"spike", {0.0, 1.0}, "if x == 1 and y == 0: 1; if x == 0 and y == 1: 1; else: 0",
       "1 at (1,0) and (0,1), 0 elsewhere; not monotone, regularizations vanish"},
      {"cfp-endpoints", {0.0, 1.0}, "if y < 1: y; else: 0", "y on [0,1), 0 at y=1; CFP = {0,1}"},
      {"sq-example", {0.0, 2.0}, "if y == 1: 0; else: y - 2", "y-2 with the value 0 at y=1"},
      {"f1", {-kInf, kInf}, "y^3 - x", "in Q but not in C"},
      {"f2", {-kInf, kInf}, "if y == 0: 0; else: -ln(abs(y))", "in S but not in Qbar"},
      {"one-over-y", {0.0, kInf}, "if y == 0: 0; else: 1 / y", "0 at y=0, 1/y elsewhere"},
      {"r1-quasiconvex", {0.0, 2.0}, "if y < x: 0; if x == 1 and y == 1: 1; if x == 1: y - 1; else: x - y",
       "row x=1 is not quasiconvex but its regularization is"},
      {"y-minus-x", {0.0, kInf}, "y - x", "EP = {0} on [0, inf)"},
      {"x-minus-y", {0.0, kInf}, "x - y", "EP on every truncation is its right end"},
  };
  return specs;
}

inline BifunctionSpec builtin_spec(const std::string& name) {
  for (const auto& s : builtin_specs())
    if (s.name == name) return BifunctionSpec(s.name, s.domain, s.expression);
  std::string known;
  for (const auto& s : builtin_specs()) known += (known.empty() ? "" : ", ") + s.name;
  throw UsageError("unknown builtin '" + name + "' (known: " + known + ")");
}

struct ExampleFixture {
  std::string name;
  std::string summary;
  std::function<void(SuiteReport&)> run;
};

namespace detail {

inline bool all_within(const ValueTable& t, double target, double tol) {
  for (double v : t.values())
    if (std::abs(v - target) > tol) return false;
  return true;
}

inline std::vector<std::size_t> all_indices(std::size_t n) {
  std::vector<std::size_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

inline json indices_json(const SolutionSet& s) { return to_json(s); }

inline void cfp_endpoints(SuiteReport& r) {
  const auto spec = builtin_spec("cfp-endpoints");
  const Grid g(0.0, 1.0, 201);
  const auto f = sample_matrix(spec, g);
  const auto cfp = solve_cfp(f);
  r.add("CFP(f) = {0, 1}", cfp.indices == std::vector<std::size_t>{0, 200}).counterexample = indices_json(cfp);
  const auto fc = regularize(f, EnvelopeKind::convex_closed, &spec);
  r.add("f_cbar = 0 within 1e-9", all_within(fc, 0.0, 1e-9));
  const auto cfp_c = solve_cfp(fc);
  r.add("CFP(f_cbar) = all grid points", cfp_c.indices == all_indices(201));
  r.add("CFP(f) subset of CFP(f_cbar)", cfp.subset_of(cfp_c));
}

inline void sq_example(SuiteReport& r) {
  const auto spec = builtin_spec("sq-example");
  const Grid g(0.0, 2.0, 201);
  const auto f = sample_matrix(spec, g);
  const auto fq = regularize(f, EnvelopeKind::quasiconvex, &spec);
  bool exact = true, semistrict = true;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) exact = exact && fq(i, j) == g[j] - 2.0;
    semistrict = semistrict && shape_check(fq.row_function(i), Shape::semistrictly_quasiconvex).passed;
  }
  r.add("f_q(x,y) = y - 2 exactly", exact);
  r.add("f_q rows semistrictly quasiconvex", semistrict);
  const auto one = *g.index_of(1.0);
  const auto beta = check_segment_condition(f, SegmentCondition::beta);
  const bool beta_ok = !beta.passed && beta.witness->index("x_t") == one;
  r.add("beta fails with x_t = 1", beta_ok).counterexample = to_json(beta, g);
  const auto alpha = check_segment_condition(f, SegmentCondition::alpha);
  const bool alpha_ok = !alpha.passed && alpha.witness->index("y_t") == one;
  r.add("alpha fails with y_t = 1", alpha_ok).counterexample = to_json(alpha, g);
  r.add("raw rows are not quasiconvex", !shape_check(f.row_function(0), Shape::quasiconvex).passed);
}

inline void spike(SuiteReport& r) {
  const auto spec = builtin_spec("spike");
  const Grid g(0.0, 1.0, 201);
  const auto f = sample_matrix(spec, g);
  const auto mono = check_monotonicity(f, Monotonicity::monotone);
  const bool witness_ok = !mono.passed && g[mono.witness->index("x")] == 1.0 && g[mono.witness->index("y")] == 0.0;
  r.add("f not monotone, witness (1, 0)", witness_ok).counterexample = to_json(mono, g);
  for (auto kind : {EnvelopeKind::lsc, EnvelopeKind::convex_closed, EnvelopeKind::quasiconvex_closed}) {
    const auto reg = regularize(f, kind, &spec);
    const std::string k(to_string(kind));
    r.add("f_" + k + " = 0", all_within(reg, 0.0, 0.0));
    r.add("f_" + k + " monotone", check_monotonicity(reg, Monotonicity::monotone).passed);
  }
}

inline void example_1(SuiteReport& r) {
  const TruncationSchedule sched({-kInf, kInf}, 0.125, 1, 8);
  const std::vector<double> probes{0.0};
  ClassifyOptions opt;
  opt.divergence_bound = 1e3;
  const auto f1 = classify_families(builtin_spec("f1"), sched, probes, opt);
  r.add("f1 in Q", f1[Family::Q].verdict == Membership::member);
  r.add("f1 not in C", f1[Family::C].verdict == Membership::not_member);
  const auto f2 = classify_families(builtin_spec("f2"), sched, probes, opt);
  r.add("f2 in S", f2[Family::S].verdict == Membership::member);
  r.add("f2 not in Qbar", f2[Family::Qbar].verdict == Membership::not_member);
}

inline void one_over_y(SuiteReport& r) {
  const auto spec = builtin_spec("one-over-y");
  const TruncationSchedule sched(spec.domain(), 0.125, 1, 5);
  bool close = true;
  for (int n = sched.n_min(); n <= sched.n_max(); ++n) {
    const auto tg = sched.truncation(n);
    const auto fq = regularize(sample_matrix(spec, tg.grid), EnvelopeKind::quasiconvex, &spec);
    for (double v : fq.values()) close = close && std::abs(v) <= 1.0 / n + 1e-12;
  }
  r.add("f_q within 1/n of 0 on K_n", close);
  const auto res = existence_pipeline(spec, sched, PipelineVariant::C3);
  r.add("C3 pipeline finds a solution", res.found,
        res.found ? "x = " + format_number(*res.point) + " at level " + std::to_string(*res.level) : "exhausted");
  const auto fine = sample_matrix(spec, sched.truncation(sched.n_max()).grid);
  r.add("EP(f, K_5) nonempty", !solve_ep(fine).empty());
  const auto zero = ValueTable::constant(fine.grid(), 0.0);
  r.add("zero table (stated f_q) has the upper sign property", check_upper_sign(zero).passed);
}

inline void r1_quasiconvex(SuiteReport& r) {
  const auto spec = builtin_spec("r1-quasiconvex");
  const Grid g(0.0, 2.0, 201);
  const auto f = sample_matrix(spec, g);
  const auto ep = solve_ep(f);
  // Row x=1 is nonnegative as well, so both 1 and 2 solve EP.
  const std::vector<std::size_t> expected{*g.index_of(1.0), *g.index_of(2.0)};
  r.add("EP(f) = {1, 2}", ep.indices == expected).counterexample = to_json(ep);
  const auto fq = regularize(f, EnvelopeKind::quasiconvex, &spec);
  r.add("EP(f_q) = EP(f)", solve_ep(fq) == ep);
  const auto fqbar = regularize(f, EnvelopeKind::quasiconvex_closed, &spec);
  bool diag = true;
  for (std::size_t i = 0; i < g.size(); ++i) diag = diag && std::abs(fqbar(i, i)) <= 1e-9;
  r.add("f_qbar(x,x) = 0", diag);
  const auto kf = ky_fan_point(fqbar);
  r.add("Ky Fan floor on f_qbar", kf.verdict, "x* = " + format_number(g[kf.index]));
  r.add("raw row x=1 not quasiconvex", !shape_check(f.row_function(*g.index_of(1.0)), Shape::quasiconvex).passed);
}

// Upper-sign example with rational/irrational indicators: only its stated
// regularization values (0 on rational x, -1 elsewhere) are representable.
inline void rational_upper_sign(SuiteReport& r) {
  const Grid g(0.0, 1.0, 21);
  r.add("positive bifunction has the upper sign property", check_upper_sign(ValueTable::constant(g, 1.0)).passed);
  r.add("regularization value 0 table has the upper sign property",
        check_upper_sign(ValueTable::constant(g, 0.0)).passed);
  const auto neg = check_upper_sign(ValueTable::constant(g, -1.0));
  r.add("regularization value -1 table lacks the upper sign property", !neg.passed).counterexample = to_json(neg, g);
}

// Example on K = R whose lsc regularization is stated to be 0.
inline void rational_dense(SuiteReport& r) {
  const Grid g(-2.0, 2.0, 33);
  const auto fs = ValueTable::constant(g, 0.0);
  r.add("f_s properly quasimonotone", check_properly_quasimonotone(fs).passed);
  r.add("f_s upper sign", check_upper_sign(fs).passed);
  r.add("CFP_local(f_s) = K", solve_cfp(fs, 1e-9, g.spacing()).indices == all_indices(g.size()));
  r.add("EP(f_s) = K", solve_ep(fs).indices == all_indices(g.size()));
}

}  // namespace detail

inline const std::vector<ExampleFixture>& example_registry() {
  static const std::vector<ExampleFixture> reg = {
      {"cfp-endpoints", "CFP of f and of its convex regularization differ", detail::cfp_endpoints},
      {"sq-example", "SQ bifunction violating the segment conditions", detail::sq_example},
      {"spike", "non-monotone bifunction with monotone regularizations", detail::spike},
      {"example-1", "strict family inclusions on K = R", detail::example_1},
      {"one-over-y", "EP existence through the C3 truncation pipeline", detail::one_over_y},
      {"r1-quasiconvex", "EP via the quasiconvex regularization on [0,2]", detail::r1_quasiconvex},
      {"rational-upper-sign", "upper sign lost by regularization (stated constants)", detail::rational_upper_sign},
      {"rational-dense", "lsc regularization identically 0 (stated constant)", detail::rational_dense},
  };
  return reg;
}

inline SuiteReport run_example(const std::string& name) {
  for (const auto& fx : example_registry()) {
    if (fx.name != name) continue;
    SuiteReport r;
    r.command = "example " + name;
    r.inputs = {{"example", name}};
    const auto t0 = std::chrono::steady_clock::now();
    fx.run(r);
    r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }
  std::string known;
  for (const auto& fx : example_registry()) known += (known.empty() ? "" : ", ") + fx.name;
  throw UsageError("unknown example '" + name + "' (known: " + known + ")");
}

}  // namespace bireg::harness
