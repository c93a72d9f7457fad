// bireg: command-line front end.
//
//   bireg regularize spike --kind cbar --format csv
//   bireg solve-cfp specs/cfp_endpoints.spec
//   bireg suite all --instances 500 --seed 1 --out report.json

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bireg/bireg.hpp"
#include "bireg/harness/fixtures.hpp"
#include "bireg/harness/report.hpp"
#include "bireg/harness/suites.hpp"

namespace {

using namespace bireg;
using bireg::harness::json;

const auto g_start = std::chrono::steady_clock::now();

double elapsed() { return std::chrono::duration<double>(std::chrono::steady_clock::now() - g_start).count(); }

struct Options {
  std::string target;
  std::string grid;
  std::string schedule = "0.125:1:8";
  double tol = 1e-9;
  double tol_strict = 1e-12;
  std::string kind;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  std::string out;
  // verb-specific
  std::string property;
  std::optional<double> radius;
  std::string variant;
  std::string condition;
  std::vector<double> probes;
  std::size_t instances = 500;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double to_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::logic_error&) {
  }
  throw UsageError("bad number '" + s + "' in " + what);
}

Grid parse_grid(const std::string& text) {
  const auto p = split(text, ':');
  if (p.size() != 3) throw UsageError("--grid expects lower:upper:count");
  const double count = to_number(p[2], "--grid");
  if (count < 1 || count != static_cast<double>(static_cast<std::size_t>(count)))
    throw UsageError("--grid count must be a positive integer");
  return Grid(to_number(p[0], "--grid"), to_number(p[1], "--grid"), static_cast<std::size_t>(count));
}

TruncationSchedule parse_schedule(const std::string& text, const Interval& domain) {
  const auto p = split(text, ':');
  if (p.size() != 3) throw UsageError("--schedule expects h:nmin:nmax");
  const auto level = [&](const std::string& s) {
    const double v = to_number(s, "--schedule");
    if (v != static_cast<double>(static_cast<int>(v))) throw UsageError("--schedule levels must be integers");
    return static_cast<int>(v);
  };
  return TruncationSchedule(domain, to_number(p[0], "--schedule"), level(p[1]), level(p[2]));
}

// A path to an existing spec file, else a builtin name.
BifunctionSpec resolve_spec(const std::string& target) {
  if (target.empty()) throw UsageError("missing spec file or builtin name");
  if (std::filesystem::is_regular_file(target)) return load_spec_file(target);
  return harness::builtin_spec(target);
}

// Grid for table-based verbs: --grid, else 201 points over a compact K.
Grid table_grid(const Options& o, const BifunctionSpec& spec) {
  if (!o.grid.empty()) {
    const Grid g = parse_grid(o.grid);
    if (!spec.domain().contains(g.lower(), 1e-9) || !spec.domain().contains(g.upper(), 1e-9))
      throw DomainError("grid [" + harness::format_number(g.lower()) + ", " + harness::format_number(g.upper()) +
                        "] leaves the domain of '" + spec.name() + "'");
    return g;
  }
  if (!spec.domain().bounded()) throw UsageError("domain of '" + spec.name() + "' is unbounded; pass --grid");
  return Grid(spec.domain().lower, spec.domain().upper, 201);
}

Tolerances tolerances(const Options& o) { return Tolerances{o.tol, o.tol_strict}; }

json common_inputs(const Options& o) {
  json in = {{"target", o.target}, {"tol", o.tol}, {"tol_strict", o.tol_strict}, {"format", o.format}};
  if (!o.grid.empty()) in["grid"] = o.grid;
  if (!o.kind.empty()) in["kind"] = o.kind;
  return in;
}

json spec_json(const BifunctionSpec& s) {
  const auto bound = [](double v) { return std::isfinite(v) ? json(harness::clean(v)) : json(v > 0 ? "inf" : "-inf"); };
  return {{"name", s.name()}, {"domain", {bound(s.domain().lower), bound(s.domain().upper)}}, {"expression", s.expression()}};
}

std::vector<std::uint64_t> seeds_of(const Options& o) {
  if (o.seed) return {*o.seed};
  return {};
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) std::cout << text;
  else harness::write_file(o.out, text);
}

void emit_json(const Options& o, const std::string& command, json inputs, json results) {
  if (!results.contains("solution_sets")) results["solution_sets"] = json::object();
  if (!results.contains("verdicts")) results["verdicts"] = json::object();
  emit(o, harness::report_document(command, inputs, results, seeds_of(o), elapsed()).dump(2) + "\n");
}

void require_json(const Options& o, const std::string& verb) {
  if (o.format != "json") throw UsageError("csv output is not available for '" + verb + "'");
}

std::optional<EnvelopeKind> kind_of(const Options& o) {
  if (o.kind.empty()) return std::nullopt;
  return parse_envelope_kind(o.kind);
}

ValueTable input_table(const Options& o, const BifunctionSpec& spec, json& inputs) {
  const Grid g = table_grid(o, spec);
  inputs["grid"] = harness::to_json(g);
  inputs["spec"] = spec_json(spec);
  ValueTable t = sample_matrix(spec, g);
  if (const auto k = kind_of(o)) t = regularize(t, *k, &spec);
  return t;
}

int cmd_regularize(const Options& o) {
  const auto spec = resolve_spec(o.target);
  if (o.kind.empty()) throw UsageError("regularize needs --kind {s|c|q|cbar|qbar}");
  json inputs = common_inputs(o);
  const ValueTable t = input_table(o, spec, inputs);
  if (o.format == "csv") {
    emit(o, harness::to_csv(t));
    return 0;
  }
  emit_json(o, "regularize", inputs, {{"tables", {{o.kind, harness::to_json(t)}}}});
  return 0;
}

int cmd_solve(const Options& o, bool cfp) {
  const auto spec = resolve_spec(o.target);
  json inputs = common_inputs(o);
  const ValueTable t = input_table(o, spec, inputs);
  if (cfp && o.radius) inputs["radius"] = *o.radius;
  const SolutionSet s = cfp ? solve_cfp(t, o.tol, o.radius) : solve_ep(t, o.tol);
  if (o.format == "csv") {
    emit(o, harness::to_csv(s));
    return 0;
  }
  emit_json(o, cfp ? "solve-cfp" : "solve-ep", inputs, {{"solution_sets", {{cfp ? "cfp" : "ep", harness::to_json(s)}}}});
  return 0;
}

int cmd_check(const Options& o) {
  require_json(o, "check");
  const auto spec = resolve_spec(o.target);
  json inputs = common_inputs(o);
  const ValueTable t = input_table(o, spec, inputs);
  const Tolerances tol = tolerances(o);
  const UpperSignScope scope = o.radius ? UpperSignScope::local(*o.radius) : UpperSignScope::global();
  if (o.radius) inputs["radius"] = *o.radius;
  const std::vector<std::pair<std::string, std::function<Verdict()>>> props = {
      {"monotone", [&] { return check_monotonicity(t, Monotonicity::monotone, tol); }},
      {"pseudomonotone", [&] { return check_monotonicity(t, Monotonicity::pseudomonotone, tol); }},
      {"quasimonotone", [&] { return check_monotonicity(t, Monotonicity::quasimonotone, tol); }},
      {"properly-quasimonotone", [&] { return check_properly_quasimonotone(t, ProperMethod::pair, tol); }},
      {"upper-sign", [&] { return check_upper_sign(t, scope, tol); }},
      {"alpha", [&] { return check_segment_condition(t, SegmentCondition::alpha, tol); }},
      {"beta", [&] { return check_segment_condition(t, SegmentCondition::beta, tol); }},
  };
  json verdicts = json::object();
  bool known = o.property.empty();
  for (const auto& [name, run] : props) {
    if (!o.property.empty() && o.property != name) continue;
    known = true;
    verdicts[name] = harness::to_json(run(), t.grid());
  }
  if (!known) {
    std::string names;
    for (const auto& p : props) names += (names.empty() ? "" : ", ") + p.first;
    throw UsageError("unknown property '" + o.property + "' (known: " + names + ")");
  }
  if (!o.property.empty()) inputs["property"] = o.property;
  emit_json(o, "check", inputs, {{"verdicts", verdicts}});
  return 0;
}

int cmd_classify(const Options& o) {
  require_json(o, "classify");
  const auto spec = resolve_spec(o.target);
  const TruncationSchedule sched = parse_schedule(o.schedule, spec.domain());
  json inputs = common_inputs(o);
  inputs["schedule"] = o.schedule;
  inputs["spec"] = spec_json(spec);
  std::vector<double> probes = o.probes;
  if (probes.empty()) probes = sched.truncation(sched.n_min()).grid.points();
  inputs["probes"] = probes;
  ClassifyOptions opt;
  opt.tol = o.tol;
  const auto report = classify_families(spec, sched, probes, opt);
  emit_json(o, "classify", inputs, {{"verdicts", {{"families", harness::to_json(report)}}}});
  return 0;
}

int cmd_coercivity(const Options& o) {
  require_json(o, "coercivity");
  const auto spec = resolve_spec(o.target);
  const TruncationSchedule sched = parse_schedule(o.schedule, spec.domain());
  json inputs = common_inputs(o);
  inputs["schedule"] = o.schedule;
  inputs["spec"] = spec_json(spec);
  json verdicts = json::object();
  for (auto c : {Coercivity::C1, Coercivity::C2, Coercivity::C3}) {
    const std::string name(to_string(c));
    if (!o.condition.empty() && o.condition != name) continue;
    verdicts[name] = harness::to_json(check_coercivity(spec, sched, c, kind_of(o), o.tol));
  }
  if (verdicts.empty()) throw UsageError("unknown coercivity condition '" + o.condition + "' (known: C1, C2, C3)");
  emit_json(o, "coercivity", inputs, {{"verdicts", verdicts}});
  return 0;
}

int cmd_exist(const Options& o) {
  require_json(o, "exist");
  const auto spec = resolve_spec(o.target);
  const TruncationSchedule sched = parse_schedule(o.schedule, spec.domain());
  json inputs = common_inputs(o);
  inputs["schedule"] = o.schedule;
  inputs["spec"] = spec_json(spec);
  json verdicts = json::object();
  json sets = json::object();
  for (auto [name, v] : {std::pair{"C2", PipelineVariant::C2}, std::pair{"C3", PipelineVariant::C3}}) {
    if (!o.variant.empty() && o.variant != name) continue;
    const auto res = existence_pipeline(spec, sched, v, o.tol);
    verdicts[name] = harness::to_json(res);
    json pts = json::array();
    if (res.point) pts.push_back(harness::clean(*res.point));
    sets[name] = {{"points", pts}};
  }
  if (verdicts.empty()) throw UsageError("unknown pipeline variant '" + o.variant + "' (known: C2, C3)");
  emit_json(o, "exist", inputs, {{"solution_sets", sets}, {"verdicts", verdicts}});
  return 0;
}

int emit_suite_report(const Options& o, harness::SuiteReport r) {
  require_json(o, r.command);
  for (const auto& c : r.checks)
    std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << " (" << c.failures << "/" << c.instances << ")\n";
  // Wall time goes into the timestamp block only.
  emit(o, harness::report_document(r).dump(2) + "\n");
  return r.passed() ? 0 : 1;
}

int cmd_example(const Options& o) {
  if (o.target.empty() || o.target == "list") {
    for (const auto& fx : harness::example_registry()) std::cout << fx.name << "  " << fx.summary << "\n";
    return 0;
  }
  return emit_suite_report(o, harness::run_example(o.target));
}

int cmd_suite(const Options& o) {
  if (o.target == "list") {
    for (const auto& s : harness::suite_registry()) std::cout << s.name << "  " << s.summary << "\n";
    return 0;
  }
  harness::SuiteConfig cfg;
  cfg.name = o.target.empty() ? "all" : o.target;
  cfg.instances = o.instances;
  cfg.seed = o.seed.value_or(1);
  return emit_suite_report(o, harness::run_suite(cfg));
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--tol", o.tol, "Tolerance for non-strict inequalities")->capture_default_str();
  sub->add_option("--tol-strict", o.tol_strict, "Tolerance for strict inequalities")->capture_default_str();
  sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  sub->add_option("--seed", o.seed, "Base seed");
  sub->add_option("--out", o.out, "Write the report to PATH instead of stdout");
}

void add_table_flags(CLI::App* sub, Options& o) {
  sub->add_option("target", o.target, "Spec file or builtin name")->required();
  sub->add_option("--grid", o.grid, "lower:upper:count");
  sub->add_option("--kind", o.kind, "Regularization applied before the operation")
      ->check(CLI::IsMember({"s", "c", "q", "cbar", "qbar"}));
}

void add_schedule_flags(CLI::App* sub, Options& o) {
  sub->add_option("target", o.target, "Spec file or builtin name")->required();
  sub->add_option("--schedule", o.schedule, "h:nmin:nmax")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularizations, equilibrium and feasibility problems for bifunctions on intervals"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(harness::kToolVersion));
  Options o;

  auto* reg = app.add_subcommand("regularize", "Sample a bifunction and regularize its rows");
  add_table_flags(reg, o);
  add_common(reg, o);

  auto* ep = app.add_subcommand("solve-ep", "Equilibrium problem by exhaustive search");
  add_table_flags(ep, o);
  add_common(ep, o);

  auto* cfp = app.add_subcommand("solve-cfp", "Convex feasibility problem by exhaustive search");
  add_table_flags(cfp, o);
  add_common(cfp, o);
  cfp->add_option("--radius", o.radius, "Local CFP radius");

  auto* check = app.add_subcommand("check", "Monotonicity, upper sign and segment conditions");
  add_table_flags(check, o);
  add_common(check, o);
  check->add_option("--property", o.property, "Check a single property");
  check->add_option("--radius", o.radius, "Radius for the local upper sign property");

  auto* classify = app.add_subcommand("classify", "Family membership over truncations");
  add_schedule_flags(classify, o);
  add_common(classify, o);
  classify->add_option("--probe", o.probes, "Probe points (default: the coarsest truncation grid)");

  auto* coerc = app.add_subcommand("coercivity", "Coercivity conditions C1-C3");
  add_schedule_flags(coerc, o);
  add_common(coerc, o);
  coerc->add_option("--condition", o.condition, "C1, C2 or C3 (default: all)");
  coerc->add_option("--kind", o.kind, "Regularization checked instead of f")
      ->check(CLI::IsMember({"s", "c", "q", "cbar", "qbar"}));

  auto* exist = app.add_subcommand("exist", "Existence pipeline over truncations");
  add_schedule_flags(exist, o);
  add_common(exist, o);
  exist->add_option("--variant", o.variant, "C2 or C3 (default: both)");

  auto* example = app.add_subcommand("example", "Run a worked example fixture ('list' to enumerate)");
  example->add_option("target", o.target, "Fixture name");
  add_common(example, o);

  auto* suite = app.add_subcommand("suite", "Run a randomized property suite ('list' to enumerate)");
  suite->add_option("target", o.target, "Suite name or 'all'");
  suite->add_option("--instances", o.instances, "Instances per check")->capture_default_str();
  add_common(suite, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*reg) return cmd_regularize(o);
    if (*ep) return cmd_solve(o, false);
    if (*cfp) return cmd_solve(o, true);
    if (*check) return cmd_check(o);
    if (*classify) return cmd_classify(o);
    if (*coerc) return cmd_coercivity(o);
    if (*exist) return cmd_exist(o);
    if (*example) return cmd_example(o);
    if (*suite) return cmd_suite(o);
  } catch (const UsageError& e) {
    std::cerr << "bireg: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "bireg: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
