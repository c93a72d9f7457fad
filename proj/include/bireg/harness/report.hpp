#pragma once

#include <charconv>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bireg/bifunction.hpp"
#include "bireg/existence.hpp"
#include "bireg/solvers.hpp"
#include "bireg/verdict.hpp"

namespace bireg::harness {

using json = nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

struct Check {
  std::string name;
  bool passed = true;
  std::string detail;
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::optional<std::uint64_t> seed;  // replay seed of the first failure
  json counterexample;                // null when passed
};

struct SuiteReport {
  std::string command;
  json inputs = json::object();
  std::vector<Check> checks;
  std::vector<std::uint64_t> seeds;
  double wall_seconds = 0.0;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }

  Check& add(std::string name, bool ok, std::string detail = {}) {
    checks.push_back(Check{std::move(name), ok, std::move(detail), 1, ok ? 0U : 1U, std::nullopt, nullptr});
    return checks.back();
  }
};

// Negative zero prints as "-0"; normalize so reports read naturally.
inline double clean(double v) { return v == 0.0 ? 0.0 : v; }

inline std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, clean(v));
  return std::string(buf, res.ptr);
}

inline json to_json(const Witness& w, const Grid& g) {
  json points = json::array();
  for (const auto& p : w.points) points.push_back({{"role", p.role}, {"index", p.index}, {"point", clean(g[p.index])}});
  json values = json::object();
  for (const auto& v : w.values) values[v.label] = clean(v.value);
  return {{"points", points}, {"values", values}};
}

inline json to_json(const Verdict& v, const Grid& g) {
  json out = {{"passed", v.passed}, {"tol", v.tolerances.tol}, {"tol_strict", v.tolerances.tol_strict}};
  out["witness"] = v.witness ? to_json(*v.witness, g) : json(nullptr);
  return out;
}

inline json to_json(const SolutionSet& s) {
  json pts = json::array();
  for (double p : s.points()) pts.push_back(clean(p));
  return {{"indices", s.indices}, {"points", pts}, {"tol", s.tol}};
}

inline json to_json(const Grid& g) {
  return {{"lower", clean(g.lower())}, {"upper", clean(g.upper())}, {"count", g.size()}};
}

inline json to_json(const ValueTable& t) {
  json rows = json::array();
  for (std::size_t i = 0; i < t.size(); ++i) {
    json r = json::array();
    for (double v : t.row(i)) r.push_back(clean(v));
    rows.push_back(std::move(r));
  }
  return {{"grid", to_json(t.grid())}, {"values", rows}};
}

inline json to_json(const Check& c) {
  json out = {{"name", c.name}, {"status", c.passed ? "pass" : "fail"}, {"instances", c.instances},
              {"failures", c.failures}};
  if (!c.detail.empty()) out["detail"] = c.detail;
  out["seed"] = c.seed ? json(*c.seed) : json(nullptr);
  out["counterexample"] = c.counterexample;
  return out;
}

inline json to_json(const FamilyReport& r) {
  json out = json::array();
  for (const auto& e : r.entries) {
    json trajectories = json::array();
    for (const auto& t : e.trajectories) {
      json values = json::array();
      for (double v : t.values) values.push_back(clean(v));
      trajectories.push_back({{"probe", clean(t.probe)}, {"levels", t.levels}, {"values", values},
                              {"verdict", to_string(t.verdict)}});
    }
    out.push_back({{"family", to_string(e.family)}, {"verdict", to_string(e.verdict)}, {"note", e.note},
                   {"trajectories", trajectories}});
  }
  return out;
}

inline json to_json(const CoercivityReport& r) {
  json dirs = json::array();
  for (const auto& d : r.directions) {
    json traj = json::array();
    for (double v : d.trajectory) traj.push_back(clean(v));
    dirs.push_back({{"direction", d.direction},
                    {"passed", d.passed},
                    {"u", d.u ? json(clean(*d.u)) : json(nullptr)},
                    {"n0", d.n0 ? json(*d.n0) : json(nullptr)},
                    {"premise", d.premise ? json(*d.premise) : json(nullptr)},
                    {"trajectory", traj},
                    {"note", d.note}});
  }
  return {{"condition", to_string(r.kind)}, {"passed", r.passed()}, {"directions", dirs}};
}

inline json to_json(const PipelineResult& p) {
  json log = json::array();
  auto opt = [](const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); };
  for (const auto& e : p.log) {
    json interior = json::array();
    for (double x : e.interior_solutions) interior.push_back(clean(x));
    log.push_back({{"level", e.level},
                   {"solutions", to_json(e.solutions)},
                   {"interior_solutions", interior},
                   {"sq_rows", e.sq_rows},
                   {"zero_diagonal", e.zero_diagonal},
                   {"quasimonotone", opt(e.quasimonotone)},
                   {"upper_sign", opt(e.upper_sign)},
                   {"properly_quasimonotone", opt(e.properly_quasimonotone)},
                   {"status", e.status}});
  }
  return {{"found", p.found},
          {"point", p.point ? json(clean(*p.point)) : json(nullptr)},
          {"level", p.level ? json(*p.level) : json(nullptr)},
          {"log", log},
          {"coercivity", p.coercivity ? to_json(*p.coercivity) : json(nullptr)},
          {"diagnostics", p.diagnostics}};
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Full report document. Everything outside "timestamp" is a pure function of
// the command, inputs and seeds.
inline json report_document(const std::string& command, const json& inputs, const json& results,
                            const std::vector<std::uint64_t>& seeds, double wall_seconds) {
  return {{"tool_version", kToolVersion},
          {"command", command},
          {"inputs", inputs},
          {"results", results},
          {"seeds", seeds},
          {"timestamp", {{"utc", utc_timestamp()}, {"wall_seconds", wall_seconds}}}};
}

inline json report_document(const SuiteReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  json results = {{"solution_sets", json::object()}, {"verdicts", checks}, {"passed", r.passed()}};
  return report_document(r.command, r.inputs, results, r.seeds, r.wall_seconds);
}

// CSV in long form: "y,value" for one-variable samples, "x,y,value" for tables.
inline std::string to_csv(const SampledFunction& f) {
  std::string out = "y,value\n";
  for (std::size_t i = 0; i < f.size(); ++i) out += format_number(f.grid[i]) + "," + format_number(f[i]) + "\n";
  return out;
}

inline std::string to_csv(const ValueTable& t) {
  std::string out = "x,y,value\n";
  const Grid& g = t.grid();
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j)
      out += format_number(g[i]) + "," + format_number(g[j]) + "," + format_number(t(i, j)) + "\n";
  return out;
}

inline std::string to_csv(const SolutionSet& s) {
  std::string out = "index,x\n";
  for (auto i : s.indices) out += std::to_string(i) + "," + format_number(s.grid[i]) + "\n";
  return out;
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw IoError("write to '" + path + "' failed");
}

enum class ReportFormat { json, csv };

inline void emit_report(const json& doc, const std::string& path) { write_file(path, doc.dump(2) + "\n"); }

}  // namespace bireg::harness
