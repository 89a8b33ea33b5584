#pragma once

// Command reports: per-check verdicts with witnesses, rendered as text or JSON.

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "codensity/sweeps.hpp"

namespace codensity {

struct Check {
  std::string name;
  Verdict verdict = Verdict::pass;
  std::string detail;
  std::string witness;  // replayable spec text or instance description
};

struct Report {
  std::string command;
  std::vector<std::string> args;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> instances;
  std::vector<Check> checks;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();  // command-specific tables
  std::string error;  // input or budget error message
  int exit_code = 0;
  double seconds = 0;

  void check(std::string name, bool ok, std::string detail = {}, std::string witness = {}) {
    checks.push_back({std::move(name), ok ? Verdict::pass : Verdict::fail, std::move(detail), std::move(witness)});
  }

  void add_sweep(const SweepReport& s) {
    nlohmann::ordered_json j;
    j["name"] = s.name;
    for (auto v : {Verdict::pass, Verdict::fail, Verdict::vacuous, Verdict::excluded, Verdict::skipped})
      j["counts"][verdict_name(v)] = s.count(v);
    for (const auto& [k, n] : s.tallies) j["tallies"][k] = n;
    data["sweeps"].push_back(j);
    for (const auto& c : s.cases) checks.push_back({s.name + ": " + c.instance, c.verdict, c.detail, c.witness});
  }

  std::size_t count(Verdict v) const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [v](const auto& c) { return c.verdict == v; }));
  }

  /// 0 all checks pass, 1 some check failed.  Errors set their own code.
  int verdict_code() const { return count(Verdict::fail) ? 1 : 0; }
};

inline nlohmann::ordered_json to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["args"] = r.args;
  j["seed"] = r.seed ? nlohmann::ordered_json(*r.seed) : nlohmann::ordered_json(nullptr);
  j["instances"] = r.instances;
  j["exit_code"] = r.exit_code;
  if (!r.error.empty()) j["error"] = r.error;
  j["summary"] = nlohmann::ordered_json::object();
  for (auto v : {Verdict::pass, Verdict::fail, Verdict::vacuous, Verdict::excluded, Verdict::skipped})
    j["summary"][verdict_name(v)] = r.count(v);
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json cj{{"name", c.name}, {"verdict", verdict_name(c.verdict)}, {"detail", c.detail}};
    if (!c.witness.empty()) cj["witness"] = c.witness;
    j["checks"].push_back(cj);
  }
  j["data"] = r.data;
  j["timing"] = {{"seconds", r.seconds}};
  return j;
}

inline std::string to_text(const Report& r) {
  std::ostringstream out;
  out << r.command;
  for (const auto& a : r.args) out << ' ' << a;
  out << '\n';
  if (r.seed) out << "seed " << *r.seed << '\n';
  for (const auto& i : r.instances) out << "instance " << i << '\n';
  if (!r.error.empty()) out << "error: " << r.error << '\n';
  if (r.data.contains("text")) out << r.data["text"].get<std::string>();
  // Passing sweep cases are summarized; every other check is listed.
  for (const auto& c : r.checks) {
    bool sweep_case = c.name.find(": ") != std::string::npos;
    if (sweep_case && (c.verdict == Verdict::pass || c.verdict == Verdict::excluded || c.verdict == Verdict::vacuous)) continue;
    out << '[' << verdict_name(c.verdict) << "] " << c.name;
    if (!c.detail.empty()) out << " - " << c.detail;
    out << '\n';
    if (!c.witness.empty()) {
      std::istringstream w(c.witness);
      for (std::string line; std::getline(w, line);) out << "    " << line << '\n';
    }
  }
  if (r.data.contains("sweeps"))
    for (const auto& s : r.data["sweeps"]) {
      out << s["name"].get<std::string>() << ':';
      for (const auto& [k, v] : s["counts"].items()) out << ' ' << k << '=' << v.get<std::size_t>();
      out << '\n';
      if (s.contains("tallies"))
        for (const auto& [k, v] : s["tallies"].items()) out << "  " << k << ": " << v.get<std::size_t>() << '\n';
    }
  out << "summary: " << r.count(Verdict::pass) << " pass, " << r.count(Verdict::fail) << " fail, " << r.count(Verdict::vacuous)
      << " vacuous, " << r.count(Verdict::excluded) << " excluded, " << r.count(Verdict::skipped) << " skipped-budget\n";
  out << "exit " << r.exit_code << '\n';
  return out.str();
}

}  // namespace codensity
