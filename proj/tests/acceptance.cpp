// Runs every acceptance sweep and prints one line per criterion.
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "codensity/sweeps.hpp"

using namespace codensity;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Outcome {
  bool ok = false;
  std::string detail;
  std::vector<SweepCase> failures;
};

std::string counts(const SweepReport& r) {
  return std::to_string(r.count(Verdict::pass)) + " pass, " + std::to_string(r.count(Verdict::fail)) + " fail, " +
         std::to_string(r.count(Verdict::vacuous)) + " vacuous, " + std::to_string(r.count(Verdict::excluded)) +
         " excluded, " + std::to_string(r.count(Verdict::skipped)) + " skipped-budget";
}

std::vector<SweepCase> failing(const SweepReport& r) {
  std::vector<SweepCase> out;
  for (const auto& c : r.cases)
    if (c.verdict == Verdict::fail) out.push_back(c);
  return out;
}

// Every case passes and there is at least one.
Outcome all_pass(const SweepReport& r) {
  return {!r.cases.empty() && r.count(Verdict::pass) == r.cases.size(), counts(r), failing(r)};
}

std::string tally(const SweepReport& r, const std::string& key) {
  for (const auto& [k, n] : r.tallies)
    if (k == key) return std::to_string(n);
  return "?";
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  std::vector<SuiteInstance> suite;
  auto monads = [&]() -> const std::vector<SuiteInstance>& {
    if (suite.empty()) suite = monad_suite(soundness_corpus(kSeed));
    return suite;
  };

  struct Criterion {
    int number;
    const char* title;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "codensity monad soundness", 300,
       [&] {
         auto r = sweep_codensity_soundness(monads());
         Outcome o{r.count(Verdict::pass) >= 200 && r.count(Verdict::fail) == 0, counts(r), failing(r)};
         o.detail += "; " + std::to_string(r.cases.size()) + " instances";
         return o;
       }},
      {2, "finite ultrafilter shadow", 60, [] { return all_pass(sweep_ultrafilter_shadow()); }},
      {3, "main theorem", 300, [] { return all_pass(sweep_main_theorem(2, 3, 2)); }},
      {4, "conjugation along the reflection", 60, [] { return all_pass(sweep_reflection_conjugation()); }},
      {5, "arity theorem", 300,
       [] {
         auto r = sweep_arity_theorem(5);
         return Outcome{r.count(Verdict::fail) == 0 && r.count(Verdict::skipped) == 0, counts(r), failing(r)};
       }},
      {6, "law suite", 600,
       [] {
         LawSuiteSettings s;
         s.instances = 100;
         s.seed = kSeed;
         auto raw = run_kan_law_suite(s);
         bool sized = raw.laws.size() == law_names().size();
         for (const auto& law : raw.laws) sized = sized && law.outcomes.size() == 100;
         auto r = sweep_law_suite(s);
         auto o = all_pass(r);
         o.ok = o.ok && sized && raw.skipped() == 0;
         o.detail = std::to_string(r.count(Verdict::pass)) + "/" + std::to_string(r.cases.size()) + " laws hold";
         std::size_t excluded = 0;
         for (const auto& law : raw.laws) excluded += law.count(Verdict::excluded);
         o.detail += "; " + std::to_string(excluded) + " excluded instances";
         return o;
       }},
      {7, "pointwise idempotency equivalence", 60,
       [&] {
         auto r = sweep_idempotency(monads());
         auto o = all_pass(r);
         o.detail += "; literal form disagrees at " + tally(r, "literal disagreements (objects)") + " of " +
                     tally(r, "objects") + " objects";
         return o;
       }},
      {8, "lex preservation of O(P)", 120, [] { return all_pass(sweep_lex_preservation(kSeed, 50)); }},
      {9, "Yoneda bijection", 60, [] { return all_pass(sweep_yoneda(kSeed, 50)); }},
      {10, "equalizer presentation of algebras", 120, [&] { return all_pass(sweep_equalizer_presentation(monads())); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    auto start = clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what(), {}};
    }
    double seconds = std::chrono::duration<double>(clock::now() - start).count();
    bool in_time = seconds <= c.limit_seconds;
    bool ok = o.ok && in_time;
    failed += !ok;
    std::printf("criterion %d: %s - %s - %s (%.2fs%s)\n", c.number, ok ? "PASS" : "FAIL", c.title, o.detail.c_str(), seconds,
                in_time ? "" : ", over the time limit");
    for (std::size_t i = 0; i < o.failures.size() && i < 3; ++i)
      std::printf("    %s: %s\n", o.failures[i].instance.c_str(), o.failures[i].detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
