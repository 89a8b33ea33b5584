#pragma once

// Instance sweeps over generated corpora.  Each sweep returns one verdict per
// instance; failures carry a replayable spec text.

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "codensity/isbell.hpp"
#include "codensity/laws.hpp"
#include "codensity/monad.hpp"
#include "codensity/spec_format.hpp"

namespace codensity {

struct SweepCase {
  std::string instance;
  Verdict verdict = Verdict::pass;
  std::string detail;
  std::string witness;  // spec text, set on failure
};

struct SweepReport {
  std::string name;
  std::vector<SweepCase> cases;
  std::vector<std::pair<std::string, std::size_t>> tallies;  // informational counts

  std::size_t count(Verdict v) const {
    return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [v](const auto& c) { return c.verdict == v; }));
  }
  bool passed() const { return count(Verdict::fail) == 0; }
};

// ---------------------------------------------------------------------------
// Corpora

struct NamedCategory {
  std::string name;
  CategoryPtr category;
};

inline std::vector<NamedCategory> lattice_corpus(std::size_t max_elements) {
  std::vector<NamedCategory> out;
  for (std::size_t n = 1; n <= max_elements; ++n) {
    auto ls = enumerate_lattices(n);
    for (std::size_t k = 0; k < ls.size(); ++k) out.push_back({"lattice" + std::to_string(n) + "-" + std::to_string(k), ls[k]});
  }
  return out;
}

/// Lattices with at most five elements, finset skeletons up to 3 and ten
/// random function categories with at most four objects.
inline std::vector<NamedCategory> soundness_corpus(std::uint64_t seed) {
  auto out = lattice_corpus(5);
  for (std::size_t m = 0; m <= 3; ++m) out.push_back({"finset" + std::to_string(m), finset_skeleton(m)});
  for (std::size_t i = 0; i < 10; ++i) {
    RandomCategoryParams p;
    p.objects = 1 + i % 4;
    p.max_set_size = 3;
    p.generators = 3;
    p.max_morphisms = 40;
    out.push_back({"random" + std::to_string(i), random_category(p, seed * 7919 + i)});
  }
  return out;
}

inline std::vector<std::vector<ObjId>> all_subsets(std::size_t n) {
  std::vector<std::vector<ObjId>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<ObjId> s;
    for (std::size_t a = 0; a < n; ++a)
      if (mask >> a & 1) s.push_back(static_cast<ObjId>(a));
    out.push_back(std::move(s));
  }
  return out;
}

inline std::string subset_label(const FullSubcategory& sub) {
  std::string s = "{";
  for (std::size_t i = 0; i < sub.objects.size(); ++i) s += (i ? "," : "") + sub.parent->object_name(sub.objects[i]);
  return s + "}";
}

inline std::string subcategory_witness(const std::string& name, const FullSubcategory& sub) {
  SpecDocument doc;
  doc.add_category(name, sub.parent);
  doc.add_subcategory("A", name, sub);
  return emit_spec(doc);
}

/// A codensity monad of one full subcategory of a corpus category.
struct SuiteInstance {
  std::string label;
  FullSubcategory sub;
  std::optional<Monad> monad;
  std::vector<ObjId> missing;
  std::string error;  // law failure raised during construction
  bool budget = false;
};

inline std::vector<SuiteInstance> monad_suite(const std::vector<NamedCategory>& corpus) {
  std::vector<SuiteInstance> out;
  for (const auto& [name, cat] : corpus) {
    for (auto& objs : all_subsets(cat->object_count())) {
      SuiteInstance s{"", full_subcategory(cat, objs), std::nullopt, {}, "", false};
      s.label = name + " A=" + subset_label(s.sub);
      try {
        auto r = codensity_monad(s.sub);
        s.monad = r.monad;
        s.missing = r.kan.missing;
      } catch (const BudgetExceeded& e) {
        s.budget = true;
        s.error = e.what();
      } catch (const Error& e) {
        s.error = e.what();
      }
      out.push_back(std::move(s));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sweeps

inline SweepReport sweep_codensity_soundness(const std::vector<SuiteInstance>& suite) {
  SweepReport r{"codensity-soundness", {}, {}};
  for (const auto& s : suite) {
    SweepCase c{s.label, Verdict::pass, "", ""};
    if (s.budget) {
      c.verdict = Verdict::skipped;
      c.detail = s.error;
    } else if (!s.error.empty()) {
      c.verdict = Verdict::fail;
      c.detail = s.error;
    } else if (!s.monad) {
      c.verdict = Verdict::vacuous;
      c.detail = "Ran_i i missing at " + std::to_string(s.missing.size()) + " object(s)";
    } else {
      const auto& m = *s.monad;
      auto laws = check_monad_laws(m);
      bool fixes = std::all_of(s.sub.objects.begin(), s.sub.objects.end(), [&](ObjId a) { return m.carrier().is_iso(m.eta(a)); });
      if (!laws.holds()) c.detail = laws.failures.front();
      else if (!fixes) c.detail = "unit not invertible on a subcategory object";
      else c.detail = describe_functor_objects(m.functor());
      if (!laws.holds() || !fixes) c.verdict = Verdict::fail;
    }
    if (c.verdict == Verdict::fail) c.witness = subcategory_witness("K", s.sub);
    r.cases.push_back(std::move(c));
  }
  return r;
}

/// finset-skeleton 3 with A = sizes {1,2}: |T X| = |X| and η_X bijective.
inline SweepReport sweep_ultrafilter_shadow() {
  SweepReport r{"ultrafilter-shadow", {}, {}};
  auto K = finset_skeleton(3);
  auto sub = full_subcategory(K, {1, 2});
  auto cod = codensity_monad(sub);
  if (!cod.exists()) {
    for (ObjId x : cod.kan.missing) {
      // The cones from 1 count the points a limit would need.
      const auto& comma = cod.kan.commas[static_cast<std::size_t>(x)];
      auto d = compose(sub.inclusion, comma.projection);
      SweepCase c{"X=" + K->object_name(x), Verdict::fail, "", subcategory_witness("finset3", sub)};
      c.detail = "Ran_i i has no value at X; cones from 1 over (X|i): " + std::to_string(count_cones(d, 1)) +
                 ", largest object has " + std::to_string(K->object_count() - 1) + " elements";
      r.cases.push_back(std::move(c));
    }
    return r;
  }
  const auto& m = *cod.monad;
  for (std::size_t x = 0; x < K->object_count(); ++x) {
    auto X = static_cast<ObjId>(x);
    bool ok = m.on_object(X) == X && K->is_iso(m.eta(X));
    r.cases.push_back({"X=" + K->object_name(X), ok ? Verdict::pass : Verdict::fail,
                       "T X = " + K->object_name(m.on_object(X)), ok ? "" : subcategory_witness("finset3", sub)});
  }
  return r;
}

/// Spec(O P) ≅ T_y(P) for every base with ≤ max_objects objects and
/// ≤ max_morphisms morphisms and every presheaf with ≤ max_elements elements.
inline SweepReport sweep_main_theorem(std::size_t max_objects = 2, std::size_t max_morphisms = 3, std::size_t max_elements = 2) {
  SweepReport r{"main-theorem", {}, {}};
  std::size_t canonical = 0;
  auto bases = enumerate_small_categories(max_objects, max_morphisms);
  for (std::size_t b = 0; b < bases.size(); ++b) {
    auto ps = enumerate_set_functors(bases[b], max_elements);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      SweepCase c{"base" + std::to_string(b) + " P" + std::to_string(i), Verdict::pass, "", ""};
      try {
        auto rep = verify_main_theorem(ps[i]);
        canonical += rep.canonical;
        if (!rep.holds()) {
          c.verdict = Verdict::fail;
          c.detail = "no unit-compatible isomorphism";
          SpecDocument doc;
          doc.add_category("C", bases[b]);
          doc.add_presheaf("P", "C", ps[i]);
          c.witness = emit_spec(doc);
        }
      } catch (const BudgetExceeded& e) {
        c.verdict = Verdict::skipped;
        c.detail = e.what();
      }
      r.cases.push_back(std::move(c));
    }
  }
  r.tallies.push_back({"bases", bases.size()});
  r.tallies.push_back({"canonical witnesses", canonical});
  return r;
}

/// T_i ≅ L∘Spec∘O∘K(i−,−) on the 3-chain with A = {0,2} and the diamond with
/// its join-irreducibles.
inline SweepReport sweep_reflection_conjugation() {
  SweepReport r{"reflection-conjugation", {}, {}};
  auto chain = chain_category(3);
  auto diamond = diamond_category();
  std::vector<std::pair<std::string, FullSubcategory>> cases{
      {"chain3 A={0,2}", full_subcategory(chain, {0, 2})},
      {"diamond A={a,b}", full_subcategory(diamond, {*diamond->find_object("a"), *diamond->find_object("b")})},
  };
  for (const auto& [label, sub] : cases) {
    auto rep = reflection_conjugation_check(sub);
    SweepCase c{label, rep.holds() ? Verdict::pass : Verdict::fail, "", ""};
    std::string conj;
    for (std::size_t k = 0; k < rep.conjugated.size(); ++k) conj += (k ? "," : "") + sub.parent->object_name(rep.conjugated[k]);
    c.detail = std::string(rep.dense ? "dense" : "not dense") + "; conjugate object map (" + conj + ")";
    if (!rep.failure.empty()) c.detail += "; " + rep.failure;
    if (!rep.holds()) c.witness = subcategory_witness("K", sub);
    r.cases.push_back(std::move(c));
  }
  return r;
}

/// Every full subcategory of every lattice with ≤ max_elements elements.
inline SweepReport sweep_arity_theorem(std::size_t max_elements = 5) {
  SweepReport r{"arity-theorem", {}, {}};
  for (const auto& [name, cat] : lattice_corpus(max_elements)) {
    for (auto& objs : all_subsets(cat->object_count())) {
      auto sub = full_subcategory(cat, objs);
      SweepCase c{name + " A=" + subset_label(sub), Verdict::pass, "", ""};
      auto rep = verify_arity_theorem(sub);
      using V = ArityTheoremReport::Verdict;
      switch (rep.verdict) {
        case V::pass: c.detail = "arity holds, T_i = id"; break;
        case V::vacuous: c.verdict = Verdict::vacuous; c.detail = "T_i lacks arity A"; break;
        case V::not_dense: c.verdict = Verdict::excluded; c.detail = "A not dense"; break;
        case V::no_monad: c.verdict = Verdict::vacuous; c.detail = "no codensity monad"; break;
        case V::hard_failure:
          c.verdict = Verdict::fail;
          c.detail = "arity holds but T_i is not the identity";
          c.witness = subcategory_witness("K", sub);
          break;
      }
      r.cases.push_back(std::move(c));
    }
  }
  return r;
}

inline SweepReport sweep_law_suite(const LawSuiteSettings& settings = {}) {
  SweepReport r{"law-suite", {}, {}};
  auto suite = run_kan_law_suite(settings);
  for (const auto& law : suite.laws) {
    SweepCase c{law.law, law.passed() ? Verdict::pass : Verdict::fail, "", ""};
    c.detail = std::to_string(law.count(Verdict::pass)) + " pass, " + std::to_string(law.count(Verdict::fail)) + " fail, " +
               std::to_string(law.count(Verdict::excluded)) + " excluded, " + std::to_string(law.count(Verdict::skipped)) + " skipped";
    for (const auto& o : law.outcomes)
      if (o.verdict == Verdict::fail) {
        c.witness = "instance " + std::to_string(o.index) + ": " + o.instance + " " + o.detail;
        break;
      }
    r.cases.push_back(std::move(c));
    r.tallies.push_back({law.law + " excluded", law.count(Verdict::excluded)});
  }
  return r;
}

/// μ_k iso ⇔ η_{T k} iso at every object of every suite monad.  The literal
/// form μ_k iso ⇔ η_k iso is tallied only.
inline SweepReport sweep_idempotency(const std::vector<SuiteInstance>& suite) {
  SweepReport r{"idempotency-equivalence", {}, {}};
  std::size_t rows = 0, literal = 0, literal_instances = 0;
  for (const auto& s : suite) {
    if (!s.monad) continue;
    auto rep = idempotency_analysis(*s.monad);
    rows += rep.rows.size();
    literal += rep.literal_disagreements();
    literal_instances += rep.literal_disagreements() > 0;
    SweepCase c{s.label, rep.provable_violations() ? Verdict::fail : Verdict::pass, "", ""};
    c.detail = std::string(rep.idempotent() ? "idempotent" : "not idempotent") + ", literal disagreements " +
               std::to_string(rep.literal_disagreements());
    if (c.verdict == Verdict::fail) c.witness = subcategory_witness("K", s.sub);
    r.cases.push_back(std::move(c));
  }
  r.tallies.push_back({"objects", rows});
  r.tallies.push_back({"literal disagreements (objects)", literal});
  r.tallies.push_back({"literal disagreements (monads)", literal_instances});
  return r;
}

/// O(P) preserves binary meets and top, for random presheaves on lattices.
inline SweepReport sweep_lex_preservation(std::uint64_t seed, std::size_t presheaves = 50) {
  SweepReport r{"lex-preservation", {}, {}};
  auto lattices = lattice_corpus(5);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < presheaves; ++i) {
    const auto& [name, base] = lattices[std::uniform_int_distribution<std::size_t>(0, lattices.size() - 1)(rng)];
    auto p = random_presheaf(base, 3, rng);
    SweepCase c{name + " P" + std::to_string(i), Verdict::pass, "", ""};
    try {
      auto rep = preserves_finite_limits(isbell_O(p), meet_and_top_probes(base));
      std::size_t broken = 0;
      for (const auto& o : rep.outcomes) broken += o.status == ProbeOutcome::Status::not_preserved;
      c.detail = std::to_string(rep.outcomes.size()) + " probes, " + std::to_string(broken) + " not preserved, " +
                 std::to_string(rep.skipped()) + " without limit";
      if (!rep.all_preserved() || rep.skipped()) {
        c.verdict = Verdict::fail;
        SpecDocument doc;
        doc.add_category(name, base);
        doc.add_presheaf("P", name, p);
        c.witness = emit_spec(doc);
      }
    } catch (const BudgetExceeded& e) {
      c.verdict = Verdict::skipped;
      c.detail = e.what();
    }
    r.cases.push_back(std::move(c));
  }
  return r;
}

/// Nat(y a, P) ≅ P(a) by evaluation at 1_a: every small base with every
/// presheaf of ≤ 2 elements, plus random presheaves on lattices.
inline SweepReport sweep_yoneda(std::uint64_t seed, std::size_t random_presheaves = 50) {
  SweepReport r{"yoneda-bijection", {}, {}};
  auto check = [&](const std::string& label, const CategoryPtr& base, const Presheaf& p) {
    for (std::size_t a = 0; a < base->object_count(); ++a) {
      auto y = yoneda_bijection(p, base, static_cast<ObjId>(a));
      SweepCase c{label + " a=" + base->object_name(static_cast<ObjId>(a)), y.bijective ? Verdict::pass : Verdict::fail,
                  std::to_string(y.families) + " families, " + std::to_string(y.elements) + " elements", ""};
      if (!y.bijective) {
        SpecDocument doc;
        doc.add_category("C", base);
        doc.add_presheaf("P", "C", p);
        c.witness = emit_spec(doc);
      }
      r.cases.push_back(std::move(c));
    }
  };
  auto bases = enumerate_small_categories(2, 3);
  for (std::size_t b = 0; b < bases.size(); ++b) {
    auto ps = enumerate_set_functors(bases[b], 2);
    for (std::size_t i = 0; i < ps.size(); ++i) check("base" + std::to_string(b) + " P" + std::to_string(i), bases[b], ps[i]);
  }
  auto lattices = lattice_corpus(5);
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < random_presheaves; ++i) {
    const auto& [name, base] = lattices[std::uniform_int_distribution<std::size_t>(0, lattices.size() - 1)(rng)];
    check(name + " R" + std::to_string(i), base, random_presheaf(base, 3, rng));
  }
  return r;
}

/// k ≅ Eq(η_k∘ξ, 1_{T k}) for every algebra (k, ξ) of every suite monad.
inline SweepReport sweep_equalizer_presentation(const std::vector<SuiteInstance>& suite) {
  SweepReport r{"equalizer-presentation", {}, {}};
  for (const auto& s : suite) {
    if (!s.monad) continue;
    try {
      auto em = em_category(*s.monad);
      const auto& K = s.monad->carrier();
      for (const auto& alg : em.algebras) {
        SweepCase c{s.label + " (" + K.object_name(alg.carrier) + "," + K.morphism_name(alg.structure) + ")", Verdict::pass, "", ""};
        auto cert = limit_dense_witness(*s.monad, alg);
        if (!cert.equalizer) {
          c.verdict = Verdict::vacuous;
          c.detail = "no equalizer in K";
        } else if (!cert.iso_to_carrier) {
          c.verdict = Verdict::fail;
          c.detail = "equalizer apex " + K.object_name(cert.equalizer->apex) + " not isomorphic to the carrier";
          c.witness = subcategory_witness("K", s.sub);
        } else {
          c.detail = "iso " + K.morphism_name(*cert.iso_to_carrier);
        }
        r.cases.push_back(std::move(c));
      }
    } catch (const BudgetExceeded& e) {
      r.cases.push_back({s.label, Verdict::skipped, e.what(), ""});
    }
  }
  return r;
}

}  // namespace codensity
