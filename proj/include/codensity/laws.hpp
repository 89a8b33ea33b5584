#pragma once

// Randomized checks of eight Kan-extension laws on small seeded instances.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "codensity/generators.hpp"
#include "codensity/kan.hpp"

namespace codensity {

enum class Verdict { pass, fail, vacuous, excluded, skipped };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::vacuous: return "vacuous";
    case Verdict::excluded: return "excluded";
    case Verdict::skipped: return "skipped-budget";
  }
  return "?";
}

struct LawOutcome {
  std::size_t index = 0;
  std::string instance;
  Verdict verdict = Verdict::pass;
  std::string detail;
};

struct LawResult {
  std::string law;
  std::vector<LawOutcome> outcomes;

  std::size_t count(Verdict v) const {
    return static_cast<std::size_t>(std::count_if(outcomes.begin(), outcomes.end(), [v](const auto& o) { return o.verdict == v; }));
  }
  bool passed() const { return count(Verdict::fail) == 0; }
};

struct LawSuiteReport {
  std::vector<LawResult> laws;
  bool passed() const {
    return std::all_of(laws.begin(), laws.end(), [](const auto& l) { return l.passed(); });
  }
  std::size_t skipped() const {
    std::size_t n = 0;
    for (const auto& l : laws) n += l.count(Verdict::skipped);
    return n;
  }
};

struct LawSuiteSettings {
  std::size_t instances = 100;
  std::uint64_t seed = 1;
  std::size_t max_objects = 5;
  std::size_t max_elements = 4;
  std::vector<std::string> only;  // law names; empty runs all
};

inline const std::vector<std::string>& law_names() {
  static const std::vector<std::string> names{"A-simplify", "A-compose",   "A-preserve",    "density",
                                              "adjoint-existence", "nerve", "pointwise-Lan", "pointwise-Ran"};
  return names;
}

// ---------------------------------------------------------------------------
// Instance supply

class InstanceSource {
 public:
  explicit InstanceSource(std::uint64_t seed, std::size_t max_objects = 5) : rng_(seed), max_objects_(max_objects) {
    for (std::size_t n = 1; n <= std::min<std::size_t>(5, max_objects); ++n)
      for (auto& l : enumerate_lattices(n)) lattices_.push_back(l);
  }

  std::mt19937_64& rng() { return rng_; }

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  /// A finite lattice with at most max_objects elements.
  CategoryPtr lattice() { return lattices_[below(lattices_.size())]; }

  /// Small source categories: chains, lattices, monoids, random function categories.
  CategoryPtr category(std::size_t max_objects = 3) {
    max_objects = std::min(max_objects, max_objects_);
    switch (below(6)) {
      case 0: return chain_category(1 + below(max_objects));
      case 1: return lattice_up_to(max_objects);
      case 2: return walking_arrow();
      case 3: return cyclic_group_category(1 + below(3));
      default: {
        RandomCategoryParams p;
        p.objects = 1 + below(max_objects);
        p.max_set_size = 2;
        p.generators = 1 + below(3);
        p.max_morphisms = 12;
        return random_category(p, rng_());
      }
    }
  }

  CategoryPtr lattice_up_to(std::size_t n) {
    std::vector<CategoryPtr> fit;
    for (const auto& l : lattices_)
      if (l->object_count() <= n) fit.push_back(l);
    return fit[below(fit.size())];
  }

  std::vector<ObjId> subset(const FinCategory& c) {
    std::vector<ObjId> s;
    for (std::size_t a = 0; a < c.object_count(); ++a)
      if (below(2)) s.push_back(static_cast<ObjId>(a));
    return s;
  }

  Functor functor(const CategoryPtr& s, const CategoryPtr& t) { return FunctorSearch(s, t).random(rng_); }

 private:
  std::mt19937_64 rng_;
  std::size_t max_objects_;
  std::vector<CategoryPtr> lattices_;
};

namespace detail {

inline std::string shape(const FinCategory& c) {
  return std::to_string(c.object_count()) + "obj/" + std::to_string(c.morphism_count()) + "mor";
}

inline bool iso(const Functor& a, const Functor& b) { return find_natural_isomorphism(a, b).has_value(); }

inline std::string objects_of(const Functor& f) { return describe_functor_objects(f); }

// A left (right) adjoint between the given lattices, or the constant functor
// at the bottom (top), which always is one.
inline Functor adjoint_between(InstanceSource& src, const CategoryPtr& d, const CategoryPtr& e, bool left) {
  for (int attempt = 0; attempt < 24; ++attempt) {
    auto f = src.functor(d, e);
    bool ok = left ? right_adjoint_via_lan(f).adjoint.has_value() : left_adjoint_via_ran(f).adjoint.has_value();
    if (ok) return f;
  }
  const auto& E = *e;
  for (std::size_t x = 0; x < E.object_count(); ++x) {
    bool extreme = true;
    for (std::size_t y = 0; y < E.object_count() && extreme; ++y)
      extreme = left ? !E.hom(static_cast<ObjId>(x), static_cast<ObjId>(y)).empty()
                     : !E.hom(static_cast<ObjId>(y), static_cast<ObjId>(x)).empty();
    if (extreme) return Functor::constant(d, e, static_cast<ObjId>(x));
  }
  throw Error("lattice without extreme element");
}

// The canonical map Lan_i i ⇒ 1 is invertible at every object.
inline bool canonically_dense(const Functor& i) {
  auto k = left_kan(i, i, {.verify_universal = false});
  if (!k.exists()) return false;
  const auto& K = i.target();
  for (std::size_t b = 0; b < K.object_count(); ++b) {
    Cone to_b{static_cast<ObjId>(b), k.commas[b].arrow};
    auto h = factor_through_colimit(K, *k.cones[b], to_b);
    if (!h || !K.is_iso(*h)) return false;
  }
  return true;
}

}  // namespace detail

/// (description, verdict, detail) for one instance of one law.
using LawCase = std::function<LawOutcome(InstanceSource&)>;

inline LawOutcome law_simplify(InstanceSource& src) {
  LawOutcome o;
  auto K = src.category(4);
  auto objs = src.subset(*K);
  auto D = src.lattice();
  bool non_full = src.below(5) == 0;
  std::optional<Functor> incl;
  if (non_full) {
    // Identities only: the discrete category on the chosen objects.
    std::vector<std::string> names;
    std::vector<MorId> ids;
    bool has_arrows = false;
    for (ObjId a : objs) {
      names.push_back(K->object_name(a));
      ids.push_back(K->identity(a));
      for (ObjId b : objs) has_arrows = has_arrows || K->hom(a, b).size() > (a == b ? 1u : 0u);
    }
    non_full = has_arrows;
    if (non_full) incl = Functor::unchecked(discrete_category(names), K, objs, ids);
  }
  if (!incl) incl = full_subcategory(K, objs).inclusion;
  auto f = src.functor(incl->source_ptr(), D);
  o.instance = "K " + detail::shape(*K) + ", A size " + std::to_string(objs.size()) + (non_full ? " (identities only)" : "") +
               ", target lattice " + detail::shape(*D);
  auto lan = left_kan(*incl, f, {.verify_universal = false});
  auto ran = right_kan(*incl, f, {.verify_universal = false});
  bool lan_ok = lan.exists() && detail::iso(compose(lan.functor(), *incl), f);
  bool ran_ok = ran.exists() && detail::iso(compose(ran.functor(), *incl), f);
  o.detail = std::string("Lan_i f . i ~ f: ") + (lan_ok ? "yes" : "no") + "; Ran_i f . i ~ f: " + (ran_ok ? "yes" : "no");
  if (non_full) {
    o.verdict = Verdict::excluded;
    o.detail = "hypothesis violated (inclusion not full); " + o.detail;
  } else {
    o.verdict = lan_ok && ran_ok ? Verdict::pass : Verdict::fail;
    if (!lan_ok || !ran_ok) o.detail += "; f = " + detail::objects_of(f);
  }
  return o;
}

inline LawOutcome law_compose(InstanceSource& src) {
  LawOutcome o;
  std::optional<Functor> g, f;
  if (src.below(4) == 0) {
    // Nested full inclusions A ⊂ B ⊂ 4-chain.
    auto C = chain_category(4);
    auto outer = src.subset(*C);
    std::vector<ObjId> inner;
    for (std::size_t j = 0; j < outer.size(); ++j)
      if (src.below(2)) inner.push_back(static_cast<ObjId>(j));
    auto B = full_subcategory(C, outer);
    auto A = full_subcategory(B.category, inner);
    f = B.inclusion;
    g = A.inclusion;
    o.instance = "nested inclusions in the 4-chain, sizes " + std::to_string(inner.size()) + " < " + std::to_string(outer.size());
  } else {
    auto A = src.category(3), B = src.category(3), C = src.category(3);
    g = src.functor(A, B);
    f = src.functor(B, C);
    o.instance = "A " + detail::shape(*A) + " -> B " + detail::shape(*B) + " -> C " + detail::shape(*C);
  }
  auto D = src.lattice();
  auto h = src.functor(g->source_ptr(), D);
  o.instance += ", h into lattice " + detail::shape(*D);
  auto direct = left_kan(compose(*f, *g), h, {.verify_universal = false});
  auto inner_kan = left_kan(*g, h, {.verify_universal = false});
  auto stepwise = left_kan(*f, inner_kan.functor(), {.verify_universal = false});
  bool ok = detail::iso(direct.functor(), stepwise.functor());
  o.verdict = ok ? Verdict::pass : Verdict::fail;
  o.detail = ok ? "Lan_{fg} h ~ Lan_f Lan_g h"
                : "Lan_{fg} h = [" + detail::objects_of(direct.functor()) + "] vs [" + detail::objects_of(stepwise.functor()) + "]";
  return o;
}

inline LawOutcome law_preserve(InstanceSource& src) {
  LawOutcome o;
  auto A = src.category(3), B = src.category(3);
  auto D = src.lattice(), E = src.lattice();
  auto g = src.functor(A, B);
  auto h = src.functor(A, D);
  auto L = detail::adjoint_between(src, D, E, true);
  auto R = detail::adjoint_between(src, D, E, false);
  o.instance = "g: " + detail::shape(*A) + " -> " + detail::shape(*B) + ", lattices " + detail::shape(*D) + " -> " + detail::shape(*E);
  auto lan = left_kan(g, h, {.verify_universal = false});
  auto lan_l = left_kan(g, compose(L, h), {.verify_universal = false});
  auto ran = right_kan(g, h, {.verify_universal = false});
  auto ran_r = right_kan(g, compose(R, h), {.verify_universal = false});
  bool lan_ok = detail::iso(compose(L, lan.functor()), lan_l.functor());
  bool ran_ok = detail::iso(compose(R, ran.functor()), ran_r.functor());
  o.verdict = lan_ok && ran_ok ? Verdict::pass : Verdict::fail;
  o.detail = std::string("left adjoint preserves Lan: ") + (lan_ok ? "yes" : "no") + "; right adjoint preserves Ran: " + (ran_ok ? "yes" : "no");
  return o;
}

inline LawOutcome law_density(InstanceSource& src) {
  LawOutcome o;
  auto K = src.below(2) ? src.lattice() : src.category(4);
  auto sub = full_subcategory(K, src.subset(*K));
  o.instance = "K " + detail::shape(*K) + ", A size " + std::to_string(sub.objects.size());
  bool ff = nerve_fully_faithful(sub.inclusion);
  bool dense = detail::canonically_dense(sub.inclusion);
  o.verdict = ff == dense ? Verdict::pass : Verdict::fail;
  o.detail = std::string("nerve fully faithful: ") + (ff ? "yes" : "no") + "; Lan_i i canonically ~ 1: " + (dense ? "yes" : "no");
  return o;
}

inline LawOutcome law_adjoint_existence(InstanceSource& src) {
  LawOutcome o;
  CategoryPtr Dc = src.below(2) ? src.lattice() : src.category(3);
  CategoryPtr Cc = src.below(2) ? src.lattice() : src.category(3);
  auto R = src.functor(Dc, Cc);
  o.instance = "R: " + detail::shape(*Dc) + " -> " + detail::shape(*Cc) + " [" + detail::objects_of(R) + "]";
  auto via_ran = left_adjoint_via_ran(R);
  bool arrows = has_left_adjoint_by_universal_arrows(R);
  bool via = via_ran.adjoint.has_value();
  bool agree = via == arrows;
  if (agree && via) agree = check_adjunction(*via_ran.adjoint, R).holds();
  o.verdict = agree ? Verdict::pass : Verdict::fail;
  o.detail = std::string("Ran_R(1) preserved: ") + (via ? "yes" : "no") + "; universal arrows: " + (arrows ? "yes" : "no");
  return o;
}

inline LawOutcome law_nerve(InstanceSource& src, std::size_t max_elements) {
  LawOutcome o;
  auto A = src.category(3);
  auto B = src.lattice();
  auto f = src.functor(A, B);
  o.instance = "f: " + detail::shape(*A) + " -> lattice " + detail::shape(*B);
  const auto& Bc = *B;
  auto pos = detail::hom_positions(Bc);
  // Lan_f y (b) against B(f−, b) through [(a, φ), g] ↦ φ∘f(g).
  for (std::size_t b = 0; b < Bc.object_count(); ++b) {
    auto ext = lan_of_yoneda(f, static_cast<ObjId>(b));
    auto nb = nerve(f, static_cast<ObjId>(b));
    Family canon(A->object_count());
    for (std::size_t a2 = 0; a2 < A->object_count(); ++a2) {
      canon[a2].assign(ext.colimit.object.at(static_cast<ObjId>(a2)).size(), -1);
      for (std::size_t j = 0; j < ext.comma.arrow.size(); ++j) {
        ObjId a = ext.comma.source_object[j];
        auto hs = A->hom(static_cast<ObjId>(a2), a);
        for (std::size_t x = 0; x < hs.size(); ++x) {
          MorId img = Bc.compose(ext.comma.arrow[j], f.on_morphism(hs[x]));
          canon[a2][static_cast<std::size_t>(ext.colimit.legs[j][a2][x])] = pos[static_cast<std::size_t>(img)];
        }
      }
    }
    if (!is_natural(ext.colimit.object, nb, canon) || !is_bijective_family(canon, sizes(nb))) {
      o.verdict = Verdict::fail;
      o.detail = "canonical map Lan_f y -> B(f-, b) not invertible at " + Bc.object_name(static_cast<ObjId>(b));
      return o;
    }
  }
  auto p = random_presheaf(A, max_elements, src.rng());
  auto real = realize(f, p);
  if (!real) {
    o.verdict = Verdict::fail;
    o.detail = "realization missing in a lattice";
    return o;
  }
  for (std::size_t b = 0; b < Bc.object_count(); ++b) {
    auto hom = Bc.hom(real->apex, static_cast<ObjId>(b)).size();
    auto nat = natural_families(p, nerve(f, static_cast<ObjId>(b))).size();
    if (hom != nat) {
      o.verdict = Verdict::fail;
      o.detail = "hom(realize P, b) has " + std::to_string(hom) + " elements, Nat(P, N b) has " + std::to_string(nat);
      return o;
    }
  }
  o.verdict = Verdict::pass;
  o.detail = "Lan_f y ~ B(f-, -); realization adjunction on a sample with " + std::to_string(p.total_size()) + " elements";
  return o;
}

inline LawOutcome law_pointwise_lan(InstanceSource& src) {
  LawOutcome o;
  auto A = src.category(3), B = src.category(3);
  auto C = src.lattice();
  auto g = src.functor(A, B);
  auto f = src.functor(A, C);
  o.instance = "g: " + detail::shape(*A) + " -> " + detail::shape(*B) + ", f into lattice " + detail::shape(*C);
  auto lan = left_kan(g, f, {.verify_universal = false});
  const auto& Bc = *B;
  std::vector<PresheafExtension> ext;
  std::vector<Cone> cols;
  std::vector<ObjId> obj;
  for (std::size_t b = 0; b < Bc.object_count(); ++b) {
    ext.push_back(lan_of_yoneda(g, static_cast<ObjId>(b)));
    auto c = realize(f, ext.back().colimit.object);
    cols.push_back(*c);
    obj.push_back(c->apex);
  }
  std::vector<MorId> mor;
  for (std::size_t beta = 0; beta < Bc.morphism_count(); ++beta) {
    auto s = static_cast<std::size_t>(Bc.dom(static_cast<MorId>(beta)));
    auto t = static_cast<std::size_t>(Bc.cod(static_cast<MorId>(beta)));
    auto fam = lan_of_yoneda_map(g, ext[s], ext[t], static_cast<MorId>(beta));
    mor.push_back(realize_map(f, ext[s].colimit.object, cols[s], ext[t].colimit.object, cols[t], fam));
  }
  Functor pointwise(B, C, obj, mor);
  bool ok = detail::iso(lan.functor(), pointwise);
  o.verdict = ok ? Verdict::pass : Verdict::fail;
  o.detail = ok ? "Lan_g f ~ realize_f(Lan_g y)" : "[" + detail::objects_of(lan.functor()) + "] vs [" + detail::objects_of(pointwise) + "]";
  return o;
}

inline LawOutcome law_pointwise_ran(InstanceSource& src) {
  LawOutcome o;
  auto A = src.category(3), B = src.category(3);
  auto C = src.lattice();
  auto g = src.functor(A, B);
  auto f = src.functor(A, C);
  o.instance = "g: " + detail::shape(*A) + " -> " + detail::shape(*B) + ", f into lattice " + detail::shape(*C);
  auto ran = right_kan(g, f, {.verify_universal = false});
  const auto& Bc = *B;
  std::vector<CopresheafExtension> ext;
  std::vector<Cone> lims;
  std::vector<ObjId> obj;
  for (std::size_t b = 0; b < Bc.object_count(); ++b) {
    ext.push_back(ran_of_coyoneda(g, static_cast<ObjId>(b)));
    auto c = corealize(f, ext.back().colimit.object);
    lims.push_back(*c);
    obj.push_back(c->apex);
  }
  std::vector<MorId> mor;
  for (std::size_t beta = 0; beta < Bc.morphism_count(); ++beta) {
    auto s = static_cast<std::size_t>(Bc.dom(static_cast<MorId>(beta)));
    auto t = static_cast<std::size_t>(Bc.cod(static_cast<MorId>(beta)));
    // Q_t → Q_s, then corealize turns it around: corealize(Q_s) → corealize(Q_t).
    auto fam = ran_of_coyoneda_map(g, ext[t], ext[s], static_cast<MorId>(beta));
    mor.push_back(corealize_map(f, ext[t].colimit.object, lims[t], ext[s].colimit.object, lims[s], fam));
  }
  Functor pointwise(B, C, obj, mor);
  bool ok = detail::iso(ran.functor(), pointwise);
  o.verdict = ok ? Verdict::pass : Verdict::fail;
  o.detail = ok ? "Ran_g f ~ corealize_f(Ran_g y#)" : "[" + detail::objects_of(ran.functor()) + "] vs [" + detail::objects_of(pointwise) + "]";
  return o;
}

/// Runs each selected law on `instances` seeded instances.  Budget overruns
/// skip the instance and are counted.
inline LawSuiteReport run_kan_law_suite(const LawSuiteSettings& settings = {}) {
  std::vector<LawCase> cases{
      law_simplify,
      law_compose,
      law_preserve,
      law_density,
      law_adjoint_existence,
      [&](InstanceSource& s) { return law_nerve(s, settings.max_elements); },
      law_pointwise_lan,
      law_pointwise_ran,
  };
  LawSuiteReport report;
  for (std::size_t l = 0; l < cases.size(); ++l) {
    const auto& name = law_names()[l];
    if (!settings.only.empty() && std::find(settings.only.begin(), settings.only.end(), name) == settings.only.end()) continue;
    InstanceSource src(settings.seed * 1'000'003ULL + l, settings.max_objects);
    LawResult lr{name, {}};
    for (std::size_t i = 0; i < settings.instances; ++i) {
      LawOutcome o;
      try {
        o = cases[l](src);
      } catch (const BudgetExceeded& e) {
        o.verdict = Verdict::skipped;
        o.detail = e.what();
      }
      o.index = i;
      lr.outcomes.push_back(std::move(o));
    }
    report.laws.push_back(std::move(lr));
  }
  return report;
}

}  // namespace codensity
