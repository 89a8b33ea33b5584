#pragma once

// Monads on finite categories: codensity monads, Eilenberg–Moore categories,
// monad morphisms, fixed points, idempotency, arity and the search for a
// generating full subcategory.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "codensity/fincat.hpp"
#include "codensity/kan.hpp"
#include "codensity/limits.hpp"

namespace codensity {

class Monad {
 public:
  Monad(Functor endofunctor, NatTransformation unit, NatTransformation mult)
      : t_(std::move(endofunctor)), unit_(std::move(unit)), mult_(std::move(mult)) {
    if (!Functor::same_category(t_.source_ptr(), t_.target_ptr()))
      throw InputError("a monad needs an endofunctor");
  }

  static Monad identity(const CategoryPtr& c) {
    auto id = Functor::identity(c);
    return Monad(id, NatTransformation::identity(id), NatTransformation::identity(id));
  }

  const FinCategory& carrier() const { return t_.source(); }
  const CategoryPtr& carrier_ptr() const { return t_.source_ptr(); }
  const Functor& functor() const { return t_; }
  const NatTransformation& unit() const { return unit_; }
  const NatTransformation& mult() const { return mult_; }
  ObjId on_object(ObjId k) const { return t_.on_object(k); }
  MorId eta(ObjId k) const { return unit_.component(k); }
  MorId mu(ObjId k) const { return mult_.component(k); }

 private:
  Functor t_;
  NatTransformation unit_;
  NatTransformation mult_;
};

struct LawReport {
  std::vector<std::string> failures;
  bool holds() const { return failures.empty(); }
};

/// Functor laws, naturality of η and μ, and the three monad laws per object.
inline LawReport check_monad_laws(const Monad& m) {
  LawReport r;
  const auto& K = m.carrier();
  const auto& T = m.functor();
  for (const auto& v : Functor::violations(K, K, T.object_map(), T.morphism_map())) r.failures.push_back("endofunctor: " + v);
  if (!r.failures.empty()) return r;
  auto TT = compose(T, T);
  for (const auto& v : NatTransformation::violations(Functor::identity(m.carrier_ptr()), T, m.unit().components()))
    r.failures.push_back("unit: " + v);
  for (const auto& v : NatTransformation::violations(TT, T, m.mult().components()))
    r.failures.push_back("multiplication: " + v);
  if (!r.failures.empty()) return r;
  for (std::size_t k = 0; k < K.object_count(); ++k) {
    auto kk = static_cast<ObjId>(k);
    ObjId tk = T.on_object(kk);
    const auto& name = K.object_name(kk);
    if (K.compose(m.mu(kk), T.on_morphism(m.eta(kk))) != K.identity(tk))
      r.failures.push_back("left unit law fails at '" + name + "'");
    if (K.compose(m.mu(kk), m.eta(tk)) != K.identity(tk))
      r.failures.push_back("right unit law fails at '" + name + "'");
    if (K.compose(m.mu(kk), T.on_morphism(m.mu(kk))) != K.compose(m.mu(kk), m.mu(tk)))
      r.failures.push_back("associativity fails at '" + name + "'");
  }
  return r;
}

// ---------------------------------------------------------------------------
// Codensity monads

namespace detail {

// The unique factorization through a limit cone; uniqueness is re-checked.
inline MorId unique_factor(const FinCategory& c, const Cone& lim, const Cone& other, const char* what) {
  std::optional<MorId> found;
  for (MorId h : c.hom(other.apex, lim.apex)) {
    bool ok = true;
    for (std::size_t j = 0; j < lim.legs.size() && ok; ++j) ok = c.compose(lim.legs[j], h) == other.legs[j];
    if (!ok) continue;
    if (found) throw Error(std::string(what) + ": factorization is not unique");
    found = h;
  }
  if (!found) throw Error(std::string(what) + ": cone does not factor through the limit");
  return *found;
}

}  // namespace detail

struct CodensityResult {
  KanResult kan;
  std::optional<Monad> monad;
  bool exists() const { return monad.has_value(); }
};

/// T = Ran_i i with η and μ obtained by factoring the evident cones.
inline CodensityResult codensity_monad(const Functor& i, const KanOptions& opt = {.verify_universal = false}) {
  CodensityResult out{right_kan(i, i, opt), std::nullopt};
  if (!out.kan.exists()) return out;
  const auto& K = i.target();
  const auto& T = out.kan.functor();
  const auto& commas = out.kan.commas;
  const auto& cones = out.kan.cones;
  std::vector<MorId> eta(K.object_count()), mu(K.object_count());
  for (std::size_t k = 0; k < K.object_count(); ++k) {
    const auto& comma = commas[k];
    // η_k factors the cone (a, f) ↦ f.
    Cone id_cone{static_cast<ObjId>(k), comma.arrow};
    eta[k] = detail::unique_factor(K, *cones[k], id_cone, "unit");
    // μ_k factors the cone (a, f) ↦ λ^{Tk}_{(a, λ^k_{(a,f)})} out of T(T k).
    auto tk = static_cast<std::size_t>(T.on_object(static_cast<ObjId>(k)));
    Cone twice{T.on_object(static_cast<ObjId>(tk)), std::vector<MorId>(comma.arrow.size())};
    for (std::size_t j = 0; j < comma.arrow.size(); ++j) {
      auto j2 = commas[tk].find(comma.source_object[j], cones[k]->legs[j]);
      twice.legs[j] = cones[tk]->legs[static_cast<std::size_t>(*j2)];
    }
    mu[k] = detail::unique_factor(K, *cones[k], twice, "multiplication");
  }
  auto unit = NatTransformation::unchecked(Functor::identity(i.target_ptr()), T, std::move(eta));
  auto mult = NatTransformation::unchecked(compose(T, T), T, std::move(mu));
  Monad m(T, std::move(unit), std::move(mult));
  auto laws = check_monad_laws(m);
  if (!laws.holds()) throw Error("codensity monad violates the monad laws: " + laws.failures.front());
  out.monad = std::move(m);
  return out;
}

inline CodensityResult codensity_monad(const FullSubcategory& sub) { return codensity_monad(sub.inclusion); }

/// A monad on a thin category given only by its object map, if it is one
/// (monotone, inflationary, idempotent up to order).
inline std::optional<Monad> thin_monad(const CategoryPtr& k, const std::vector<ObjId>& object_map) {
  const auto& K = *k;
  if (!K.is_thin()) throw InputError("thin_monad needs a thin category");
  std::vector<MorId> mor(K.morphism_count());
  for (std::size_t f = 0; f < mor.size(); ++f) {
    auto a = K.arrow(object_map[static_cast<std::size_t>(K.dom(static_cast<MorId>(f)))],
                     object_map[static_cast<std::size_t>(K.cod(static_cast<MorId>(f)))]);
    if (!a) return std::nullopt;
    mor[f] = *a;
  }
  auto T = Functor::unchecked(k, k, object_map, mor);
  std::vector<MorId> eta(K.object_count()), mu(K.object_count());
  for (std::size_t x = 0; x < K.object_count(); ++x) {
    ObjId tx = object_map[x];
    auto e = K.arrow(static_cast<ObjId>(x), tx);
    auto m = K.arrow(object_map[static_cast<std::size_t>(tx)], tx);
    if (!e || !m) return std::nullopt;
    eta[x] = *e;
    mu[x] = *m;
  }
  return Monad(T, NatTransformation::unchecked(Functor::identity(k), T, eta),
               NatTransformation::unchecked(compose(T, T), T, mu));
}

// ---------------------------------------------------------------------------
// Monad morphisms and isomorphisms

struct MonadMorphism {
  Monad source;
  Monad target;
  NatTransformation components;  // S ⇒ T
};

/// φ∘η_S = η_T and φ∘μ_S = μ_T∘(φ★φ), where (φ★φ)_k = φ_{Tk}∘S(φ_k).
inline LawReport check_monad_morphism(const MonadMorphism& phi) {
  LawReport r;
  const auto& K = phi.source.carrier();
  const auto& S = phi.source;
  const auto& T = phi.target;
  for (const auto& v : NatTransformation::violations(S.functor(), T.functor(), phi.components.components()))
    r.failures.push_back(v);
  if (!r.failures.empty()) return r;
  for (std::size_t k = 0; k < K.object_count(); ++k) {
    auto kk = static_cast<ObjId>(k);
    MorId p = phi.components.component(kk);
    if (K.compose(p, S.eta(kk)) != T.eta(kk)) r.failures.push_back("unit compatibility fails at '" + K.object_name(kk) + "'");
    MorId star = K.compose(phi.components.component(T.on_object(kk)), S.functor().on_morphism(p));
    if (K.compose(p, S.mu(kk)) != K.compose(T.mu(kk), star))
      r.failures.push_back("multiplication compatibility fails at '" + K.object_name(kk) + "'");
  }
  return r;
}

inline MonadMorphism identity_morphism(const Monad& m) {
  return {m, m, NatTransformation::identity(m.functor())};
}

inline MonadMorphism compose(const MonadMorphism& outer, const MonadMorphism& inner) {
  return {inner.source, outer.target, vertical(outer.components, inner.components)};
}

/// First natural isomorphism S ≅ T (canonical order) that is also a monad morphism.
inline std::optional<MonadMorphism> find_monad_isomorphism(const Monad& s, const Monad& t) {
  if (!Functor::same_category(s.carrier_ptr(), t.carrier_ptr())) return std::nullopt;
  NatSearchOptions opt;
  opt.require_iso = true;
  opt.max_results = 1;
  opt.accept = [&](const std::vector<MorId>& comps) {
    MonadMorphism m{s, t, NatTransformation::unchecked(s.functor(), t.functor(), comps)};
    return check_monad_morphism(m).holds();
  };
  auto r = find_natural_transformations(s.functor(), t.functor(), opt);
  if (r.empty()) return std::nullopt;
  return MonadMorphism{s, t, r.front()};
}

inline std::optional<MonadMorphism> inverse(const MonadMorphism& m) {
  auto inv = m.components.inverse();
  if (!inv) return std::nullopt;
  return MonadMorphism{m.target, m.source, *inv};
}

// ---------------------------------------------------------------------------
// Eilenberg–Moore categories

struct EMAlgebra {
  ObjId carrier;
  MorId structure;  // ξ: T(k) → k
  friend bool operator==(const EMAlgebra&, const EMAlgebra&) = default;
};

struct EMCategory {
  CategoryPtr category;
  std::vector<EMAlgebra> algebras;
  Functor forgetful;  // Alg → K
  Functor free;       // K → Alg, k ↦ (T k, μ_k)
  std::optional<Adjunction> adjunction;  // free ⊣ forgetful
  std::string adjunction_failure;

  std::optional<ObjId> find(const EMAlgebra& a) const {
    for (std::size_t i = 0; i < algebras.size(); ++i)
      if (algebras[i] == a) return static_cast<ObjId>(i);
    return std::nullopt;
  }
};

inline bool is_algebra(const Monad& m, const EMAlgebra& a) {
  const auto& K = m.carrier();
  return K.dom(a.structure) == m.on_object(a.carrier) && K.cod(a.structure) == a.carrier &&
         K.compose(a.structure, m.eta(a.carrier)) == K.identity(a.carrier) &&
         K.compose(a.structure, m.functor().on_morphism(a.structure)) == K.compose(a.structure, m.mu(a.carrier));
}

/// All structure maps per object, filtered by ξ∘η = id first and then
/// associativity; morphisms are the maps making the algebra square commute.
inline EMCategory em_category(const Monad& m) {
  const auto& K = m.carrier();
  const auto& T = m.functor();
  std::vector<EMAlgebra> algs;
  for (std::size_t k = 0; k < K.object_count(); ++k) {
    auto kk = static_cast<ObjId>(k);
    for (MorId xi : K.hom(T.on_object(kk), kk)) {
      if (K.compose(xi, m.eta(kk)) != K.identity(kk)) continue;
      if (K.compose(xi, T.on_morphism(xi)) != K.compose(xi, m.mu(kk))) continue;
      algs.push_back({kk, xi});
    }
  }
  std::vector<std::string> names;
  for (const auto& a : algs) names.push_back("(" + K.object_name(a.carrier) + "," + K.morphism_name(a.structure) + ")");
  std::vector<MorphismInfo> mors;
  std::vector<MorId> under;
  std::map<std::tuple<int, int, MorId>, MorId> index;
  for (std::size_t x = 0; x < algs.size(); ++x)
    for (std::size_t y = 0; y < algs.size(); ++y)
      for (MorId h : K.hom(algs[x].carrier, algs[y].carrier)) {
        if (K.compose(h, algs[x].structure) != K.compose(algs[y].structure, T.on_morphism(h))) continue;
        index[{static_cast<int>(x), static_cast<int>(y), h}] = static_cast<MorId>(mors.size());
        mors.push_back({K.morphism_name(h) + ":" + names[x] + "->" + names[y], static_cast<ObjId>(x), static_cast<ObjId>(y)});
        under.push_back(h);
      }
  const std::size_t mc = mors.size();
  if (mc > caps().max_internal_morphisms) throw BudgetExceeded("algebra category too large");
  std::vector<MorId> table(mc * mc, kNoMorphism);
  for (std::size_t g = 0; g < mc; ++g)
    for (std::size_t f = 0; f < mc; ++f) {
      if (mors[f].cod != mors[g].dom) continue;
      table[g * mc + f] = index.at({mors[f].dom, mors[g].cod, K.compose(under[g], under[f])});
    }
  std::vector<MorId> ids;
  for (std::size_t x = 0; x < algs.size(); ++x)
    ids.push_back(index.at({static_cast<int>(x), static_cast<int>(x), K.identity(algs[x].carrier)}));
  auto cat = share(FinCategory::assemble(names, mors, ids, table));
  std::vector<ObjId> uobj;
  for (const auto& a : algs) uobj.push_back(a.carrier);
  auto forgetful = Functor::unchecked(cat, m.carrier_ptr(), uobj, under);
  std::vector<ObjId> fobj(K.object_count());
  for (std::size_t k = 0; k < K.object_count(); ++k) {
    EMAlgebra freealg{T.on_object(static_cast<ObjId>(k)), m.mu(static_cast<ObjId>(k))};
    auto pos = std::find(algs.begin(), algs.end(), freealg);
    if (pos == algs.end()) throw Error("free algebra missing from the algebra enumeration");
    fobj[k] = static_cast<ObjId>(pos - algs.begin());
  }
  std::vector<MorId> fmor(K.morphism_count());
  for (std::size_t h = 0; h < fmor.size(); ++h) {
    auto d = fobj[static_cast<std::size_t>(K.dom(static_cast<MorId>(h)))];
    auto c = fobj[static_cast<std::size_t>(K.cod(static_cast<MorId>(h)))];
    fmor[h] = index.at({d, c, T.on_morphism(static_cast<MorId>(h))});
  }
  auto free = Functor::unchecked(m.carrier_ptr(), cat, fobj, fmor);
  EMCategory out{cat, std::move(algs), std::move(forgetful), std::move(free), std::nullopt, {}};
  if (compose(out.forgetful, out.free) != T) throw Error("forgetful after free differs from the monad");
  auto adj = check_adjunction(out.free, out.forgetful);
  out.adjunction = std::move(adj.adjunction);
  out.adjunction_failure = adj.failure;
  return out;
}

/// For φ: S ⇒ T, the functor Alg(T) → Alg(S), (k, ξ) ↦ (k, ξ∘φ_k).
inline Functor comparison_from_monad_morphism(const MonadMorphism& phi, const EMCategory& alg_t, const EMCategory& alg_s) {
  const auto& K = phi.source.carrier();
  std::vector<ObjId> obj;
  for (const auto& a : alg_t.algebras) {
    EMAlgebra image{a.carrier, K.compose(a.structure, phi.components.component(a.carrier))};
    if (!is_algebra(phi.source, image)) throw Error("comparison image is not an algebra");
    obj.push_back(*alg_s.find(image));
  }
  const auto& AT = *alg_t.category;
  const auto& AS = *alg_s.category;
  std::vector<MorId> mor;
  for (std::size_t f = 0; f < AT.morphism_count(); ++f) {
    MorId h = alg_t.forgetful.on_morphism(static_cast<MorId>(f));
    auto d = obj[static_cast<std::size_t>(AT.dom(static_cast<MorId>(f)))];
    auto c = obj[static_cast<std::size_t>(AT.cod(static_cast<MorId>(f)))];
    std::optional<MorId> found;
    for (MorId g : AS.hom(d, c))
      if (alg_s.forgetful.on_morphism(g) == h) found = g;
    if (!found) throw Error("comparison image of an algebra map is not an algebra map");
    mor.push_back(*found);
  }
  return Functor(alg_t.category, alg_s.category, std::move(obj), std::move(mor));
}

/// For u: A → B and i: B → K, the canonical morphism T_i ⇒ T_{i∘u}: at k it
/// factors the cone (π^{T_i k}_{(u a, g)})_{(a, g)} through the limit for T_{i∘u}.
struct RestrictionComparison {
  CodensityResult outer;  // T_i
  CodensityResult inner;  // T_{i∘u}
  std::optional<MonadMorphism> morphism;
  LawReport laws;
};

inline RestrictionComparison restriction_comparison(const Functor& u, const Functor& i) {
  auto iu = compose(i, u);
  RestrictionComparison out{codensity_monad(i), codensity_monad(iu), std::nullopt, {}};
  if (!out.outer.exists() || !out.inner.exists()) {
    out.laws.failures.push_back("a codensity monad does not exist");
    return out;
  }
  const auto& K = i.target();
  std::vector<MorId> comps(K.object_count());
  for (std::size_t k = 0; k < K.object_count(); ++k) {
    const auto& comma_iu = out.inner.kan.commas[k];
    const auto& comma_i = out.outer.kan.commas[k];
    const auto& cone_i = *out.outer.kan.cones[k];
    Cone c{cone_i.apex, std::vector<MorId>(comma_iu.arrow.size())};
    for (std::size_t j = 0; j < c.legs.size(); ++j) {
      auto j2 = comma_i.find(u.on_object(comma_iu.source_object[j]), comma_iu.arrow[j]);
      c.legs[j] = cone_i.legs[static_cast<std::size_t>(*j2)];
    }
    comps[k] = detail::unique_factor(K, *out.inner.kan.cones[k], c, "restriction comparison");
  }
  MonadMorphism m{*out.outer.monad, *out.inner.monad,
                  NatTransformation::unchecked(out.outer.monad->functor(), out.inner.monad->functor(), comps)};
  out.laws = check_monad_morphism(m);
  out.morphism = std::move(m);
  return out;
}

// ---------------------------------------------------------------------------
// Fixed points and idempotency

struct FixedPoints {
  FullSubcategory subcategory;
  std::vector<EMAlgebra> lifts;  // (k, η_k⁻¹)
};

inline FixedPoints fixed_points(const Monad& m) {
  const auto& K = m.carrier();
  std::vector<ObjId> objs;
  std::vector<EMAlgebra> lifts;
  for (std::size_t k = 0; k < K.object_count(); ++k) {
    auto inv = K.inverse(m.eta(static_cast<ObjId>(k)));
    if (!inv) continue;
    objs.push_back(static_cast<ObjId>(k));
    lifts.push_back({static_cast<ObjId>(k), *inv});
  }
  return {full_subcategory(m.carrier_ptr(), objs), std::move(lifts)};
}

struct IdempotencyRow {
  ObjId object;
  bool eta_iso;
  bool mu_iso;
  bool eta_at_image_iso;  // η_{T k}
  bool provable_equivalence_holds() const { return mu_iso == eta_at_image_iso; }
  bool literal_equivalence_holds() const { return mu_iso == eta_iso; }
};

struct IdempotencyReport {
  std::vector<IdempotencyRow> rows;
  std::size_t provable_violations() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.provable_equivalence_holds(); }));
  }
  std::size_t literal_disagreements() const {
    return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.literal_equivalence_holds(); }));
  }
  bool idempotent() const {
    return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.mu_iso; });
  }
};

inline IdempotencyReport idempotency_analysis(const Monad& m) {
  IdempotencyReport r;
  const auto& K = m.carrier();
  for (std::size_t k = 0; k < K.object_count(); ++k) {
    auto kk = static_cast<ObjId>(k);
    r.rows.push_back({kk, K.is_iso(m.eta(kk)), K.is_iso(m.mu(kk)), K.is_iso(m.eta(m.on_object(kk)))});
  }
  return r;
}

// ---------------------------------------------------------------------------
// Arity

struct ArityReport {
  bool holds = false;
  std::vector<ObjId> missing;
  std::optional<Functor> extension;  // Lan_i (F∘i)
  std::optional<NatTransformation> witness;
};

/// Does F recover as Lan_i(F∘i)?
inline ArityReport arity_check(const Functor& F, const FullSubcategory& sub) {
  ArityReport r;
  auto k = left_kan(sub.inclusion, compose(F, sub.inclusion), {.verify_universal = false});
  r.missing = k.missing;
  if (!k.exists()) return r;
  r.extension = k.extension;
  r.witness = find_natural_isomorphism(*k.extension, F);
  r.holds = r.witness.has_value();
  return r;
}

struct ArityTheoremReport {
  enum class Verdict { pass, vacuous, not_dense, no_monad, hard_failure } verdict;
  ArityReport arity;
  std::optional<Monad> monad;
};

/// If T_i has arity A (with A dense) then T_i must be the identity monad.
inline ArityTheoremReport verify_arity_theorem(const FullSubcategory& sub) {
  ArityTheoremReport r{ArityTheoremReport::Verdict::not_dense, {}, std::nullopt};
  if (!is_dense(sub.inclusion).holds) return r;
  auto cod = codensity_monad(sub);
  if (!cod.exists()) {
    r.verdict = ArityTheoremReport::Verdict::no_monad;
    return r;
  }
  r.monad = cod.monad;
  r.arity = arity_check(cod.monad->functor(), sub);
  if (!r.arity.holds) {
    r.verdict = ArityTheoremReport::Verdict::vacuous;
    return r;
  }
  bool is_id = find_monad_isomorphism(*cod.monad, Monad::identity(sub.parent)).has_value();
  r.verdict = is_id ? ArityTheoremReport::Verdict::pass : ArityTheoremReport::Verdict::hard_failure;
  return r;
}

// ---------------------------------------------------------------------------
// Generically idempotent monads

struct GiResult {
  std::optional<FullSubcategory> witness;
  std::optional<MonadMorphism> isomorphism;  // M ⇒ T_A
  std::size_t subsets_tried = 0;
  bool exhausted = false;  // every candidate subset was tried
};

/// Smallest full subcategory A (ascending size, then lexicographic) whose
/// codensity monad is isomorphic to M.  Candidates are subsets of the fixed
/// points unless pruning is switched off.
inline GiResult gi_search(const Monad& m, bool prune_to_fixed_points = true) {
  GiResult out;
  std::vector<ObjId> pool;
  if (prune_to_fixed_points) pool = fixed_points(m).subcategory.objects;
  else for (std::size_t k = 0; k < m.carrier().object_count(); ++k) pool.push_back(static_cast<ObjId>(k));
  const std::size_t n = pool.size();
  for (std::size_t size = 0; size <= n; ++size) {
    std::vector<char> pick(n, 0);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), 1);
    do {
      if (++out.subsets_tried > caps().max_subsets) throw BudgetExceeded("generic idempotency search exceeded the subset cap");
      std::vector<ObjId> objs;
      for (std::size_t i = 0; i < n; ++i)
        if (pick[i]) objs.push_back(pool[i]);
      auto sub = full_subcategory(m.carrier_ptr(), objs);
      auto t = codensity_monad(sub);
      if (!t.exists()) continue;
      auto iso = find_monad_isomorphism(m, *t.monad);
      if (iso) {
        out.witness = std::move(sub);
        out.isomorphism = std::move(iso);
        return out;
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  out.exhausted = true;
  return out;
}

// ---------------------------------------------------------------------------
// Codensity in the algebra category and the equalizer presentation

struct CodenseInAlgebras {
  bool lifts_exist = false;  // every object of A is a fixed point
  bool codense = false;
  bool idempotent_on_subcategory = false;
  std::optional<bool> gi_confirmed;  // set when codense and idempotent on A
};

/// Is A, lifted into Alg(M) by (a, η_a⁻¹), codense there?
inline CodenseInAlgebras codense_in_algebras(const FullSubcategory& sub, const Monad& m, const EMCategory& alg) {
  CodenseInAlgebras r;
  const auto& K = m.carrier();
  std::vector<ObjId> lifted;
  for (ObjId a : sub.objects) {
    auto inv = K.inverse(m.eta(a));
    if (!inv) return r;
    lifted.push_back(*alg.find({a, *inv}));
  }
  r.lifts_exist = true;
  // The lift j∘k: A → Alg(M) agrees with the inclusion on hom-sets because
  // every map between fixed points is an algebra map.
  std::vector<MorId> mor;
  const auto& A = *sub.category;
  for (std::size_t f = 0; f < A.morphism_count(); ++f) {
    MorId h = sub.inclusion.on_morphism(static_cast<MorId>(f));
    auto d = lifted[static_cast<std::size_t>(A.dom(static_cast<MorId>(f)))];
    auto c = lifted[static_cast<std::size_t>(A.cod(static_cast<MorId>(f)))];
    std::optional<MorId> found;
    for (MorId g : alg.category->hom(d, c))
      if (alg.forgetful.on_morphism(g) == h) found = g;
    if (!found) throw Error("a map between fixed points is not an algebra map");
    mor.push_back(*found);
  }
  Functor lift(sub.category, alg.category, lifted, mor);
  r.codense = is_codense(lift).holds;
  r.idempotent_on_subcategory = std::all_of(sub.objects.begin(), sub.objects.end(), [&](ObjId a) { return K.is_iso(m.mu(a)); });
  if (r.codense && r.idempotent_on_subcategory) r.gi_confirmed = gi_search(m).witness.has_value();
  return r;
}

struct EqualizerCertificate {
  std::optional<Cone> equalizer;  // over the parallel pair (η_k∘ξ, 1_{T k})
  std::optional<MorId> iso_to_carrier;  // equalizer apex → k
};

/// k ≅ Eq(η_k∘ξ, 1_{T k}) for an algebra (k, ξ).
inline EqualizerCertificate limit_dense_witness(const Monad& m, const EMAlgebra& a) {
  const auto& K = m.carrier();
  auto pair = parallel_pair_category();
  ObjId tk = m.on_object(a.carrier);
  // The pair shape has morphisms id_s, id_t, p, q in that order.
  Functor d = Functor::unchecked(pair, m.carrier_ptr(), {tk, tk},
                                 {K.identity(tk), K.identity(tk), K.compose(m.eta(a.carrier), a.structure), K.identity(tk)});
  EqualizerCertificate c;
  c.equalizer = limit_in_category(d);
  if (!c.equalizer) return c;
  // The cone (η_k, η_k) from k factors through the equalizer; it is an iso.
  Cone from_k{a.carrier, {m.eta(a.carrier), m.eta(a.carrier)}};
  auto h = factor_through_limit(K, *c.equalizer, from_k);
  if (h) {
    auto inv = K.inverse(*h);
    if (inv) c.iso_to_carrier = *inv;
  }
  return c;
}

// ---------------------------------------------------------------------------
// Fixed-point conjecture probe

struct ConjectureProbe {
  FixedPoints fixed;
  CodensityResult fixed_codensity;  // T_i for i: Fix ⊂ K
  GiResult gi;
  std::optional<MonadMorphism> monad_iso_to_fixed;  // M ≅ T_i as monads, if any
  std::optional<MonadMorphism> phi;  // T_i ⇒ T_l
  std::optional<MonadMorphism> psi;  // T_{U} ⇒ T_i
  std::optional<MonadMorphism> to_algebra_codensity;  // M ≅ T_{U}
  bool phi_iso = false;
  bool psi_iso = false;
  bool mutually_inverse = false;
  std::string note;
};

/// Builds φ = restriction along k: A ⊂ Fix and ψ = restriction along j: Fix → Alg,
/// closes the loop through M ≅ T_l and M ≅ T_{U}, and reports whether the two
/// are mutually inverse.  Evidence only; nothing is asserted.
inline ConjectureProbe conjecture_probe(const Monad& m) {
  ConjectureProbe p{fixed_points(m), {}, {}, {}, {}, {}, {}, false, false, false, {}};
  const auto& K = m.carrier();
  p.fixed_codensity = codensity_monad(p.fixed.subcategory);
  if (p.fixed_codensity.exists()) {
    auto iso = find_monad_isomorphism(m, *p.fixed_codensity.monad);
    if (iso) p.monad_iso_to_fixed = std::move(iso);
  }
  p.gi = gi_search(m);
  if (!p.gi.witness || !p.fixed_codensity.exists()) {
    p.note = !p.gi.witness ? "no generating subcategory found" : "codensity monad of the fixed points does not exist";
    return p;
  }
  const auto& fix = p.fixed.subcategory;
  const auto& A = *p.gi.witness;
  // k: A → Fix with i∘k = l.
  std::vector<ObjId> kobj;
  for (ObjId a : A.objects) kobj.push_back(static_cast<ObjId>(std::lower_bound(fix.objects.begin(), fix.objects.end(), a) - fix.objects.begin()));
  std::vector<MorId> kmor;
  for (std::size_t f = 0; f < A.category->morphism_count(); ++f)
    kmor.push_back(*fix.category->find_morphism(A.category->morphism_name(static_cast<MorId>(f))));
  Functor kf(A.category, fix.category, kobj, kmor);
  auto phi = restriction_comparison(kf, fix.inclusion);
  if (phi.morphism && phi.laws.holds()) p.phi = phi.morphism;

  // j: Fix → Alg(M), k ↦ (k, η_k⁻¹); U∘j = i.
  auto alg = em_category(m);
  std::vector<ObjId> jobj;
  for (const auto& l : p.fixed.lifts) jobj.push_back(*alg.find(l));
  std::vector<MorId> jmor;
  for (std::size_t f = 0; f < fix.category->morphism_count(); ++f) {
    MorId h = fix.inclusion.on_morphism(static_cast<MorId>(f));
    auto d = jobj[static_cast<std::size_t>(fix.category->dom(static_cast<MorId>(f)))];
    auto c = jobj[static_cast<std::size_t>(fix.category->cod(static_cast<MorId>(f)))];
    for (MorId g : alg.category->hom(d, c))
      if (alg.forgetful.on_morphism(g) == h) jmor.push_back(g);
  }
  Functor jf(fix.category, alg.category, jobj, jmor);
  auto psi = restriction_comparison(jf, alg.forgetful);
  if (psi.morphism && psi.laws.holds()) p.psi = psi.morphism;
  if (psi.outer.exists()) {
    auto iso = find_monad_isomorphism(m, *psi.outer.monad);
    if (iso) p.to_algebra_codensity = std::move(iso);
  }
  if (!p.phi || !p.psi || !p.to_algebra_codensity) {
    p.note = "a comparison map or structure isomorphism is missing";
    return p;
  }
  p.phi_iso = p.phi->components.is_iso();
  p.psi_iso = p.psi->components.is_iso();
  // Loop: T_i → T_l ≅ M ≅ T_U → T_i and back.
  auto l_to_m = inverse(*p.gi.isomorphism);
  auto back = compose(*p.psi, compose(*p.to_algebra_codensity, compose(*l_to_m, *p.phi)));
  auto forth = compose(*p.phi, compose(*p.psi, compose(*p.to_algebra_codensity, *l_to_m)));
  p.mutually_inverse = back.components == NatTransformation::identity(back.components.source()) &&
                       forth.components == NatTransformation::identity(forth.components.source());
  (void)K;
  return p;
}

}  // namespace codensity
