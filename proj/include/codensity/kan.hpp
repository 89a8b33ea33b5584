#pragma once

// Pointwise Kan extensions over finite categories, density tests, adjunction
// detection and geometric realization against presheaves.

#include <optional>
#include <string>
#include <vector>

#include "codensity/fincat.hpp"
#include "codensity/limits.hpp"
#include "codensity/presheaf.hpp"

namespace codensity {

struct KanOptions {
  // Check the universal property against every competitor when the categories
  // involved are small enough (see Caps::verify_universal_max_objects).
  bool verify_universal = true;
};

/// A pointwise Kan extension, possibly existing only at some objects.
struct KanResult {
  enum class Side { right, left };
  Side side = Side::right;
  // Right: (b ↓ F) with the limit cone of G∘proj.  Left: (b ↓ F°), whose
  // objects are the arrows F a → b, with the colimit cocone of G∘proj.
  std::vector<CommaCategory> commas;
  std::vector<std::optional<Cone>> cones;
  std::vector<ObjId> missing;
  std::optional<Functor> extension;
  // Right: counit Ran∘F ⇒ G.  Left: unit G ⇒ Lan∘F.
  std::optional<NatTransformation> universal;
  std::optional<bool> universal_verified;

  bool exists() const { return extension.has_value(); }
  const Functor& functor() const {
    if (!extension) throw Error("Kan extension does not exist at object " + std::to_string(missing.front()));
    return *extension;
  }
};

namespace detail {

inline void require_valid_functor(const Functor& f, const char* what) {
  auto v = Functor::violations(f.source(), f.target(), f.object_map(), f.morphism_map());
  if (!v.empty()) throw Error(std::string(what) + " is not functorial: " + v.front());
}

// Exhaustive check that τ ↦ ε∘(τF) is a bijection Nat(H, R) → Nat(H∘F, G)
// for every functor H: B → C.
inline std::optional<bool> verify_right_universal(const Functor& F, const Functor& G, const Functor& R,
                                                  const NatTransformation& counit) {
  const auto& B = F.target();
  const auto& C = G.target();
  const std::size_t limit = caps().verify_universal_max_objects;
  if (B.object_count() > limit || C.object_count() > limit + 2 || C.morphism_count() > 24) return std::nullopt;
  try {
    ScopedCaps local([] {
      Caps c = caps();
      c.max_search_nodes = std::min<std::size_t>(c.max_search_nodes, 2'000'000);
      return c;
    }());
    bool ok = true;
    FunctorSearch search(F.target_ptr(), G.target_ptr());
    search.enumerate([&](const Functor& H) {
      auto HF = compose(H, F);
      auto sigmas = find_natural_transformations(HF, G);
      auto taus = find_natural_transformations(H, R);
      std::vector<std::vector<MorId>> images;
      for (const auto& tau : taus) images.push_back(vertical(counit, whisker(tau, F)).components());
      std::sort(images.begin(), images.end());
      bool injective = std::adjacent_find(images.begin(), images.end()) == images.end();
      ok = injective && images.size() == sigmas.size();
      return ok;
    });
    return ok;
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
}

}  // namespace detail

/// Ran_F G (b) = lim over (b ↓ F) of G∘proj, for F: A → B and G: A → C.
inline KanResult right_kan(const Functor& F, const Functor& G, const KanOptions& opt = {}) {
  if (!Functor::same_category(F.source_ptr(), G.source_ptr()))
    throw InputError("right_kan needs functors with a shared source");
  const auto& B = F.target();
  const auto& C = G.target();
  KanResult out;
  out.side = KanResult::Side::right;
  for (std::size_t b = 0; b < B.object_count(); ++b) {
    auto comma = comma_category(static_cast<ObjId>(b), F);
    auto diagram = compose(G, comma.projection);
    auto cone = limit_in_category(diagram);
    if (!cone) out.missing.push_back(static_cast<ObjId>(b));
    out.commas.push_back(std::move(comma));
    out.cones.push_back(std::move(cone));
  }
  if (!out.missing.empty()) return out;

  std::vector<ObjId> obj(B.object_count());
  for (std::size_t b = 0; b < obj.size(); ++b) obj[b] = out.cones[b]->apex;
  std::vector<MorId> mor(B.morphism_count());
  for (std::size_t g = 0; g < mor.size(); ++g) {
    auto b = static_cast<std::size_t>(B.dom(static_cast<MorId>(g)));
    auto b2 = static_cast<std::size_t>(B.cod(static_cast<MorId>(g)));
    const auto& target_comma = out.commas[b2];
    Cone induced{obj[b], std::vector<MorId>(target_comma.arrow.size())};
    for (std::size_t j = 0; j < induced.legs.size(); ++j) {
      auto src = out.commas[b].find(target_comma.source_object[j], B.compose(target_comma.arrow[j], static_cast<MorId>(g)));
      induced.legs[j] = out.cones[b]->legs[static_cast<std::size_t>(*src)];
    }
    auto h = factor_through_limit(C, *out.cones[b2], induced);
    if (!h) throw Error("induced cone does not factor through the limit");
    mor[g] = *h;
  }
  Functor R = Functor::unchecked(F.target_ptr(), G.target_ptr(), std::move(obj), std::move(mor));
  detail::require_valid_functor(R, "right Kan extension");

  const auto& A = F.source();
  std::vector<MorId> eps(A.object_count());
  for (std::size_t a = 0; a < eps.size(); ++a) {
    ObjId fa = F.on_object(static_cast<ObjId>(a));
    auto j = out.commas[static_cast<std::size_t>(fa)].find(static_cast<ObjId>(a), B.identity(fa));
    eps[a] = out.cones[static_cast<std::size_t>(fa)]->legs[static_cast<std::size_t>(*j)];
  }
  NatTransformation counit(compose(R, F), G, std::move(eps));
  if (opt.verify_universal) out.universal_verified = detail::verify_right_universal(F, G, R, counit);
  out.extension = std::move(R);
  out.universal = std::move(counit);
  return out;
}

/// Lan_F G computed as (Ran_{F°} G°)°.
inline KanResult left_kan(const Functor& F, const Functor& G, const KanOptions& opt = {}) {
  if (!Functor::same_category(F.source_ptr(), G.source_ptr()))
    throw InputError("left_kan needs functors with a shared source");
  auto a_op = opposite_category(F.source_ptr());
  auto Fop = opposite(F, a_op, opposite_category(F.target_ptr()));
  auto Gop = opposite(G, a_op, opposite_category(G.target_ptr()));
  KanResult r = right_kan(Fop, Gop, opt);
  r.side = KanResult::Side::left;
  if (r.extension) {
    Functor L = Functor::unchecked(F.target_ptr(), G.target_ptr(), r.extension->object_map(), r.extension->morphism_map());
    NatTransformation unit = NatTransformation::unchecked(G, compose(L, F), r.universal->components());
    r.extension = std::move(L);
    r.universal = std::move(unit);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Density

struct DensityReport {
  bool holds = false;
  std::vector<ObjId> missing;              // objects where the Kan extension is missing
  std::optional<Functor> extension;        // Lan_i i (dense) or Ran_i i (codense)
  std::optional<NatTransformation> witness;  // iso to the identity
};

inline DensityReport is_dense(const Functor& i) {
  DensityReport r;
  auto k = left_kan(i, i, {.verify_universal = false});
  r.missing = k.missing;
  if (!k.exists()) return r;
  r.extension = k.extension;
  r.witness = find_natural_isomorphism(*k.extension, Functor::identity(i.target_ptr()));
  r.holds = r.witness.has_value();
  return r;
}

inline DensityReport is_codense(const Functor& i) {
  DensityReport r;
  auto k = right_kan(i, i, {.verify_universal = false});
  r.missing = k.missing;
  if (!k.exists()) return r;
  r.extension = k.extension;
  r.witness = find_natural_isomorphism(*k.extension, Functor::identity(i.target_ptr()));
  r.holds = r.witness.has_value();
  return r;
}

/// B(f−, b) as a presheaf on f's source.
inline Presheaf nerve(const Functor& f, ObjId b) {
  const auto& A = f.source();
  const auto& B = f.target();
  auto pos = detail::hom_positions(B);
  std::vector<FinSet> at;
  for (std::size_t a = 0; a < A.object_count(); ++a) {
    std::vector<std::string> t;
    for (MorId g : B.hom(f.on_object(static_cast<ObjId>(a)), b)) t.push_back(B.morphism_name(g));
    at.emplace_back(std::move(t));
  }
  std::vector<std::vector<int>> act(A.morphism_count());
  for (std::size_t h = 0; h < A.morphism_count(); ++h) {
    MorId fh = f.on_morphism(static_cast<MorId>(h));
    for (MorId g : B.hom(B.cod(fh), b)) act[h].push_back(pos[static_cast<std::size_t>(B.compose(g, fh))]);
  }
  return Presheaf::unchecked(f.source_ptr(), std::move(at), std::move(act));
}

/// The nerve map B(f−, b) → B(f−, b') given by postcomposition with β.
inline Family nerve_map(const Functor& f, MorId beta) {
  const auto& A = f.source();
  const auto& B = f.target();
  auto pos = detail::hom_positions(B);
  Family fam(A.object_count());
  for (std::size_t a = 0; a < A.object_count(); ++a)
    for (MorId g : B.hom(f.on_object(static_cast<ObjId>(a)), B.dom(beta)))
      fam[a].push_back(pos[static_cast<std::size_t>(B.compose(beta, g))]);
  return fam;
}

/// Whether b ↦ B(i−, b) is fully faithful: every natural family
/// B(i−, b) ⇒ B(i−, b') comes from exactly one β: b → b'.
inline bool nerve_fully_faithful(const Functor& i) {
  const auto& B = i.target();
  std::vector<Presheaf> n;
  for (std::size_t b = 0; b < B.object_count(); ++b) n.push_back(nerve(i, static_cast<ObjId>(b)));
  for (std::size_t b = 0; b < B.object_count(); ++b)
    for (std::size_t b2 = 0; b2 < B.object_count(); ++b2) {
      auto nat = natural_families(n[b], n[b2]);
      auto hom = B.hom(static_cast<ObjId>(b), static_cast<ObjId>(b2));
      if (nat.size() != hom.size()) return false;
      std::vector<Family> images;
      for (MorId beta : hom) images.push_back(nerve_map(i, beta));
      std::sort(images.begin(), images.end());
      if (images != nat) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Adjunctions

struct Adjunction {
  Functor left;
  Functor right;
  NatTransformation unit;    // id ⇒ R∘L
  NatTransformation counit;  // L∘R ⇒ id
};

struct AdjunctionCheck {
  std::optional<Adjunction> adjunction;
  std::string failure;
  bool holds() const { return adjunction.has_value(); }
};

/// Searches a unit η: id ⇒ R∘L for which g ↦ R(g)∘η_c is a bijection
/// hom(Lc, d) → hom(c, Rd) for every d; builds the counit and checks the
/// triangle identities.
inline AdjunctionCheck check_adjunction(const Functor& L, const Functor& R) {
  AdjunctionCheck out;
  if (!Functor::same_category(L.source_ptr(), R.target_ptr()) || !Functor::same_category(L.target_ptr(), R.source_ptr())) {
    out.failure = "functors do not run in opposite directions";
    return out;
  }
  const auto& C = L.source();
  const auto& D = L.target();
  for (std::size_t c = 0; c < C.object_count(); ++c)
    for (std::size_t d = 0; d < D.object_count(); ++d) {
      auto left = D.hom(L.on_object(static_cast<ObjId>(c)), static_cast<ObjId>(d)).size();
      auto right = C.hom(static_cast<ObjId>(c), R.on_object(static_cast<ObjId>(d))).size();
      if (left != right) {
        out.failure = "hom-set cardinalities differ at (" + C.object_name(static_cast<ObjId>(c)) + "," +
                      D.object_name(static_cast<ObjId>(d)) + "): " + std::to_string(left) + " vs " + std::to_string(right);
        return out;
      }
    }
  auto RL = compose(R, L);
  NatSearchOptions opt;
  opt.max_results = 1;
  opt.component_filter = [&](ObjId c, MorId eta) {
    for (std::size_t d = 0; d < D.object_count(); ++d) {
      std::vector<MorId> images;
      for (MorId g : D.hom(L.on_object(c), static_cast<ObjId>(d))) images.push_back(C.compose(R.on_morphism(g), eta));
      std::sort(images.begin(), images.end());
      if (std::adjacent_find(images.begin(), images.end()) != images.end()) return false;
    }
    return true;
  };
  auto units = find_natural_transformations(Functor::identity(L.source_ptr()), RL, opt);
  if (units.empty()) {
    out.failure = "no unit makes the hom-set maps bijective";
    return out;
  }
  const auto& unit = units.front();
  std::vector<MorId> eps(D.object_count());
  for (std::size_t d = 0; d < D.object_count(); ++d) {
    ObjId rd = R.on_object(static_cast<ObjId>(d));
    for (MorId g : D.hom(L.on_object(rd), static_cast<ObjId>(d)))
      if (C.compose(R.on_morphism(g), unit.component(rd)) == C.identity(rd)) eps[d] = g;
  }
  auto counit = NatTransformation::unchecked(compose(L, R), Functor::identity(L.target_ptr()), eps);
  if (!NatTransformation::violations(counit.source(), counit.target(), eps).empty()) {
    out.failure = "counit is not natural";
    return out;
  }
  // Triangle identities: εL ∘ Lη = 1_L and Rε ∘ ηR = 1_R.
  auto t1 = vertical(whisker(counit, L), whisker(L, unit));
  auto t2 = vertical(whisker(R, counit), whisker(unit, R));
  if (t1 != NatTransformation::identity(L) || t2 != NatTransformation::identity(R)) {
    out.failure = "triangle identities fail";
    return out;
  }
  out.adjunction = Adjunction{L, R, unit, counit};
  return out;
}

/// An object with exactly one arrow to every object.
inline std::optional<ObjId> initial_object(const FinCategory& c) {
  for (std::size_t a = 0; a < c.object_count(); ++a) {
    bool ok = true;
    for (std::size_t b = 0; b < c.object_count() && ok; ++b) ok = c.hom(static_cast<ObjId>(a), static_cast<ObjId>(b)).size() == 1;
    if (ok) return static_cast<ObjId>(a);
  }
  return std::nullopt;
}

/// Does H send the limit cone over d to a limit cone over H∘d?
inline bool preserves_limit(const Functor& H, const Functor& d, const Cone& cone) {
  auto Hd = compose(H, d);
  auto lim = limit_in_category(Hd);
  if (!lim) return false;
  Cone image{H.on_object(cone.apex), {}};
  for (MorId leg : cone.legs) image.legs.push_back(H.on_morphism(leg));
  auto h = factor_through_limit(H.target(), *lim, image);
  return h && H.target().is_iso(*h);
}

struct AdjointResult {
  std::optional<Functor> adjoint;
  std::string reason;  // why not, when adjoint is empty
  std::optional<Adjunction> adjunction;
};

/// R: A → B is a right adjoint iff Ran_R(1_A) exists and R preserves it; the
/// extension is then the left adjoint.  Cross-checked with check_adjunction.
inline AdjointResult left_adjoint_via_ran(const Functor& R) {
  AdjointResult out;
  auto k = right_kan(R, Functor::identity(R.source_ptr()), {.verify_universal = false});
  if (!k.exists()) {
    out.reason = "not a right adjoint: Ran_R(1) missing at '" + R.target().object_name(k.missing.front()) + "'";
    return out;
  }
  for (std::size_t b = 0; b < R.target().object_count(); ++b) {
    auto d = k.commas[b].projection;
    if (!preserves_limit(R, d, *k.cones[b])) {
      out.reason = "not a right adjoint: R does not preserve Ran_R(1) at '" + R.target().object_name(static_cast<ObjId>(b)) + "'";
      return out;
    }
  }
  auto adj = check_adjunction(*k.extension, R);
  if (!adj.holds()) throw Error("Ran_R(1) is preserved but is not a left adjoint: " + adj.failure);
  out.adjoint = k.extension;
  out.adjunction = std::move(adj.adjunction);
  return out;
}

/// Dual: L is a left adjoint iff L° is a right adjoint.
inline AdjointResult right_adjoint_via_lan(const Functor& L) {
  auto Lop = opposite(L);
  auto r = left_adjoint_via_ran(Lop);
  AdjointResult out;
  out.reason = r.reason;
  if (r.adjoint) {
    out.adjoint = Functor::unchecked(L.target_ptr(), L.source_ptr(), r.adjoint->object_map(), r.adjoint->morphism_map());
    auto adj = check_adjunction(L, *out.adjoint);
    if (!adj.holds()) throw Error("dual left adjoint check disagrees: " + adj.failure);
    out.adjunction = std::move(adj.adjunction);
  }
  return out;
}

/// Universal-arrow test: R is a right adjoint iff every (b ↓ R) has an initial object.
inline bool has_left_adjoint_by_universal_arrows(const Functor& R) {
  for (std::size_t b = 0; b < R.target().object_count(); ++b)
    if (!initial_object(*comma_category(static_cast<ObjId>(b), R).category)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Geometric realization and its dual

namespace detail {

template <Variance V>
std::vector<int> element_offsets(const SetFunctor<V>& p) {
  std::vector<int> off(p.base().object_count() + 1, 0);
  for (std::size_t a = 0; a < p.base().object_count(); ++a)
    off[a + 1] = off[a] + static_cast<int>(p.at(static_cast<ObjId>(a)).size());
  return off;
}

}  // namespace detail

/// Lan_y f (P): colimit in f's target of f∘π over el(P); nullopt when absent.
inline std::optional<Cone> realize(const Functor& f, const Presheaf& p) {
  auto el = elements(p);
  return colimit_in_category(compose(f, el.projection));
}

/// Ran_{y♯} f (Q): limit in f's target of f∘π over el(Q).
inline std::optional<Cone> corealize(const Functor& f, const Copresheaf& q) {
  auto el = elements(q);
  return limit_in_category(compose(f, el.projection));
}

/// realize(α): realize(P) → realize(P') for α: P → P'.
inline MorId realize_map(const Functor& f, const Presheaf& p, const Cone& colim, const Presheaf& p2,
                         const Cone& colim2, const Family& alpha) {
  auto off = detail::element_offsets(p);
  auto off2 = detail::element_offsets(p2);
  Cone cocone{colim2.apex, std::vector<MorId>(colim.legs.size())};
  for (std::size_t a = 0; a + 1 < off.size(); ++a)
    for (int x = 0; x < off[a + 1] - off[a]; ++x)
      cocone.legs[static_cast<std::size_t>(off[a] + x)] =
          colim2.legs[static_cast<std::size_t>(off2[a] + alpha[a][static_cast<std::size_t>(x)])];
  auto h = factor_through_colimit(f.target(), colim, cocone);
  if (!h) throw Error("realization of a presheaf map does not factor");
  return *h;
}

/// corealize(β): corealize(Q') → corealize(Q) for β: Q → Q'.
inline MorId corealize_map(const Functor& f, const Copresheaf& q, const Cone& lim, const Copresheaf& q2,
                           const Cone& lim2, const Family& beta) {
  auto off = detail::element_offsets(q);
  auto off2 = detail::element_offsets(q2);
  Cone cone{lim2.apex, std::vector<MorId>(lim.legs.size())};
  for (std::size_t a = 0; a + 1 < off.size(); ++a)
    for (int x = 0; x < off[a + 1] - off[a]; ++x)
      cone.legs[static_cast<std::size_t>(off[a] + x)] =
          lim2.legs[static_cast<std::size_t>(off2[a] + beta[a][static_cast<std::size_t>(x)])];
  auto h = factor_through_limit(f.target(), lim, cone);
  if (!h) throw Error("corealization of a copresheaf map does not factor");
  return *h;
}

/// Lan_g y (b) = colimit over (g ↓ b) of y∘proj, computed pointwise in presheaves.
struct PresheafExtension {
  CommaCategory comma;
  PointwiseResult<Variance::contravariant> colimit;
};

inline PresheafExtension lan_of_yoneda(const Functor& g, ObjId b) {
  auto comma = comma_category(g, b);
  const auto& A = g.source();
  SetFunctorDiagram<Variance::contravariant> d{comma.category, {}, {}};
  std::vector<Presheaf> ys;
  for (std::size_t a = 0; a < A.object_count(); ++a) ys.push_back(yoneda(g.source_ptr(), static_cast<ObjId>(a)));
  for (ObjId a : comma.source_object) d.nodes.push_back(ys[static_cast<std::size_t>(a)]);
  for (std::size_t h = 0; h < comma.category->morphism_count(); ++h)
    d.maps.push_back(yoneda_map(A, comma.projection.on_morphism(static_cast<MorId>(h))));
  auto col = pointwise_colimit(d, g.source_ptr());
  return {std::move(comma), std::move(col)};
}

/// Lan_g y (β): Lan_g y (b) → Lan_g y (b'), sending the class of (j, x) to the
/// class of (j', x) where j = (a, φ) and j' = (a, β∘φ).
inline Family lan_of_yoneda_map(const Functor& g, const PresheafExtension& from, const PresheafExtension& to, MorId beta) {
  const auto& A = g.source();
  const auto& B = g.target();
  Family fam(A.object_count());
  for (std::size_t a2 = 0; a2 < A.object_count(); ++a2) {
    fam[a2].assign(from.colimit.object.at(static_cast<ObjId>(a2)).size(), -1);
    for (std::size_t j = 0; j < from.comma.arrow.size(); ++j) {
      auto j2 = to.comma.find(from.comma.source_object[j], B.compose(beta, from.comma.arrow[j]));
      const auto& inj = from.colimit.legs[j][a2];
      const auto& inj2 = to.colimit.legs[static_cast<std::size_t>(*j2)][a2];
      for (std::size_t x = 0; x < inj.size(); ++x) fam[a2][static_cast<std::size_t>(inj[x])] = inj2[x];
    }
  }
  return fam;
}

/// Ran_g y♯ (b): a limit in copresheaves-opposite, i.e. the colimit over
/// (b ↓ g)° of the copresheaves A(a, −).
struct CopresheafExtension {
  CommaCategory comma;
  PointwiseResult<Variance::covariant> colimit;
};

inline CopresheafExtension ran_of_coyoneda(const Functor& g, ObjId b) {
  auto comma = comma_category(b, g);
  const auto& A = g.source();
  SetFunctorDiagram<Variance::covariant> d{opposite_category(comma.category), {}, {}};
  std::vector<Copresheaf> ys;
  for (std::size_t a = 0; a < A.object_count(); ++a) ys.push_back(coyoneda(g.source_ptr(), static_cast<ObjId>(a)));
  for (ObjId a : comma.source_object) d.nodes.push_back(ys[static_cast<std::size_t>(a)]);
  for (std::size_t h = 0; h < comma.category->morphism_count(); ++h)
    d.maps.push_back(coyoneda_map(A, comma.projection.on_morphism(static_cast<MorId>(h))));
  auto col = pointwise_colimit(d, g.source_ptr());
  return {std::move(comma), std::move(col)};
}

/// For β: b → b', the copresheaf map Ran_g y♯ (b') → Ran_g y♯ (b) sending
/// node (a, f') to node (a, f'∘β).
inline Family ran_of_coyoneda_map(const Functor& g, const CopresheafExtension& from_b2,
                                  const CopresheafExtension& to_b, MorId beta) {
  const auto& A = g.source();
  const auto& B = g.target();
  Family fam(A.object_count());
  for (std::size_t a2 = 0; a2 < A.object_count(); ++a2) {
    fam[a2].assign(from_b2.colimit.object.at(static_cast<ObjId>(a2)).size(), -1);
    for (std::size_t j = 0; j < from_b2.comma.arrow.size(); ++j) {
      auto j2 = to_b.comma.find(from_b2.comma.source_object[j], B.compose(from_b2.comma.arrow[j], beta));
      const auto& inj = from_b2.colimit.legs[j][a2];
      const auto& inj2 = to_b.colimit.legs[static_cast<std::size_t>(*j2)][a2];
      for (std::size_t x = 0; x < inj.size(); ++x) fam[a2][static_cast<std::size_t>(inj[x])] = inj2[x];
    }
  }
  return fam;
}

}  // namespace codensity
