#pragma once

// Finite-set-valued functors on a finite base: presheaves (contravariant) and
// copresheaves (covariant), Yoneda embeddings, natural-family enumeration and
// pointwise (co)limits.  The presheaf category itself is never materialized.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "codensity/fincat.hpp"
#include "codensity/finset.hpp"
#include "codensity/search.hpp"

namespace codensity {

enum class Variance { covariant, contravariant };

constexpr Variance flip(Variance v) {
  return v == Variance::covariant ? Variance::contravariant : Variance::covariant;
}

/// One function per base object: component[a][x] is the image of x ∈ P(a).
using Family = std::vector<std::vector<int>>;

template <Variance V>
class SetFunctor {
 public:
  /// `act[f]` maps the set at source_of(f) to the set at target_of(f).
  SetFunctor(CategoryPtr base, std::vector<FinSet> at, std::vector<std::vector<int>> act)
      : base_(std::move(base)), at_(std::move(at)), act_(std::move(act)) {
    auto v = violations(*base_, at_, act_);
    if (!v.empty()) {
      std::string msg = V == Variance::covariant ? "invalid copresheaf:" : "invalid presheaf:";
      for (const auto& s : v) msg += "\n  " + s;
      throw InputError(msg);
    }
  }

  static SetFunctor unchecked(CategoryPtr base, std::vector<FinSet> at, std::vector<std::vector<int>> act) {
    return SetFunctor(std::move(base), std::move(at), std::move(act), 0);
  }

  static ObjId source_of(const FinCategory& c, MorId f) {
    return V == Variance::covariant ? c.dom(f) : c.cod(f);
  }
  static ObjId target_of(const FinCategory& c, MorId f) {
    return V == Variance::covariant ? c.cod(f) : c.dom(f);
  }

  static std::vector<std::string> violations(const FinCategory& c, const std::vector<FinSet>& at,
                                             const std::vector<std::vector<int>>& act) {
    std::vector<std::string> v;
    if (at.size() != c.object_count() || act.size() != c.morphism_count()) {
      v.push_back("value tables do not match the base category");
      return v;
    }
    for (std::size_t f = 0; f < act.size(); ++f) {
      const auto& s = at[static_cast<std::size_t>(source_of(c, static_cast<MorId>(f)))];
      const auto& t = at[static_cast<std::size_t>(target_of(c, static_cast<MorId>(f)))];
      const auto& m = act[f];
      bool ok = m.size() == s.size() &&
                std::all_of(m.begin(), m.end(), [&](int y) { return y >= 0 && static_cast<std::size_t>(y) < t.size(); });
      if (!ok) v.push_back("action of '" + c.morphism_name(static_cast<MorId>(f)) + "' is not a function between the right sets");
    }
    if (!v.empty()) return v;
    for (std::size_t a = 0; a < at.size(); ++a) {
      const auto& m = act[static_cast<std::size_t>(c.identity(static_cast<ObjId>(a)))];
      for (std::size_t x = 0; x < m.size(); ++x)
        if (m[x] != static_cast<int>(x)) {
          v.push_back("identity of '" + c.object_name(static_cast<ObjId>(a)) + "' does not act as the identity");
          break;
        }
    }
    for (std::size_t g = 0; g < act.size(); ++g)
      for (std::size_t f = 0; f < act.size(); ++f) {
        MorId gf = c.compose(static_cast<MorId>(g), static_cast<MorId>(f));
        if (gf == kNoMorphism) continue;
        auto expected = V == Variance::covariant ? compose_maps(act[g], act[f]) : compose_maps(act[f], act[g]);
        if (expected != act[static_cast<std::size_t>(gf)])
          v.push_back("action of composite " + c.morphism_name(static_cast<MorId>(g)) + " . " +
                      c.morphism_name(static_cast<MorId>(f)) + " is inconsistent");
      }
    return v;
  }

  const FinCategory& base() const { return *base_; }
  const CategoryPtr& base_ptr() const { return base_; }
  const FinSet& at(ObjId a) const { return at_[static_cast<std::size_t>(a)]; }
  const std::vector<FinSet>& sets() const { return at_; }
  const std::vector<int>& action(MorId f) const { return act_[static_cast<std::size_t>(f)]; }
  const std::vector<std::vector<int>>& actions() const { return act_; }
  int act(MorId f, int x) const { return act_[static_cast<std::size_t>(f)][static_cast<std::size_t>(x)]; }
  ObjId source_of(MorId f) const { return source_of(*base_, f); }
  ObjId target_of(MorId f) const { return target_of(*base_, f); }

  std::size_t total_size() const {
    std::size_t n = 0;
    for (const auto& s : at_) n += s.size();
    return n;
  }

  friend bool operator==(const SetFunctor& x, const SetFunctor& y) {
    return Functor::same_category(x.base_, y.base_) && x.at_ == y.at_ && x.act_ == y.act_;
  }

 private:
  SetFunctor(CategoryPtr base, std::vector<FinSet> at, std::vector<std::vector<int>> act, int)
      : base_(std::move(base)), at_(std::move(at)), act_(std::move(act)) {}

  CategoryPtr base_;
  std::vector<FinSet> at_;
  std::vector<std::vector<int>> act_;
};

using Presheaf = SetFunctor<Variance::contravariant>;
using Copresheaf = SetFunctor<Variance::covariant>;

/// The same data read over the opposite base.
template <Variance V>
SetFunctor<flip(V)> over_opposite(const SetFunctor<V>& p, const CategoryPtr& opposite_base) {
  return SetFunctor<flip(V)>::unchecked(opposite_base, p.sets(), p.actions());
}

template <Variance V>
Diagram as_diagram(const SetFunctor<V>& p, const CategoryPtr& opposite_base = nullptr) {
  if constexpr (V == Variance::covariant) {
    return Diagram{p.base_ptr(), p.sets(), p.actions()};
  } else {
    return Diagram{opposite_base ? opposite_base : opposite_category(p.base_ptr()), p.sets(), p.actions()};
  }
}

// ---------------------------------------------------------------------------
// Basic presheaves

namespace detail {

inline std::vector<int> hom_positions(const FinCategory& c) {
  std::vector<int> pos(c.morphism_count(), -1);
  for (std::size_t a = 0; a < c.object_count(); ++a)
    for (std::size_t b = 0; b < c.object_count(); ++b) {
      auto h = c.hom(static_cast<ObjId>(a), static_cast<ObjId>(b));
      for (std::size_t i = 0; i < h.size(); ++i) pos[static_cast<std::size_t>(h[i])] = static_cast<int>(i);
    }
  return pos;
}

}  // namespace detail

/// hom(−, a): morphism tokens, acting by precomposition.
inline Presheaf yoneda(const CategoryPtr& c, ObjId a) {
  const auto& C = *c;
  auto pos = detail::hom_positions(C);
  std::vector<FinSet> at;
  for (std::size_t b = 0; b < C.object_count(); ++b) {
    std::vector<std::string> t;
    for (MorId g : C.hom(static_cast<ObjId>(b), a)) t.push_back(C.morphism_name(g));
    at.emplace_back(std::move(t));
  }
  std::vector<std::vector<int>> act(C.morphism_count());
  for (std::size_t f = 0; f < C.morphism_count(); ++f) {
    auto hs = C.hom(C.cod(static_cast<MorId>(f)), a);
    for (MorId g : hs) act[f].push_back(pos[static_cast<std::size_t>(C.compose(g, static_cast<MorId>(f)))]);
  }
  return Presheaf::unchecked(c, std::move(at), std::move(act));
}

/// hom(a, −): morphism tokens, acting by postcomposition.
inline Copresheaf coyoneda(const CategoryPtr& c, ObjId a) {
  const auto& C = *c;
  auto pos = detail::hom_positions(C);
  std::vector<FinSet> at;
  for (std::size_t b = 0; b < C.object_count(); ++b) {
    std::vector<std::string> t;
    for (MorId g : C.hom(a, static_cast<ObjId>(b))) t.push_back(C.morphism_name(g));
    at.emplace_back(std::move(t));
  }
  std::vector<std::vector<int>> act(C.morphism_count());
  for (std::size_t f = 0; f < C.morphism_count(); ++f) {
    auto hs = C.hom(a, C.dom(static_cast<MorId>(f)));
    for (MorId g : hs) act[f].push_back(pos[static_cast<std::size_t>(C.compose(static_cast<MorId>(f), g))]);
  }
  return Copresheaf::unchecked(c, std::move(at), std::move(act));
}

/// y(h): y(a) → y(a') by postcomposition with h: a → a'.
inline Family yoneda_map(const FinCategory& c, MorId h) {
  auto pos = detail::hom_positions(c);
  Family fam(c.object_count());
  for (std::size_t b = 0; b < c.object_count(); ++b)
    for (MorId g : c.hom(static_cast<ObjId>(b), c.dom(h)))
      fam[b].push_back(pos[static_cast<std::size_t>(c.compose(h, g))]);
  return fam;
}

/// y♯(h): y♯(a') → y♯(a) by precomposition with h: a → a'.
inline Family coyoneda_map(const FinCategory& c, MorId h) {
  auto pos = detail::hom_positions(c);
  Family fam(c.object_count());
  for (std::size_t b = 0; b < c.object_count(); ++b)
    for (MorId g : c.hom(c.cod(h), static_cast<ObjId>(b)))
      fam[b].push_back(pos[static_cast<std::size_t>(c.compose(g, h))]);
  return fam;
}

template <Variance V>
SetFunctor<V> constant_set_functor(const CategoryPtr& c, const FinSet& s) {
  std::vector<std::vector<int>> act(c->morphism_count(), FinFunction::identity(s).map);
  return SetFunctor<V>::unchecked(c, std::vector<FinSet>(c->object_count(), s), std::move(act));
}

template <Variance V>
SetFunctor<V> terminal_set_functor(const CategoryPtr& c) {
  return constant_set_functor<V>(c, FinSet(std::vector<std::string>{"*"}));
}

template <Variance V>
SetFunctor<V> empty_set_functor(const CategoryPtr& c) {
  return constant_set_functor<V>(c, FinSet());
}

// ---------------------------------------------------------------------------
// Natural families

template <Variance V>
bool is_natural(const SetFunctor<V>& p, const SetFunctor<V>& q, const Family& fam) {
  const auto& C = p.base();
  if (fam.size() != C.object_count()) return false;
  for (std::size_t a = 0; a < fam.size(); ++a) {
    if (fam[a].size() != p.at(static_cast<ObjId>(a)).size()) return false;
    for (int y : fam[a])
      if (y < 0 || static_cast<std::size_t>(y) >= q.at(static_cast<ObjId>(a)).size()) return false;
  }
  for (std::size_t f = 0; f < C.morphism_count(); ++f) {
    auto s = static_cast<std::size_t>(p.source_of(static_cast<MorId>(f)));
    auto t = static_cast<std::size_t>(p.target_of(static_cast<MorId>(f)));
    for (std::size_t x = 0; x < fam[s].size(); ++x)
      if (fam[t][static_cast<std::size_t>(p.act(static_cast<MorId>(f), static_cast<int>(x)))] !=
          q.act(static_cast<MorId>(f), fam[s][x]))
        return false;
  }
  return true;
}

inline Family compose_families(const Family& outer, const Family& inner) {
  Family r(inner.size());
  for (std::size_t a = 0; a < inner.size(); ++a) r[a] = compose_maps(outer[a], inner[a]);
  return r;
}

template <Variance V>
Family identity_family(const SetFunctor<V>& p) {
  Family r;
  for (const auto& s : p.sets()) r.push_back(FinFunction::identity(s).map);
  return r;
}

inline bool is_bijective_family(const Family& fam, const std::vector<std::size_t>& target_sizes) {
  for (std::size_t a = 0; a < fam.size(); ++a) {
    if (fam[a].size() != target_sizes[a]) return false;
    std::vector<char> seen(target_sizes[a], 0);
    for (int y : fam[a]) {
      if (seen[static_cast<std::size_t>(y)]) return false;
      seen[static_cast<std::size_t>(y)] = 1;
    }
  }
  return true;
}

template <Variance V>
std::vector<std::size_t> sizes(const SetFunctor<V>& p) {
  std::vector<std::size_t> s;
  for (const auto& x : p.sets()) s.push_back(x.size());
  return s;
}

inline Family invert_family(const Family& fam) {
  Family r(fam.size());
  for (std::size_t a = 0; a < fam.size(); ++a) {
    r[a].assign(fam[a].size(), -1);
    for (std::size_t x = 0; x < fam[a].size(); ++x) r[a][static_cast<std::size_t>(fam[a][x])] = static_cast<int>(x);
  }
  return r;
}

/// Natural families P ⇒ Q, sorted lexicographically by component lists.
struct NatSet {
  FinSet set;
  std::vector<Family> families;

  std::optional<int> find(const Family& fam) const {
    auto it = std::lower_bound(families.begin(), families.end(), fam);
    if (it == families.end() || *it != fam) return std::nullopt;
    return static_cast<int>(it - families.begin());
  }
  std::size_t size() const { return families.size(); }
};

template <Variance V>
std::string family_token(const SetFunctor<V>& q, const Family& fam) {
  std::string s = "<";
  for (std::size_t a = 0; a < fam.size(); ++a) {
    if (a) s += ";";
    for (std::size_t x = 0; x < fam[a].size(); ++x) {
      if (x) s += ",";
      s += q.at(static_cast<ObjId>(a)).token(fam[a][x]);
    }
  }
  return s + ">";
}

struct NatSearch {
  bool bijective = false;  // only natural isomorphisms
  // Components already known: fixed[a][x] >= 0 pins the image of x.
  Family fixed;
  std::size_t max_results = SIZE_MAX;
};

/// Enumerates natural families by propagating every naturality square from each
/// element assignment.  Objects are branched in ascending order of |Q(a)|.
template <Variance V>
std::vector<Family> natural_families(const SetFunctor<V>& p, const SetFunctor<V>& q, const NatSearch& opt = {}) {
  if (!Functor::same_category(p.base_ptr(), q.base_ptr()))
    throw InputError("natural families need a shared base category");
  const auto& C = p.base();
  const std::size_t n = C.object_count();
  if (opt.bijective) {
    for (std::size_t a = 0; a < n; ++a)
      if (p.at(static_cast<ObjId>(a)).size() != q.at(static_cast<ObjId>(a)).size()) return {};
  }
  FunctionalCsp csp;
  std::vector<int> offset(n + 1, 0);
  for (std::size_t a = 0; a < n; ++a) {
    offset[a + 1] = offset[a] + static_cast<int>(p.at(static_cast<ObjId>(a)).size());
    for (std::size_t x = 0; x < p.at(static_cast<ObjId>(a)).size(); ++x)
      csp.add_variable(static_cast<int>(q.at(static_cast<ObjId>(a)).size()), opt.bijective ? static_cast<int>(a) : -1);
  }
  csp.require_distinct_groups(opt.bijective);
  for (std::size_t f = 0; f < C.morphism_count(); ++f) {
    if (C.is_identity(static_cast<MorId>(f))) continue;
    auto s = static_cast<std::size_t>(p.source_of(static_cast<MorId>(f)));
    auto t = static_cast<std::size_t>(p.target_of(static_cast<MorId>(f)));
    for (std::size_t x = 0; x < p.at(static_cast<ObjId>(s)).size(); ++x) {
      int tx = p.act(static_cast<MorId>(f), static_cast<int>(x));
      csp.add_constraint(offset[s] + static_cast<int>(x), offset[t] + tx, q.action(static_cast<MorId>(f)));
    }
  }
  // Pinned components become constraints from a one-valued anchor variable.
  if (!opt.fixed.empty()) {
    int anchor = csp.add_variable(1);
    for (std::size_t a = 0; a < n && a < opt.fixed.size(); ++a)
      for (std::size_t x = 0; x < opt.fixed[a].size(); ++x)
        if (opt.fixed[a][x] >= 0) csp.add_constraint(anchor, offset[a] + static_cast<int>(x), {opt.fixed[a][x]});
  }
  std::vector<int> objs(n);
  std::iota(objs.begin(), objs.end(), 0);
  std::stable_sort(objs.begin(), objs.end(), [&](int a, int b) {
    return q.at(a).size() < q.at(b).size();
  });
  std::vector<int> order;
  if (!opt.fixed.empty()) order.push_back(static_cast<int>(csp.variable_count()) - 1);
  for (int a : objs)
    for (int v = offset[static_cast<std::size_t>(a)]; v < offset[static_cast<std::size_t>(a) + 1]; ++v) order.push_back(v);

  SearchBudget budget("natural family search");
  std::vector<Family> out;
  csp.solve(
      [&](const std::vector<int>& val) {
        Family fam(n);
        for (std::size_t a = 0; a < n; ++a)
          fam[a].assign(val.begin() + offset[a], val.begin() + offset[a + 1]);
        out.push_back(std::move(fam));
        if (out.size() > caps().max_tuples) throw BudgetExceeded("too many natural families");
        return out.size() < opt.max_results;
      },
      order, budget);
  std::sort(out.begin(), out.end());
  return out;
}

template <Variance V>
NatSet nat_set(const SetFunctor<V>& p, const SetFunctor<V>& q) {
  NatSet out;
  out.families = natural_families(p, q);
  std::vector<std::string> tokens;
  tokens.reserve(out.families.size());
  for (const auto& f : out.families) tokens.push_back(family_token(q, f));
  out.set = FinSet(std::move(tokens));
  return out;
}

struct YonedaBijection {
  std::size_t families = 0;  // |Nat(y a, P)|
  std::size_t elements = 0;  // |P(a)|
  bool bijective = false;    // evaluation at 1_a
};

/// Nat(y a, P) → P(a), θ ↦ θ_a(1_a), checked for bijectivity.
inline YonedaBijection yoneda_bijection(const Presheaf& p, const CategoryPtr& base, ObjId a) {
  auto ya = yoneda(base, a);
  auto nats = natural_families(ya, p);
  YonedaBijection r{nats.size(), p.at(a).size(), false};
  auto id = ya.at(a).find(base->morphism_name(base->identity(a)));
  std::vector<bool> hit(r.elements, false);
  bool injective = true;
  for (const auto& fam : nats) {
    auto x = static_cast<std::size_t>(fam[static_cast<std::size_t>(a)][static_cast<std::size_t>(*id)]);
    injective = injective && !hit[x];
    hit[x] = true;
  }
  r.bijective = injective && r.families == r.elements;
  return r;
}

/// First natural isomorphism P ≅ Q (optionally agreeing with pinned values).
template <Variance V>
std::optional<Family> find_isomorphism(const SetFunctor<V>& p, const SetFunctor<V>& q, Family fixed = {}) {
  NatSearch opt;
  opt.bijective = true;
  opt.fixed = std::move(fixed);
  opt.max_results = 1;
  auto r = natural_families(p, q, opt);
  if (r.empty()) return std::nullopt;
  return r.front();
}

// ---------------------------------------------------------------------------
// Pointwise limits and colimits

/// A diagram of (co)presheaves: one node per shape object, one natural family
/// per shape morphism.
template <Variance V>
struct SetFunctorDiagram {
  CategoryPtr shape;
  std::vector<SetFunctor<V>> nodes;
  std::vector<Family> maps;

  Diagram at(ObjId b) const {
    Diagram d{shape, {}, {}};
    for (const auto& p : nodes) d.sets.push_back(p.at(b));
    for (const auto& m : maps) d.maps.push_back(m[static_cast<std::size_t>(b)]);
    return d;
  }
};

template <Variance V>
struct PointwiseResult {
  SetFunctor<V> object;
  std::vector<Family> legs;  // projections (limit) or injections (colimit), per shape object
};

template <Variance V>
PointwiseResult<V> pointwise_limit(const SetFunctorDiagram<V>& d, const CategoryPtr& base) {
  const auto& C = *base;
  const std::size_t shape_n = d.shape->object_count();
  std::vector<LimitResult> lims;
  for (std::size_t b = 0; b < C.object_count(); ++b) lims.push_back(limit(d.at(static_cast<ObjId>(b))));
  std::vector<FinSet> at;
  for (const auto& l : lims) at.push_back(l.apex);
  std::vector<std::vector<int>> act(C.morphism_count());
  for (std::size_t f = 0; f < C.morphism_count(); ++f) {
    auto s = static_cast<std::size_t>(SetFunctor<V>::source_of(C, static_cast<MorId>(f)));
    auto t = static_cast<std::size_t>(SetFunctor<V>::target_of(C, static_cast<MorId>(f)));
    for (const auto& tuple : lims[s].tuples) {
      std::vector<int> img(shape_n);
      for (std::size_t j = 0; j < shape_n; ++j) img[j] = d.nodes[j].act(static_cast<MorId>(f), tuple[j]);
      act[f].push_back(*lims[t].find(img));
    }
  }
  std::vector<Family> legs(shape_n, Family(C.object_count()));
  for (std::size_t j = 0; j < shape_n; ++j)
    for (std::size_t b = 0; b < C.object_count(); ++b) legs[j][b] = lims[b].projections[j].map;
  return {SetFunctor<V>::unchecked(base, std::move(at), std::move(act)), std::move(legs)};
}

template <Variance V>
PointwiseResult<V> pointwise_colimit(const SetFunctorDiagram<V>& d, const CategoryPtr& base) {
  const auto& C = *base;
  const std::size_t shape_n = d.shape->object_count();
  std::vector<ColimitResult> cols;
  for (std::size_t b = 0; b < C.object_count(); ++b) cols.push_back(colimit(d.at(static_cast<ObjId>(b))));
  std::vector<FinSet> at;
  for (const auto& c : cols) at.push_back(c.apex);
  std::vector<std::vector<int>> act(C.morphism_count());
  for (std::size_t f = 0; f < C.morphism_count(); ++f) {
    auto s = static_cast<std::size_t>(SetFunctor<V>::source_of(C, static_cast<MorId>(f)));
    auto t = static_cast<std::size_t>(SetFunctor<V>::target_of(C, static_cast<MorId>(f)));
    act[f].assign(cols[s].apex.size(), -1);
    for (std::size_t j = 0; j < shape_n; ++j)
      for (std::size_t x = 0; x < d.nodes[j].at(static_cast<ObjId>(s)).size(); ++x) {
        int cls = cols[s].injections[j](static_cast<int>(x));
        if (act[f][static_cast<std::size_t>(cls)] >= 0) continue;
        act[f][static_cast<std::size_t>(cls)] =
            cols[t].injections[j](d.nodes[j].act(static_cast<MorId>(f), static_cast<int>(x)));
      }
  }
  std::vector<Family> legs(shape_n, Family(C.object_count()));
  for (std::size_t j = 0; j < shape_n; ++j)
    for (std::size_t b = 0; b < C.object_count(); ++b) legs[j][b] = cols[b].injections[j].map;
  return {SetFunctor<V>::unchecked(base, std::move(at), std::move(act)), std::move(legs)};
}

/// Functions S → P(b) at each b, acting by postcomposition.
template <Variance V>
SetFunctor<V> power(const SetFunctor<V>& p, const FinSet& s) {
  const auto& C = p.base();
  std::vector<HomSet> homs;
  for (std::size_t b = 0; b < C.object_count(); ++b) homs.push_back(hom_set(s, p.at(static_cast<ObjId>(b))));
  auto index_of = [&](const std::vector<int>& fn, std::size_t base_size) {
    std::size_t k = 0;
    for (int v : fn) k = k * base_size + static_cast<std::size_t>(v);
    return static_cast<int>(k);
  };
  std::vector<std::vector<int>> act(C.morphism_count());
  for (std::size_t f = 0; f < C.morphism_count(); ++f) {
    auto src = static_cast<std::size_t>(p.source_of(static_cast<MorId>(f)));
    auto tgt = static_cast<std::size_t>(p.target_of(static_cast<MorId>(f)));
    for (const auto& fn : homs[src].functions)
      act[f].push_back(index_of(compose_maps(p.action(static_cast<MorId>(f)), fn), p.at(static_cast<ObjId>(tgt)).size()));
  }
  std::vector<FinSet> at;
  for (auto& h : homs) at.push_back(std::move(h.set));
  return SetFunctor<V>::unchecked(p.base_ptr(), std::move(at), std::move(act));
}

inline Presheaf power_presheaf(const Presheaf& p, const FinSet& s) { return power(p, s); }

// ---------------------------------------------------------------------------
// Categories of elements

/// el(P): objects (a, x ∈ P a).  For a presheaf a morphism (a,x) → (a',x') is
/// h: a → a' with P(h)(x') = x; for a copresheaf it is h with Q(h)(x) = x'.
struct ElementsCategory {
  CategoryPtr category;
  Functor projection;
  std::vector<std::pair<ObjId, int>> element;
};

template <Variance V>
ElementsCategory elements(const SetFunctor<V>& p) {
  const auto& C = p.base();
  std::vector<std::vector<int>> obj_index(C.object_count());
  std::vector<std::pair<ObjId, int>> elems;
  std::vector<std::string> names;
  for (std::size_t a = 0; a < C.object_count(); ++a)
    for (std::size_t x = 0; x < p.at(static_cast<ObjId>(a)).size(); ++x) {
      obj_index[a].push_back(static_cast<int>(elems.size()));
      elems.push_back({static_cast<ObjId>(a), static_cast<int>(x)});
      names.push_back(C.object_name(static_cast<ObjId>(a)) + ":" + p.at(static_cast<ObjId>(a)).token(static_cast<int>(x)));
    }
  // A morphism over h is keyed by the element at the end the action starts from.
  std::vector<std::size_t> offset(C.morphism_count() + 1, 0);
  for (std::size_t h = 0; h < C.morphism_count(); ++h)
    offset[h + 1] = offset[h] + p.at(p.source_of(static_cast<MorId>(h))).size();
  const std::size_t m = offset.back();
  if (m > caps().max_internal_morphisms)
    throw BudgetExceeded("category of elements has " + std::to_string(m) + " morphisms");
  std::vector<MorphismInfo> mors(m);
  std::vector<MorId> proj(m);
  for (std::size_t h = 0; h < C.morphism_count(); ++h) {
    auto s = p.source_of(static_cast<MorId>(h));
    auto t = p.target_of(static_cast<MorId>(h));
    for (std::size_t x = 0; x < p.at(s).size(); ++x) {
      int es = obj_index[static_cast<std::size_t>(s)][x];
      int et = obj_index[static_cast<std::size_t>(t)][static_cast<std::size_t>(p.act(static_cast<MorId>(h), static_cast<int>(x)))];
      std::size_t id = offset[h] + x;
      // Presheaf actions run against the arrow; copresheaf actions along it.
      if constexpr (V == Variance::covariant) mors[id] = {C.morphism_name(static_cast<MorId>(h)) + "@" + names[static_cast<std::size_t>(es)], es, et};
      else mors[id] = {C.morphism_name(static_cast<MorId>(h)) + "@" + names[static_cast<std::size_t>(es)], et, es};
      proj[id] = static_cast<MorId>(h);
    }
  }
  auto key_element = [&](std::size_t id) {
    return V == Variance::covariant ? mors[id].dom : mors[id].cod;
  };
  std::vector<MorId> table(m * m, kNoMorphism);
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f) {
      if (mors[f].cod != mors[g].dom) continue;
      MorId h = C.compose(proj[g], proj[f]);
      auto key = static_cast<std::size_t>(V == Variance::covariant ? key_element(f) : key_element(g));
      table[g * m + f] = static_cast<MorId>(offset[static_cast<std::size_t>(h)] + static_cast<std::size_t>(elems[key].second));
    }
  std::vector<MorId> ids(elems.size());
  for (std::size_t e = 0; e < elems.size(); ++e)
    ids[e] = static_cast<MorId>(offset[static_cast<std::size_t>(C.identity(elems[e].first))] + static_cast<std::size_t>(elems[e].second));
  auto cat = share(FinCategory::assemble(std::move(names), std::move(mors), std::move(ids), std::move(table)));
  std::vector<ObjId> pobj;
  for (const auto& e : elems) pobj.push_back(e.first);
  auto projection = Functor::unchecked(cat, p.base_ptr(), std::move(pobj), std::move(proj));
  return {std::move(cat), std::move(projection), std::move(elems)};
}

}  // namespace codensity
