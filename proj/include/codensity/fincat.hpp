#pragma once

// Finite categories stored as fully enumerated tables, together with functors,
// natural transformations, full subcategories and comma categories.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "codensity/config.hpp"

namespace codensity {

using ObjId = std::int32_t;
using MorId = std::int32_t;
inline constexpr MorId kNoMorphism = -1;

struct MorphismInfo {
  std::string name;
  ObjId dom = 0;
  ObjId cod = 0;
  friend bool operator==(const MorphismInfo&, const MorphismInfo&) = default;
};

/// Unvalidated category tables as read from a spec file or built by a generator.
struct RawCategory {
  struct Morphism {
    std::string name, dom, cod;
  };
  struct Composite {
    std::string g, f, result;  // g ∘ f = result
  };
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::vector<std::pair<std::string, std::string>> identities;  // object, morphism
  std::vector<Composite> composites;
  // Composites with an identity on either side are filled in when not declared.
  bool implicit_identity_composites = true;
};

class FinCategory;
using CategoryPtr = std::shared_ptr<const FinCategory>;

struct ValidationResult;
ValidationResult validate_category(const RawCategory& raw, std::size_t max_morphisms);

/// A validated finite category.  Immutable; share it through CategoryPtr.
class FinCategory {
 public:
  /// Builds a category from index tables without re-checking the axioms.  Used
  /// for constructions whose axioms hold by construction (comma categories,
  /// opposites, subcategories, algebra categories).
  static FinCategory assemble(std::vector<std::string> objects, std::vector<MorphismInfo> morphisms,
                              std::vector<MorId> identities, std::vector<MorId> table) {
    FinCategory c;
    c.objects_ = std::move(objects);
    c.morphisms_ = std::move(morphisms);
    c.identity_ = std::move(identities);
    c.table_ = std::move(table);
    c.index();
    return c;
  }

  std::size_t object_count() const { return objects_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }

  const std::string& object_name(ObjId a) const { return objects_.at(static_cast<std::size_t>(a)); }
  const std::vector<std::string>& object_names() const { return objects_; }
  const MorphismInfo& morphism(MorId f) const { return morphisms_.at(static_cast<std::size_t>(f)); }
  const std::vector<MorphismInfo>& morphisms() const { return morphisms_; }
  const std::string& morphism_name(MorId f) const { return morphism(f).name; }
  ObjId dom(MorId f) const { return morphism(f).dom; }
  ObjId cod(MorId f) const { return morphism(f).cod; }
  MorId identity(ObjId a) const { return identity_.at(static_cast<std::size_t>(a)); }
  bool is_identity(MorId f) const { return identity(dom(f)) == f; }

  /// g ∘ f, or kNoMorphism when cod(f) != dom(g).
  MorId compose(MorId g, MorId f) const {
    return table_[static_cast<std::size_t>(g) * morphisms_.size() + static_cast<std::size_t>(f)];
  }

  /// Morphisms a → b in declaration order.
  std::span<const MorId> hom(ObjId a, ObjId b) const {
    return homs_[static_cast<std::size_t>(a) * objects_.size() + static_cast<std::size_t>(b)];
  }

  std::optional<ObjId> find_object(std::string_view name) const {
    auto it = object_index_.find(std::string(name));
    if (it == object_index_.end()) return std::nullopt;
    return it->second;
  }
  std::optional<MorId> find_morphism(std::string_view name) const {
    auto it = morphism_index_.find(std::string(name));
    if (it == morphism_index_.end()) return std::nullopt;
    return it->second;
  }
  ObjId object(std::string_view name) const {
    auto a = find_object(name);
    if (!a) throw InputError("unknown object '" + std::string(name) + "'");
    return *a;
  }
  MorId morphism_id(std::string_view name) const {
    auto f = find_morphism(name);
    if (!f) throw InputError("unknown morphism '" + std::string(name) + "'");
    return *f;
  }

  std::optional<MorId> inverse(MorId f) const {
    for (MorId g : hom(cod(f), dom(f))) {
      if (compose(g, f) == identity(dom(f)) && compose(f, g) == identity(cod(f))) return g;
    }
    return std::nullopt;
  }
  bool is_iso(MorId f) const { return inverse(f).has_value(); }

  /// Every hom-set has at most one element (a preorder).
  bool is_thin() const {
    return std::all_of(homs_.begin(), homs_.end(), [](const auto& h) { return h.size() <= 1; });
  }

  /// The unique morphism a → b in a thin category, if any.
  std::optional<MorId> arrow(ObjId a, ObjId b) const {
    auto h = hom(a, b);
    if (h.empty()) return std::nullopt;
    return h.front();
  }

  friend bool operator==(const FinCategory& x, const FinCategory& y) {
    return x.objects_ == y.objects_ && x.morphisms_ == y.morphisms_ && x.identity_ == y.identity_ &&
           x.table_ == y.table_;
  }

 private:
  friend ValidationResult validate_category(const RawCategory& raw, std::size_t max_morphisms);
  FinCategory() = default;

  void index() {
    const std::size_t n = objects_.size();
    homs_.assign(n * n, {});
    for (std::size_t f = 0; f < morphisms_.size(); ++f) {
      const auto& m = morphisms_[f];
      homs_[static_cast<std::size_t>(m.dom) * n + static_cast<std::size_t>(m.cod)].push_back(
          static_cast<MorId>(f));
    }
    object_index_.clear();
    morphism_index_.clear();
    for (std::size_t a = 0; a < n; ++a) object_index_.emplace(objects_[a], static_cast<ObjId>(a));
    for (std::size_t f = 0; f < morphisms_.size(); ++f)
      morphism_index_.emplace(morphisms_[f].name, static_cast<MorId>(f));
  }

  std::vector<std::string> objects_;
  std::vector<MorphismInfo> morphisms_;
  std::vector<MorId> identity_;
  std::vector<MorId> table_;
  std::vector<std::vector<MorId>> homs_;
  std::unordered_map<std::string, ObjId> object_index_;
  std::unordered_map<std::string, MorId> morphism_index_;
};

struct ValidationResult {
  std::optional<FinCategory> category;
  std::vector<std::string> violations;
  bool ok() const { return category.has_value(); }
};

/// Checks every axiom and reports all violations, not just the first.
inline ValidationResult validate_category(const RawCategory& raw,
                                          std::size_t max_morphisms = caps().max_morphisms) {
  ValidationResult out;
  auto& v = out.violations;

  std::unordered_map<std::string, ObjId> obj_ix;
  for (std::size_t i = 0; i < raw.objects.size(); ++i) {
    if (!obj_ix.emplace(raw.objects[i], static_cast<ObjId>(i)).second)
      v.push_back("duplicate object '" + raw.objects[i] + "'");
  }
  if (raw.morphisms.size() > max_morphisms) {
    v.push_back("category has " + std::to_string(raw.morphisms.size()) +
                " morphisms, above the cap of " + std::to_string(max_morphisms));
    return out;
  }

  std::vector<MorphismInfo> mors;
  std::unordered_map<std::string, MorId> mor_ix;
  bool endpoints_ok = true;
  for (std::size_t i = 0; i < raw.morphisms.size(); ++i) {
    const auto& m = raw.morphisms[i];
    if (!mor_ix.emplace(m.name, static_cast<MorId>(i)).second)
      v.push_back("duplicate morphism '" + m.name + "'");
    auto d = obj_ix.find(m.dom);
    auto c = obj_ix.find(m.cod);
    if (d == obj_ix.end()) {
      v.push_back("morphism '" + m.name + "' has undeclared domain '" + m.dom + "'");
      endpoints_ok = false;
    }
    if (c == obj_ix.end()) {
      v.push_back("morphism '" + m.name + "' has undeclared codomain '" + m.cod + "'");
      endpoints_ok = false;
    }
    mors.push_back({m.name, d == obj_ix.end() ? 0 : d->second, c == obj_ix.end() ? 0 : c->second});
  }
  const std::size_t n = raw.objects.size();
  const std::size_t m = mors.size();
  std::vector<MorId> ident(n, kNoMorphism);
  for (const auto& [o, f] : raw.identities) {
    auto oi = obj_ix.find(o);
    auto fi = mor_ix.find(f);
    if (oi == obj_ix.end()) {
      v.push_back("identity declared for undeclared object '" + o + "'");
      continue;
    }
    if (fi == mor_ix.end()) {
      v.push_back("identity of '" + o + "' is undeclared morphism '" + f + "'");
      continue;
    }
    const auto& info = mors[static_cast<std::size_t>(fi->second)];
    if (info.dom != oi->second || info.cod != oi->second) {
      v.push_back("identity '" + f + "' of '" + o + "' is not an endomorphism of '" + o + "'");
      continue;
    }
    auto& slot = ident[static_cast<std::size_t>(oi->second)];
    if (slot != kNoMorphism && slot != fi->second)
      v.push_back("object '" + o + "' has two identities");
    slot = fi->second;
  }
  bool identities_ok = true;
  for (std::size_t a = 0; a < n; ++a) {
    if (ident[a] == kNoMorphism) {
      v.push_back("missing identity for object '" + raw.objects[a] + "'");
      identities_ok = false;
    }
  }
  // Composites cannot be checked against unresolved endpoints.
  if (!endpoints_ok) return out;

  std::vector<MorId> table(m * m, kNoMorphism);
  auto at = [&](MorId g, MorId f) -> MorId& {
    return table[static_cast<std::size_t>(g) * m + static_cast<std::size_t>(f)];
  };
  for (const auto& c : raw.composites) {
    auto gi = mor_ix.find(c.g), fi = mor_ix.find(c.f), hi = mor_ix.find(c.result);
    if (gi == mor_ix.end() || fi == mor_ix.end() || hi == mor_ix.end()) {
      v.push_back("composite " + c.g + " . " + c.f + " = " + c.result +
                  " references an undeclared morphism");
      continue;
    }
    const auto& g = mors[static_cast<std::size_t>(gi->second)];
    const auto& f = mors[static_cast<std::size_t>(fi->second)];
    const auto& h = mors[static_cast<std::size_t>(hi->second)];
    if (f.cod != g.dom) {
      v.push_back("composite endpoints mismatch: " + c.g + " . " + c.f + " declared but cod(" + c.f +
                  ") = '" + raw.objects[static_cast<std::size_t>(f.cod)] + "' differs from dom(" +
                  c.g + ") = '" + raw.objects[static_cast<std::size_t>(g.dom)] + "'");
      continue;
    }
    if (h.dom != f.dom || h.cod != g.cod) {
      v.push_back("composite endpoints mismatch: " + c.g + " . " + c.f + " = " + c.result +
                  " but the result does not run from dom(" + c.f + ") to cod(" + c.g + ")");
      continue;
    }
    MorId& slot = at(gi->second, fi->second);
    if (slot != kNoMorphism && slot != hi->second) {
      v.push_back("composite " + c.g + " . " + c.f + " declared twice with different results");
      continue;
    }
    slot = hi->second;
  }

  if (identities_ok && raw.implicit_identity_composites) {
    for (std::size_t f = 0; f < m; ++f) {
      MorId fid = static_cast<MorId>(f);
      MorId left = ident[static_cast<std::size_t>(mors[f].cod)];
      MorId right = ident[static_cast<std::size_t>(mors[f].dom)];
      if (at(left, fid) == kNoMorphism) at(left, fid) = fid;
      if (at(fid, right) == kNoMorphism) at(fid, right) = fid;
    }
  }

  bool total = true;
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t f = 0; f < m; ++f) {
      if (mors[f].cod == mors[g].dom && table[g * m + f] == kNoMorphism) {
        v.push_back("missing composite " + mors[g].name + " . " + mors[f].name);
        total = false;
      }
    }
  }

  if (identities_ok && total) {
    for (std::size_t f = 0; f < m; ++f) {
      MorId fid = static_cast<MorId>(f);
      if (at(ident[static_cast<std::size_t>(mors[f].cod)], fid) != fid)
        v.push_back("identity law fails: id . " + mors[f].name + " != " + mors[f].name);
      if (at(fid, ident[static_cast<std::size_t>(mors[f].dom)]) != fid)
        v.push_back("identity law fails: " + mors[f].name + " . id != " + mors[f].name);
    }
  }
  if (total) {
    for (std::size_t f = 0; f < m; ++f) {
      for (std::size_t g = 0; g < m; ++g) {
        if (mors[f].cod != mors[g].dom) continue;
        for (std::size_t h = 0; h < m; ++h) {
          if (mors[g].cod != mors[h].dom) continue;
          MorId hg = at(static_cast<MorId>(h), static_cast<MorId>(g));
          MorId gf = at(static_cast<MorId>(g), static_cast<MorId>(f));
          if (at(hg, static_cast<MorId>(f)) != at(static_cast<MorId>(h), gf)) {
            v.push_back("non-associative triple (" + mors[h].name + ", " + mors[g].name + ", " +
                        mors[f].name + ")");
          }
        }
      }
    }
  }

  if (!v.empty()) return out;
  FinCategory c;
  c.objects_ = raw.objects;
  c.morphisms_ = std::move(mors);
  c.identity_ = std::move(ident);
  c.table_ = std::move(table);
  c.index();
  out.category = std::move(c);
  return out;
}

/// Validates or throws InputError listing every violation.
inline CategoryPtr make_category(const RawCategory& raw,
                                 std::size_t max_morphisms = caps().max_morphisms) {
  auto r = validate_category(raw, max_morphisms);
  if (!r.ok()) {
    std::string msg = "invalid category:";
    for (const auto& s : r.violations) msg += "\n  " + s;
    throw InputError(msg);
  }
  return std::make_shared<const FinCategory>(std::move(*r.category));
}

inline CategoryPtr share(FinCategory c) { return std::make_shared<const FinCategory>(std::move(c)); }

/// Same objects and morphism names, endpoints swapped, composition reversed.
inline FinCategory opposite_category(const FinCategory& c) {
  const std::size_t m = c.morphism_count();
  std::vector<MorphismInfo> mors;
  mors.reserve(m);
  for (const auto& info : c.morphisms()) mors.push_back({info.name, info.cod, info.dom});
  std::vector<MorId> table(m * m, kNoMorphism);
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f)
      table[g * m + f] = c.compose(static_cast<MorId>(f), static_cast<MorId>(g));
  std::vector<MorId> ids(c.object_count());
  for (std::size_t a = 0; a < ids.size(); ++a) ids[a] = c.identity(static_cast<ObjId>(a));
  return FinCategory::assemble(c.object_names(), std::move(mors), std::move(ids), std::move(table));
}

inline CategoryPtr opposite_category(const CategoryPtr& c) { return share(opposite_category(*c)); }

// ---------------------------------------------------------------------------
// Functors

class Functor {
 public:
  /// Checks the functor laws; throws InputError with every violation.
  Functor(CategoryPtr source, CategoryPtr target, std::vector<ObjId> on_objects,
          std::vector<MorId> on_morphisms)
      : source_(std::move(source)),
        target_(std::move(target)),
        obj_(std::move(on_objects)),
        mor_(std::move(on_morphisms)) {
    auto v = violations(*source_, *target_, obj_, mor_);
    if (!v.empty()) {
      std::string msg = "invalid functor:";
      for (const auto& s : v) msg += "\n  " + s;
      throw InputError(msg);
    }
  }

  /// Skips the law check; for constructions that are functorial by construction.
  static Functor unchecked(CategoryPtr source, CategoryPtr target, std::vector<ObjId> on_objects,
                           std::vector<MorId> on_morphisms) {
    return Functor(std::move(source), std::move(target), std::move(on_objects),
                   std::move(on_morphisms), Unchecked{});
  }

  static std::vector<std::string> violations(const FinCategory& s, const FinCategory& t,
                                             const std::vector<ObjId>& obj,
                                             const std::vector<MorId>& mor) {
    std::vector<std::string> v;
    if (obj.size() != s.object_count()) {
      v.push_back("object map has wrong length");
      return v;
    }
    if (mor.size() != s.morphism_count()) {
      v.push_back("morphism map has wrong length");
      return v;
    }
    for (ObjId x : obj)
      if (x < 0 || static_cast<std::size_t>(x) >= t.object_count()) {
        v.push_back("object map leaves the target category");
        return v;
      }
    for (MorId x : mor)
      if (x < 0 || static_cast<std::size_t>(x) >= t.morphism_count()) {
        v.push_back("morphism map leaves the target category");
        return v;
      }
    for (std::size_t f = 0; f < mor.size(); ++f) {
      const auto& info = s.morphism(static_cast<MorId>(f));
      MorId image = mor[f];
      if (t.dom(image) != obj[static_cast<std::size_t>(info.dom)] ||
          t.cod(image) != obj[static_cast<std::size_t>(info.cod)])
        v.push_back("image of '" + info.name + "' has mismatched endpoints");
    }
    if (!v.empty()) return v;
    for (std::size_t a = 0; a < obj.size(); ++a) {
      if (mor[static_cast<std::size_t>(s.identity(static_cast<ObjId>(a)))] !=
          t.identity(obj[a]))
        v.push_back("identity of '" + s.object_name(static_cast<ObjId>(a)) + "' not preserved");
    }
    const std::size_t m = s.morphism_count();
    for (std::size_t g = 0; g < m; ++g)
      for (std::size_t f = 0; f < m; ++f) {
        MorId gf = s.compose(static_cast<MorId>(g), static_cast<MorId>(f));
        if (gf == kNoMorphism) continue;
        if (t.compose(mor[g], mor[f]) != mor[static_cast<std::size_t>(gf)])
          v.push_back("composite " + s.morphism_name(static_cast<MorId>(g)) + " . " +
                      s.morphism_name(static_cast<MorId>(f)) + " not preserved");
      }
    return v;
  }

  static Functor identity(const CategoryPtr& c) {
    std::vector<ObjId> o(c->object_count());
    std::iota(o.begin(), o.end(), 0);
    std::vector<MorId> m(c->morphism_count());
    std::iota(m.begin(), m.end(), 0);
    return unchecked(c, c, std::move(o), std::move(m));
  }

  static Functor constant(const CategoryPtr& source, const CategoryPtr& target, ObjId d) {
    return unchecked(source, target, std::vector<ObjId>(source->object_count(), d),
                     std::vector<MorId>(source->morphism_count(), target->identity(d)));
  }

  const FinCategory& source() const { return *source_; }
  const FinCategory& target() const { return *target_; }
  const CategoryPtr& source_ptr() const { return source_; }
  const CategoryPtr& target_ptr() const { return target_; }
  ObjId on_object(ObjId a) const { return obj_[static_cast<std::size_t>(a)]; }
  MorId on_morphism(MorId f) const { return mor_[static_cast<std::size_t>(f)]; }
  const std::vector<ObjId>& object_map() const { return obj_; }
  const std::vector<MorId>& morphism_map() const { return mor_; }

  /// On-the-nose equality of categories and maps.
  friend bool operator==(const Functor& x, const Functor& y) {
    return same_category(x.source_, y.source_) && same_category(x.target_, y.target_) &&
           x.obj_ == y.obj_ && x.mor_ == y.mor_;
  }

  static bool same_category(const CategoryPtr& a, const CategoryPtr& b) {
    return a == b || *a == *b;
  }

 private:
  struct Unchecked {};
  Functor(CategoryPtr s, CategoryPtr t, std::vector<ObjId> o, std::vector<MorId> m, Unchecked)
      : source_(std::move(s)), target_(std::move(t)), obj_(std::move(o)), mor_(std::move(m)) {}

  CategoryPtr source_;
  CategoryPtr target_;
  std::vector<ObjId> obj_;
  std::vector<MorId> mor_;
};

/// outer ∘ inner.
inline Functor compose(const Functor& outer, const Functor& inner) {
  if (!Functor::same_category(inner.target_ptr(), outer.source_ptr()))
    throw InputError("functors are not composable");
  std::vector<ObjId> o(inner.source().object_count());
  for (std::size_t a = 0; a < o.size(); ++a)
    o[a] = outer.on_object(inner.on_object(static_cast<ObjId>(a)));
  std::vector<MorId> m(inner.source().morphism_count());
  for (std::size_t f = 0; f < m.size(); ++f)
    m[f] = outer.on_morphism(inner.on_morphism(static_cast<MorId>(f)));
  return Functor::unchecked(inner.source_ptr(), outer.target_ptr(), std::move(o), std::move(m));
}

/// F° : A° → B°, between the given opposite categories.
inline Functor opposite(const Functor& f, const CategoryPtr& source_op, const CategoryPtr& target_op) {
  return Functor::unchecked(source_op, target_op, f.object_map(), f.morphism_map());
}

inline Functor opposite(const Functor& f) {
  return opposite(f, opposite_category(f.source_ptr()), opposite_category(f.target_ptr()));
}

// ---------------------------------------------------------------------------
// Natural transformations

class NatTransformation {
 public:
  NatTransformation(Functor source, Functor target, std::vector<MorId> components)
      : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
    auto v = violations(source_, target_, components_);
    if (!v.empty()) {
      std::string msg = "invalid natural transformation:";
      for (const auto& s : v) msg += "\n  " + s;
      throw InputError(msg);
    }
  }

  static NatTransformation unchecked(Functor source, Functor target, std::vector<MorId> components) {
    return NatTransformation(std::move(source), std::move(target), std::move(components), 0);
  }

  static std::vector<std::string> violations(const Functor& f, const Functor& g,
                                             const std::vector<MorId>& comps) {
    std::vector<std::string> v;
    if (!Functor::same_category(f.source_ptr(), g.source_ptr()) ||
        !Functor::same_category(f.target_ptr(), g.target_ptr())) {
      v.push_back("functors do not share source and target");
      return v;
    }
    const auto& a = f.source();
    const auto& b = f.target();
    if (comps.size() != a.object_count()) {
      v.push_back("wrong number of components");
      return v;
    }
    for (std::size_t x = 0; x < comps.size(); ++x) {
      MorId c = comps[x];
      if (c < 0 || static_cast<std::size_t>(c) >= b.morphism_count() ||
          b.dom(c) != f.on_object(static_cast<ObjId>(x)) ||
          b.cod(c) != g.on_object(static_cast<ObjId>(x))) {
        v.push_back("component at '" + a.object_name(static_cast<ObjId>(x)) +
                    "' has wrong endpoints");
      }
    }
    if (!v.empty()) return v;
    for (std::size_t h = 0; h < a.morphism_count(); ++h) {
      const auto& info = a.morphism(static_cast<MorId>(h));
      MorId lhs = b.compose(g.on_morphism(static_cast<MorId>(h)), comps[static_cast<std::size_t>(info.dom)]);
      MorId rhs = b.compose(comps[static_cast<std::size_t>(info.cod)], f.on_morphism(static_cast<MorId>(h)));
      if (lhs != rhs) v.push_back("naturality fails at '" + info.name + "'");
    }
    return v;
  }

  static NatTransformation identity(const Functor& f) {
    std::vector<MorId> c(f.source().object_count());
    for (std::size_t a = 0; a < c.size(); ++a) c[a] = f.target().identity(f.on_object(static_cast<ObjId>(a)));
    return unchecked(f, f, std::move(c));
  }

  const Functor& source() const { return source_; }
  const Functor& target() const { return target_; }
  MorId component(ObjId a) const { return components_[static_cast<std::size_t>(a)]; }
  const std::vector<MorId>& components() const { return components_; }

  bool is_iso() const {
    const auto& b = source_.target();
    return std::all_of(components_.begin(), components_.end(), [&](MorId c) { return b.is_iso(c); });
  }

  std::optional<NatTransformation> inverse() const {
    std::vector<MorId> inv;
    inv.reserve(components_.size());
    for (MorId c : components_) {
      auto i = source_.target().inverse(c);
      if (!i) return std::nullopt;
      inv.push_back(*i);
    }
    return unchecked(target_, source_, std::move(inv));
  }

  friend bool operator==(const NatTransformation& x, const NatTransformation& y) {
    return x.source_ == y.source_ && x.target_ == y.target_ && x.components_ == y.components_;
  }

 private:
  NatTransformation(Functor s, Functor t, std::vector<MorId> c, int)
      : source_(std::move(s)), target_(std::move(t)), components_(std::move(c)) {}

  Functor source_;
  Functor target_;
  std::vector<MorId> components_;
};

/// outer ∘ inner (vertical composite).
inline NatTransformation vertical(const NatTransformation& outer, const NatTransformation& inner) {
  const auto& b = inner.source().target();
  std::vector<MorId> c(inner.components().size());
  for (std::size_t a = 0; a < c.size(); ++a) c[a] = b.compose(outer.components()[a], inner.components()[a]);
  return NatTransformation::unchecked(inner.source(), outer.target(), std::move(c));
}

/// α H : F∘H ⇒ G∘H.
inline NatTransformation whisker(const NatTransformation& alpha, const Functor& h) {
  std::vector<MorId> c(h.source().object_count());
  for (std::size_t a = 0; a < c.size(); ++a) c[a] = alpha.component(h.on_object(static_cast<ObjId>(a)));
  return NatTransformation::unchecked(compose(alpha.source(), h), compose(alpha.target(), h),
                                      std::move(c));
}

/// H α : H∘F ⇒ H∘G.
inline NatTransformation whisker(const Functor& h, const NatTransformation& alpha) {
  std::vector<MorId> c(alpha.components().size());
  for (std::size_t a = 0; a < c.size(); ++a) c[a] = h.on_morphism(alpha.components()[a]);
  return NatTransformation::unchecked(compose(h, alpha.source()), compose(h, alpha.target()),
                                      std::move(c));
}

// ---------------------------------------------------------------------------
// Full subcategories

struct FullSubcategory {
  CategoryPtr parent;
  std::vector<ObjId> objects;  // parent ids, ascending
  CategoryPtr category;
  Functor inclusion;

  bool contains(ObjId parent_object) const {
    return std::binary_search(objects.begin(), objects.end(), parent_object);
  }
};

inline FullSubcategory full_subcategory(const CategoryPtr& parent, std::vector<ObjId> objects) {
  std::sort(objects.begin(), objects.end());
  objects.erase(std::unique(objects.begin(), objects.end()), objects.end());
  std::vector<ObjId> local(parent->object_count(), -1);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    if (objects[i] < 0 || static_cast<std::size_t>(objects[i]) >= parent->object_count())
      throw InputError("subcategory object out of range");
    local[static_cast<std::size_t>(objects[i])] = static_cast<ObjId>(i);
    names.push_back(parent->object_name(objects[i]));
  }
  std::vector<MorphismInfo> mors;
  std::vector<MorId> parent_mor;
  std::vector<MorId> local_mor(parent->morphism_count(), kNoMorphism);
  for (std::size_t f = 0; f < parent->morphism_count(); ++f) {
    const auto& info = parent->morphism(static_cast<MorId>(f));
    ObjId d = local[static_cast<std::size_t>(info.dom)], c = local[static_cast<std::size_t>(info.cod)];
    if (d < 0 || c < 0) continue;
    local_mor[f] = static_cast<MorId>(mors.size());
    mors.push_back({info.name, d, c});
    parent_mor.push_back(static_cast<MorId>(f));
  }
  const std::size_t m = mors.size();
  std::vector<MorId> table(m * m, kNoMorphism);
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t f = 0; f < m; ++f) {
      MorId gf = parent->compose(parent_mor[g], parent_mor[f]);
      if (gf != kNoMorphism) table[g * m + f] = local_mor[static_cast<std::size_t>(gf)];
    }
  std::vector<MorId> ids;
  for (ObjId o : objects) ids.push_back(local_mor[static_cast<std::size_t>(parent->identity(o))]);
  auto sub = share(FinCategory::assemble(std::move(names), std::move(mors), std::move(ids), std::move(table)));
  auto incl = Functor::unchecked(sub, parent, objects, parent_mor);
  return FullSubcategory{parent, std::move(objects), std::move(sub), std::move(incl)};
}

// ---------------------------------------------------------------------------
// Comma categories

/// (b ↓ F) or (F ↓ b) with its projection to F's source.
struct CommaCategory {
  CategoryPtr category;
  Functor projection;
  std::vector<ObjId> source_object;  // the a of each comma object
  std::vector<MorId> arrow;          // b → F a (under) or F a → b (over)

  std::optional<ObjId> find(ObjId a, MorId f) const {
    for (std::size_t j = 0; j < arrow.size(); ++j)
      if (source_object[j] == a && arrow[j] == f) return static_cast<ObjId>(j);
    return std::nullopt;
  }
};

namespace detail {

// Shared builder: objects are (a, f); for each comma object j and each morphism h
// of A leaving (under) or entering (over) a, one comma morphism.
inline CommaCategory build_comma(const Functor& F, ObjId b, bool under) {
  const auto& A = F.source();
  const auto& B = F.target();
  std::vector<ObjId> src;
  std::vector<MorId> arr;
  std::vector<std::string> names;
  std::vector<std::vector<int>> index_by_a(A.object_count());
  for (std::size_t a = 0; a < A.object_count(); ++a) {
    ObjId fa = F.on_object(static_cast<ObjId>(a));
    auto hs = under ? B.hom(b, fa) : B.hom(fa, b);
    for (MorId f : hs) {
      index_by_a[a].push_back(static_cast<int>(src.size()));
      src.push_back(static_cast<ObjId>(a));
      arr.push_back(f);
      names.push_back("(" + A.object_name(static_cast<ObjId>(a)) + "," + B.morphism_name(f) + ")");
    }
  }
  auto locate = [&](ObjId a, MorId f) -> ObjId {
    const auto& cand = index_by_a[static_cast<std::size_t>(a)];
    for (int j : cand)
      if (arr[static_cast<std::size_t>(j)] == f) return j;
    return -1;
  };

  // Morphisms of A grouped by domain (under) or codomain (over).
  std::vector<std::vector<MorId>> incident(A.object_count());
  std::vector<int> pos(A.morphism_count());
  for (std::size_t h = 0; h < A.morphism_count(); ++h) {
    ObjId key = under ? A.dom(static_cast<MorId>(h)) : A.cod(static_cast<MorId>(h));
    pos[h] = static_cast<int>(incident[static_cast<std::size_t>(key)].size());
    incident[static_cast<std::size_t>(key)].push_back(static_cast<MorId>(h));
  }
  std::vector<std::size_t> offset(src.size() + 1, 0);
  for (std::size_t j = 0; j < src.size(); ++j)
    offset[j + 1] = offset[j] + incident[static_cast<std::size_t>(src[j])].size();
  const std::size_t m = offset.back();
  if (m > caps().max_internal_morphisms)
    throw BudgetExceeded("comma category has " + std::to_string(m) + " morphisms");

  std::vector<MorphismInfo> mors(m);
  std::vector<MorId> proj(m);
  for (std::size_t j = 0; j < src.size(); ++j) {
    const auto& hs = incident[static_cast<std::size_t>(src[j])];
    for (std::size_t k = 0; k < hs.size(); ++k) {
      MorId h = hs[k];
      MorId fh = F.on_morphism(h);
      std::size_t id = offset[j] + k;
      ObjId other;
      if (under) {
        other = locate(A.cod(h), B.compose(fh, arr[j]));
        mors[id] = {A.morphism_name(h) + "@" + names[j], static_cast<ObjId>(j), other};
      } else {
        other = locate(A.dom(h), B.compose(arr[j], fh));
        mors[id] = {A.morphism_name(h) + "@" + names[j], other, static_cast<ObjId>(j)};
      }
      proj[id] = h;
    }
  }
  // Composition: under, morphisms are keyed by their domain; over, by codomain.
  std::vector<MorId> table(m * m, kNoMorphism);
  auto key_object = [&](std::size_t id) {
    return under ? mors[id].dom : mors[id].cod;
  };
  auto lookup = [&](ObjId j, MorId h) -> MorId {
    return static_cast<MorId>(offset[static_cast<std::size_t>(j)] + static_cast<std::size_t>(pos[static_cast<std::size_t>(h)]));
  };
  for (std::size_t f = 0; f < m; ++f) {
    for (std::size_t g = 0; g < m; ++g) {
      if (mors[f].cod != mors[g].dom) continue;
      MorId h = A.compose(proj[g], proj[f]);
      ObjId j = under ? static_cast<ObjId>(key_object(f)) : static_cast<ObjId>(key_object(g));
      table[g * m + f] = lookup(j, h);
    }
  }
  std::vector<MorId> ids(src.size());
  for (std::size_t j = 0; j < src.size(); ++j) ids[j] = lookup(static_cast<ObjId>(j), A.identity(src[j]));
  auto cat = share(FinCategory::assemble(std::move(names), std::move(mors), std::move(ids), std::move(table)));
  std::vector<ObjId> pobj(src.begin(), src.end());
  auto projection = Functor::unchecked(cat, F.source_ptr(), std::move(pobj), std::move(proj));
  return CommaCategory{std::move(cat), std::move(projection), std::move(src), std::move(arr)};
}

}  // namespace detail

/// (b ↓ F): objects (a, f: b → F a); morphisms h: a → a' with F(h)∘f = f'.
inline CommaCategory comma_category(ObjId b, const Functor& F) { return detail::build_comma(F, b, true); }

/// (F ↓ b): objects (a, f: F a → b); morphisms h: a → a' with f'∘F(h) = f.
inline CommaCategory comma_category(const Functor& F, ObjId b) { return detail::build_comma(F, b, false); }

// ---------------------------------------------------------------------------
// Searches over natural transformations and functors

struct NatSearchOptions {
  bool require_iso = false;
  std::size_t max_results = SIZE_MAX;
  // Optional per-component filter, consulted before naturality.
  std::function<bool(ObjId, MorId)> component_filter;
  // Optional whole-family filter applied to complete candidates.
  std::function<bool(const std::vector<MorId>&)> accept;
};

/// All natural transformations F ⇒ G (subject to the options), in lexicographic
/// order of their component lists under canonical object and morphism order.
inline std::vector<NatTransformation> find_natural_transformations(const Functor& F, const Functor& G,
                                                                   const NatSearchOptions& opt = {}) {
  if (!Functor::same_category(F.source_ptr(), G.source_ptr()) ||
      !Functor::same_category(F.target_ptr(), G.target_ptr()))
    throw InputError("natural transformation search needs functors with a shared source and target");
  const auto& A = F.source();
  const auto& B = F.target();
  const std::size_t n = A.object_count();

  // Naturality squares to check once the later endpoint is assigned.
  std::vector<std::vector<MorId>> squares(n);
  for (std::size_t h = 0; h < A.morphism_count(); ++h) {
    const auto& info = A.morphism(static_cast<MorId>(h));
    squares[static_cast<std::size_t>(std::max(info.dom, info.cod))].push_back(static_cast<MorId>(h));
  }
  std::vector<std::vector<MorId>> candidates(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (MorId c : B.hom(F.on_object(static_cast<ObjId>(a)), G.on_object(static_cast<ObjId>(a)))) {
      if (opt.require_iso && !B.is_iso(c)) continue;
      if (opt.component_filter && !opt.component_filter(static_cast<ObjId>(a), c)) continue;
      candidates[a].push_back(c);
    }
  }

  std::vector<NatTransformation> out;
  std::vector<MorId> comp(n, kNoMorphism);
  SearchBudget budget("natural transformation search");
  std::function<void(std::size_t)> go = [&](std::size_t a) {
    if (out.size() >= opt.max_results) return;
    if (a == n) {
      if (!opt.accept || opt.accept(comp)) out.push_back(NatTransformation::unchecked(F, G, comp));
      return;
    }
    for (MorId c : candidates[a]) {
      budget.tick();
      comp[a] = c;
      bool ok = true;
      for (MorId h : squares[a]) {
        const auto& info = A.morphism(h);
        if (B.compose(G.on_morphism(h), comp[static_cast<std::size_t>(info.dom)]) !=
            B.compose(comp[static_cast<std::size_t>(info.cod)], F.on_morphism(h))) {
          ok = false;
          break;
        }
      }
      if (ok) go(a + 1);
      if (out.size() >= opt.max_results) return;
    }
    comp[a] = kNoMorphism;
  };
  go(0);
  return out;
}

/// First natural isomorphism F ≅ G under canonical order, or nullopt after an
/// exhaustive search.
inline std::optional<NatTransformation> find_natural_isomorphism(const Functor& F, const Functor& G) {
  NatSearchOptions opt;
  opt.require_iso = true;
  opt.max_results = 1;
  auto r = find_natural_transformations(F, G, opt);
  if (r.empty()) return std::nullopt;
  return r.front();
}

/// Enumerates functors C → D.  With an rng the object maps and morphism
/// candidates are visited in shuffled order (used by the instance generators);
/// without one the order is canonical.
class FunctorSearch {
 public:
  FunctorSearch(CategoryPtr source, CategoryPtr target) : s_(std::move(source)), t_(std::move(target)) {
    const auto& C = *s_;
    const std::size_t m = C.morphism_count();
    // Non-identity morphisms get assigned in order; a composite check fires once
    // all three of g, f, g∘f are assigned.
    rank_.assign(m, -1);
    int r = 0;
    for (std::size_t f = 0; f < m; ++f)
      if (!C.is_identity(static_cast<MorId>(f))) {
        order_.push_back(static_cast<MorId>(f));
        rank_[f] = r++;
      }
    checks_.assign(order_.size(), {});
    for (std::size_t g = 0; g < m; ++g)
      for (std::size_t f = 0; f < m; ++f) {
        MorId gf = C.compose(static_cast<MorId>(g), static_cast<MorId>(f));
        if (gf == kNoMorphism) continue;
        int k = std::max({rank_[g], rank_[f], rank_[static_cast<std::size_t>(gf)]});
        if (k < 0) continue;
        checks_[static_cast<std::size_t>(k)].push_back({static_cast<MorId>(g), static_cast<MorId>(f), gf});
      }
  }

  /// Calls visit for each functor until it returns false.
  void enumerate(const std::function<bool(const Functor&)>& visit, std::mt19937_64* rng = nullptr,
                 std::size_t max_object_maps = SIZE_MAX) {
    const auto& C = *s_;
    const auto& D = *t_;
    const std::size_t n = C.object_count();
    if (n > 0 && D.object_count() == 0) return;
    std::vector<ObjId> obj(n, 0);
    SearchBudget budget("functor search");
    std::size_t total_maps = saturating_pow(D.object_count(), n);
    std::size_t tried = 0;
    bool stop = false;

    auto try_object_map = [&](const std::vector<ObjId>& om) {
      std::vector<MorId> mor(C.morphism_count(), kNoMorphism);
      for (std::size_t a = 0; a < n; ++a) mor[static_cast<std::size_t>(C.identity(static_cast<ObjId>(a)))] = D.identity(om[a]);
      std::function<void(std::size_t)> go = [&](std::size_t k) {
        if (stop) return;
        if (k == order_.size()) {
          if (!visit(Functor::unchecked(s_, t_, om, mor))) stop = true;
          return;
        }
        MorId f = order_[k];
        auto hs = D.hom(om[static_cast<std::size_t>(C.dom(f))], om[static_cast<std::size_t>(C.cod(f))]);
        std::vector<MorId> cand(hs.begin(), hs.end());
        if (rng) std::shuffle(cand.begin(), cand.end(), *rng);
        for (MorId c : cand) {
          budget.tick();
          mor[static_cast<std::size_t>(f)] = c;
          bool ok = true;
          for (const auto& [g, h, gh] : checks_[k]) {
            if (D.compose(mor[static_cast<std::size_t>(g)], mor[static_cast<std::size_t>(h)]) != mor[static_cast<std::size_t>(gh)]) {
              ok = false;
              break;
            }
          }
          if (ok) go(k + 1);
          if (stop) return;
        }
        mor[static_cast<std::size_t>(f)] = kNoMorphism;
      };
      go(0);
    };

    if (rng) {
      std::uniform_int_distribution<int> pick(0, static_cast<int>(D.object_count()) - 1);
      std::set<std::vector<ObjId>> seen;
      while (!stop && tried < std::min(total_maps, max_object_maps)) {
        for (auto& x : obj) x = pick(*rng);
        if (!seen.insert(obj).second) {
          if (seen.size() >= total_maps) break;
          continue;
        }
        ++tried;
        try_object_map(obj);
      }
      return;
    }
    std::function<void(std::size_t)> objects = [&](std::size_t a) {
      if (stop || tried >= max_object_maps) return;
      if (a == n) {
        ++tried;
        try_object_map(obj);
        return;
      }
      for (std::size_t d = 0; d < D.object_count() && !stop; ++d) {
        obj[a] = static_cast<ObjId>(d);
        objects(a + 1);
      }
    };
    objects(0);
  }

  std::vector<Functor> all(std::size_t max_results = SIZE_MAX) {
    std::vector<Functor> out;
    enumerate([&](const Functor& f) {
      out.push_back(f);
      return out.size() < max_results;
    });
    return out;
  }

  /// A pseudo-random functor; falls back to a constant functor.
  Functor random(std::mt19937_64& rng, std::size_t attempts = 64) {
    std::optional<Functor> found;
    enumerate(
        [&](const Functor& f) {
          found = f;
          return false;
        },
        &rng, attempts);
    if (found) return *found;
    if (t_->object_count() == 0) throw InputError("no functor into the empty category");
    std::uniform_int_distribution<int> pick(0, static_cast<int>(t_->object_count()) - 1);
    return Functor::constant(s_, t_, pick(rng));
  }

 private:
  CategoryPtr s_, t_;
  std::vector<MorId> order_;
  std::vector<int> rank_;
  std::vector<std::vector<std::tuple<MorId, MorId, MorId>>> checks_;
};

inline std::string describe_functor_objects(const Functor& F) {
  std::string s;
  for (std::size_t a = 0; a < F.source().object_count(); ++a) {
    if (a) s += ", ";
    s += F.source().object_name(static_cast<ObjId>(a)) + "->" + F.target().object_name(F.on_object(static_cast<ObjId>(a)));
  }
  return s;
}

}  // namespace codensity
