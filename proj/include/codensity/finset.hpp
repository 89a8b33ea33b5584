#pragma once

// Finite sets as ordered token lists, functions between them, and limits and
// colimits of finite diagrams of sets.

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "codensity/config.hpp"
#include "codensity/fincat.hpp"
#include "codensity/search.hpp"

namespace codensity {

/// An ordered finite set of distinct string tokens.  Copies share storage.
class FinSet {
 public:
  FinSet() : data_(empty_data()) {}

  explicit FinSet(std::vector<std::string> tokens) {
    auto d = std::make_shared<Data>();
    d->tokens = std::move(tokens);
    for (std::size_t i = 0; i < d->tokens.size(); ++i) {
      if (!d->index.emplace(d->tokens[i], static_cast<int>(i)).second)
        throw InputError("duplicate element '" + d->tokens[i] + "'");
    }
    data_ = std::move(d);
  }

  /// {0, 1, ..., n-1} as decimal tokens.
  static FinSet range(std::size_t n) {
    std::vector<std::string> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = std::to_string(i);
    return FinSet(std::move(t));
  }

  std::size_t size() const { return data_->tokens.size(); }
  bool empty() const { return data_->tokens.empty(); }
  const std::string& token(int i) const { return data_->tokens.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& tokens() const { return data_->tokens; }

  std::optional<int> find(const std::string& t) const {
    auto it = data_->index.find(t);
    if (it == data_->index.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const FinSet& a, const FinSet& b) {
    return a.data_ == b.data_ || a.data_->tokens == b.data_->tokens;
  }

 private:
  struct Data {
    std::vector<std::string> tokens;
    std::unordered_map<std::string, int> index;
  };
  static std::shared_ptr<const Data> empty_data() {
    static const auto e = std::make_shared<const Data>();
    return e;
  }
  std::shared_ptr<const Data> data_;
};

/// A function given by the image position of every domain element.
struct FinFunction {
  FinSet domain;
  FinSet codomain;
  std::vector<int> map;

  int operator()(int x) const { return map[static_cast<std::size_t>(x)]; }

  bool valid() const {
    if (map.size() != domain.size()) return false;
    return std::all_of(map.begin(), map.end(),
                       [&](int y) { return y >= 0 && static_cast<std::size_t>(y) < codomain.size(); });
  }
  bool injective() const {
    std::vector<char> seen(codomain.size(), 0);
    for (int y : map) {
      if (seen[static_cast<std::size_t>(y)]) return false;
      seen[static_cast<std::size_t>(y)] = 1;
    }
    return true;
  }
  bool bijective() const { return domain.size() == codomain.size() && injective(); }

  static FinFunction identity(const FinSet& s) {
    std::vector<int> m(s.size());
    std::iota(m.begin(), m.end(), 0);
    return {s, s, std::move(m)};
  }

  friend bool operator==(const FinFunction&, const FinFunction&) = default;
};

/// outer ∘ inner as plain position maps.
inline std::vector<int> compose_maps(const std::vector<int>& outer, const std::vector<int>& inner) {
  std::vector<int> r(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) r[i] = outer[static_cast<std::size_t>(inner[i])];
  return r;
}

inline FinFunction compose(const FinFunction& outer, const FinFunction& inner) {
  return {inner.domain, outer.codomain, compose_maps(outer.map, inner.map)};
}

inline std::string tuple_token(const std::vector<std::string>& parts) {
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ",";
    s += parts[i];
  }
  return s + ")";
}

/// All functions X → Y in lexicographic order of their image sequences.
struct HomSet {
  FinSet set;
  std::vector<std::vector<int>> functions;
};

inline HomSet hom_set(const FinSet& x, const FinSet& y) {
  std::size_t count = saturating_pow(y.size(), x.size());
  if (count > caps().max_tuples)
    throw BudgetExceeded("hom-set of " + std::to_string(y.size()) + "^" + std::to_string(x.size()) +
                         " functions exceeds the tuple cap");
  HomSet out;
  std::vector<std::string> tokens;
  tokens.reserve(count);
  out.functions.reserve(count);
  std::vector<int> cur(x.size(), 0);
  for (std::size_t k = 0; k < count; ++k) {
    std::string t = "[";
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (i) t += ",";
      t += y.token(cur[i]);
    }
    tokens.push_back(t + "]");
    out.functions.push_back(cur);
    for (std::size_t i = cur.size(); i-- > 0;) {
      if (++cur[i] < static_cast<int>(y.size())) break;
      cur[i] = 0;
    }
  }
  out.set = FinSet(std::move(tokens));
  return out;
}

/// A functor from a finite shape into finite sets.
struct Diagram {
  CategoryPtr shape;
  std::vector<FinSet> sets;            // per shape object
  std::vector<std::vector<int>> maps;  // per shape morphism: sets[dom] → sets[cod]

  std::vector<std::string> violations() const {
    std::vector<std::string> v;
    const auto& J = *shape;
    if (sets.size() != J.object_count() || maps.size() != J.morphism_count()) {
      v.push_back("diagram does not match its shape");
      return v;
    }
    for (std::size_t f = 0; f < maps.size(); ++f) {
      const auto& m = maps[f];
      const auto& d = sets[static_cast<std::size_t>(J.dom(static_cast<MorId>(f)))];
      const auto& c = sets[static_cast<std::size_t>(J.cod(static_cast<MorId>(f)))];
      bool ok = m.size() == d.size() &&
                std::all_of(m.begin(), m.end(), [&](int y) { return y >= 0 && static_cast<std::size_t>(y) < c.size(); });
      if (!ok) v.push_back("map of '" + J.morphism_name(static_cast<MorId>(f)) + "' is not a function");
    }
    if (!v.empty()) return v;
    for (std::size_t a = 0; a < sets.size(); ++a) {
      const auto& m = maps[static_cast<std::size_t>(J.identity(static_cast<ObjId>(a)))];
      for (std::size_t x = 0; x < m.size(); ++x)
        if (m[x] != static_cast<int>(x)) {
          v.push_back("identity of '" + J.object_name(static_cast<ObjId>(a)) + "' not sent to identity");
          break;
        }
    }
    for (std::size_t g = 0; g < maps.size(); ++g)
      for (std::size_t f = 0; f < maps.size(); ++f) {
        MorId gf = J.compose(static_cast<MorId>(g), static_cast<MorId>(f));
        if (gf == kNoMorphism) continue;
        if (compose_maps(maps[g], maps[f]) != maps[static_cast<std::size_t>(gf)])
          v.push_back("composite " + J.morphism_name(static_cast<MorId>(g)) + " . " +
                      J.morphism_name(static_cast<MorId>(f)) + " not preserved");
      }
    return v;
  }
};

/// The limit set as compatible tuples, with one projection per shape object.
struct LimitResult {
  FinSet apex;
  std::vector<std::vector<int>> tuples;  // tuples[t][j] = component at shape object j
  std::vector<FinFunction> projections;

  /// Position of a compatible tuple, if it is one.
  std::optional<int> find(const std::vector<int>& tuple) const {
    auto it = std::lower_bound(tuples.begin(), tuples.end(), tuple);
    if (it == tuples.end() || *it != tuple) return std::nullopt;
    return static_cast<int>(it - tuples.begin());
  }
};

namespace detail {

// Branch first on objects no morphism reaches from another object; the rest
// are usually forced by propagation.
inline std::vector<int> source_first_order(const FinCategory& J) {
  std::vector<int> indeg(J.object_count(), 0);
  for (const auto& m : J.morphisms())
    if (m.dom != m.cod) ++indeg[static_cast<std::size_t>(m.cod)];
  std::vector<int> order(J.object_count());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return (indeg[static_cast<std::size_t>(a)] > 0) < (indeg[static_cast<std::size_t>(b)] > 0); });
  return order;
}

}  // namespace detail

/// Compatible tuples of the product, in lexicographic order.  The result is
/// terminal among cones by construction; limit_factor() gives the mediating map.
inline LimitResult limit(const Diagram& d) {
  const auto& J = *d.shape;
  FunctionalCsp csp;
  for (std::size_t j = 0; j < J.object_count(); ++j) csp.add_variable(static_cast<int>(d.sets[j].size()));
  for (std::size_t f = 0; f < J.morphism_count(); ++f) {
    if (J.is_identity(static_cast<MorId>(f))) continue;
    csp.add_constraint(J.dom(static_cast<MorId>(f)), J.cod(static_cast<MorId>(f)), d.maps[f]);
  }
  SearchBudget budget("set limit");
  LimitResult out;
  out.tuples = csp.all_solutions(detail::source_first_order(J), budget, caps().max_tuples);
  std::sort(out.tuples.begin(), out.tuples.end());
  std::vector<std::string> tokens;
  tokens.reserve(out.tuples.size());
  for (const auto& t : out.tuples) {
    std::vector<std::string> parts;
    for (std::size_t j = 0; j < t.size(); ++j) parts.push_back(d.sets[j].token(t[j]));
    tokens.push_back(tuple_token(parts));
  }
  out.apex = FinSet(std::move(tokens));
  for (std::size_t j = 0; j < J.object_count(); ++j) {
    std::vector<int> m(out.tuples.size());
    for (std::size_t t = 0; t < m.size(); ++t) m[t] = out.tuples[t][j];
    out.projections.push_back({out.apex, d.sets[j], std::move(m)});
  }
  return out;
}

/// Is the family of legs (from a common apex of the given size) a cone?
inline bool is_cone(const Diagram& d, std::size_t apex_size, const std::vector<std::vector<int>>& legs) {
  const auto& J = *d.shape;
  for (std::size_t f = 0; f < J.morphism_count(); ++f) {
    auto a = static_cast<std::size_t>(J.dom(static_cast<MorId>(f)));
    auto b = static_cast<std::size_t>(J.cod(static_cast<MorId>(f)));
    for (std::size_t x = 0; x < apex_size; ++x)
      if (d.maps[f][static_cast<std::size_t>(legs[a][x])] != legs[b][x]) return false;
  }
  return true;
}

/// The unique map from a cone's apex into the limit, or nullopt if the legs do
/// not form a cone.
inline std::optional<std::vector<int>> limit_factor(const Diagram& d, const LimitResult& lim,
                                                    std::size_t apex_size,
                                                    const std::vector<std::vector<int>>& legs) {
  if (!is_cone(d, apex_size, legs)) return std::nullopt;
  std::vector<int> u(apex_size);
  for (std::size_t x = 0; x < apex_size; ++x) {
    std::vector<int> t(legs.size());
    for (std::size_t j = 0; j < legs.size(); ++j) t[j] = legs[j][x];
    auto pos = lim.find(t);
    if (!pos) return std::nullopt;
    u[x] = *pos;
  }
  return u;
}

/// Colimit as classes of the disjoint union under x ~ D(f)(x).
struct ColimitResult {
  FinSet apex;
  std::vector<FinFunction> injections;
};

inline ColimitResult colimit(const Diagram& d) {
  const auto& J = *d.shape;
  std::vector<std::size_t> offset(J.object_count() + 1, 0);
  for (std::size_t j = 0; j < J.object_count(); ++j) offset[j + 1] = offset[j] + d.sets[j].size();
  const std::size_t total = offset.back();
  if (total > caps().max_tuples) throw BudgetExceeded("colimit disjoint union exceeds the tuple cap");
  std::vector<std::size_t> parent(total);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t f = 0; f < J.morphism_count(); ++f) {
    auto a = static_cast<std::size_t>(J.dom(static_cast<MorId>(f)));
    auto b = static_cast<std::size_t>(J.cod(static_cast<MorId>(f)));
    for (std::size_t x = 0; x < d.sets[a].size(); ++x) {
      std::size_t p = find(offset[a] + x);
      std::size_t q = find(offset[b] + static_cast<std::size_t>(d.maps[f][x]));
      if (p == q) continue;
      // The least position represents its class.
      if (p < q) parent[q] = p;
      else parent[p] = q;
    }
  }
  std::vector<int> class_of(total, -1);
  std::vector<std::string> tokens;
  for (std::size_t j = 0; j < J.object_count(); ++j)
    for (std::size_t x = 0; x < d.sets[j].size(); ++x) {
      std::size_t p = offset[j] + x;
      std::size_t r = find(p);
      if (r == p) {
        class_of[p] = static_cast<int>(tokens.size());
        tokens.push_back(J.object_name(static_cast<ObjId>(j)) + ":" + d.sets[j].token(static_cast<int>(x)));
      }
    }
  ColimitResult out;
  out.apex = FinSet(std::move(tokens));
  for (std::size_t j = 0; j < J.object_count(); ++j) {
    std::vector<int> m(d.sets[j].size());
    for (std::size_t x = 0; x < m.size(); ++x) m[x] = class_of[find(offset[j] + x)];
    out.injections.push_back({d.sets[j], out.apex, std::move(m)});
  }
  return out;
}

/// The unique map out of the colimit induced by a cocone, or nullopt if the
/// legs do not form a cocone.
inline std::optional<std::vector<int>> colimit_factor(const Diagram& d, const ColimitResult& col,
                                                      const std::vector<std::vector<int>>& legs) {
  const auto& J = *d.shape;
  for (std::size_t f = 0; f < J.morphism_count(); ++f) {
    auto a = static_cast<std::size_t>(J.dom(static_cast<MorId>(f)));
    auto b = static_cast<std::size_t>(J.cod(static_cast<MorId>(f)));
    for (std::size_t x = 0; x < d.sets[a].size(); ++x)
      if (legs[b][static_cast<std::size_t>(d.maps[f][x])] != legs[a][x]) return std::nullopt;
  }
  std::vector<int> u(col.apex.size(), -1);
  for (std::size_t j = 0; j < legs.size(); ++j)
    for (std::size_t x = 0; x < legs[j].size(); ++x) u[static_cast<std::size_t>(col.injections[j](static_cast<int>(x)))] = legs[j][x];
  return u;
}

}  // namespace codensity
