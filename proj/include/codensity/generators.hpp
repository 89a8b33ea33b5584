#pragma once

// Built-in instance generators: chains, lattices, finite-set skeletons, random
// concrete categories and presheaves, and exhaustive small-instance lists.

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "codensity/fincat.hpp"
#include "codensity/presheaf.hpp"

namespace codensity {

/// Thin category from a relation; the reflexive-transitive closure is taken.
/// Identities are named id_a and arrows a<=b.
inline RawCategory poset_raw(const std::vector<std::string>& objects,
                             const std::vector<std::pair<std::string, std::string>>& leq) {
  const std::size_t n = objects.size();
  std::map<std::string, std::size_t> ix;
  for (std::size_t i = 0; i < n; ++i) ix[objects[i]] = i;
  std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  for (const auto& [a, b] : leq) {
    auto ia = ix.find(a), ib = ix.find(b);
    if (ia == ix.end() || ib == ix.end()) throw InputError("order relation mentions undeclared object");
    r[ia->second][ib->second] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (r[i][k] && r[k][j]) r[i][j] = 1;
  auto name = [&](std::size_t i, std::size_t j) {
    return i == j ? "id_" + objects[i] : objects[i] + "<=" + objects[j];
  };
  RawCategory raw;
  raw.objects = objects;
  for (std::size_t i = 0; i < n; ++i) {
    raw.morphisms.push_back({name(i, i), objects[i], objects[i]});
    raw.identities.push_back({objects[i], name(i, i)});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && r[i][j]) raw.morphisms.push_back({name(i, j), objects[i], objects[j]});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (r[i][j] && r[j][k] && i != j && j != k) raw.composites.push_back({name(j, k), name(i, j), name(i, k)});
  return raw;
}

inline CategoryPtr poset_category(const std::vector<std::string>& objects,
                                  const std::vector<std::pair<std::string, std::string>>& leq) {
  return make_category(poset_raw(objects, leq));
}

/// 0 ≤ 1 ≤ … ≤ n-1.
inline CategoryPtr chain_category(std::size_t n) {
  std::vector<std::string> objs;
  std::vector<std::pair<std::string, std::string>> leq;
  for (std::size_t i = 0; i < n; ++i) objs.push_back(std::to_string(i));
  for (std::size_t i = 0; i + 1 < n; ++i) leq.push_back({objs[i], objs[i + 1]});
  return poset_category(objs, leq);
}

/// bot ≤ a, b ≤ top.
inline CategoryPtr diamond_category() {
  return poset_category({"bot", "a", "b", "top"}, {{"bot", "a"}, {"bot", "b"}, {"a", "top"}, {"b", "top"}});
}

/// Subsets of {0..n-1} under inclusion; objects named by their elements ("{}", "{0}", "{0,1}", …).
inline CategoryPtr powerset_category(std::size_t n) {
  std::vector<std::string> objs;
  const std::size_t count = std::size_t{1} << n;
  for (std::size_t s = 0; s < count; ++s) {
    std::string t = "{";
    bool first = true;
    for (std::size_t i = 0; i < n; ++i)
      if (s >> i & 1) {
        if (!first) t += ",";
        t += std::to_string(i);
        first = false;
      }
    objs.push_back(t + "}");
  }
  std::vector<std::pair<std::string, std::string>> leq;
  for (std::size_t s = 0; s < count; ++s)
    for (std::size_t i = 0; i < n; ++i)
      if (!(s >> i & 1)) leq.push_back({objs[s], objs[s | (std::size_t{1} << i)]});
  return poset_category(objs, leq);
}

/// Objects 0..m (the sets {0..k-1}) and every function between them.  A
/// morphism is named "n>k:" followed by its image digits.
inline CategoryPtr finset_skeleton(std::size_t m) {
  if (m > 9) throw InputError("finset skeleton size above 9");
  struct Fn {
    std::size_t n, k;
    std::vector<int> img;
  };
  std::vector<Fn> fns;
  std::map<std::tuple<std::size_t, std::size_t, std::vector<int>>, std::size_t> index;
  for (std::size_t n = 0; n <= m; ++n)
    for (std::size_t k = 0; k <= m; ++k) {
      std::size_t count = saturating_pow(k, n);
      if (fns.size() + count > caps().max_morphisms)
        throw InputError("finset skeleton " + std::to_string(m) + " exceeds the morphism cap");
      std::vector<int> cur(n, 0);
      for (std::size_t c = 0; c < count; ++c) {
        index[{n, k, cur}] = fns.size();
        fns.push_back({n, k, cur});
        for (std::size_t i = n; i-- > 0;) {
          if (++cur[i] < static_cast<int>(k)) break;
          cur[i] = 0;
        }
      }
    }
  auto name = [](const Fn& f) {
    std::string s = std::to_string(f.n) + ">" + std::to_string(f.k) + ":";
    for (int v : f.img) s += std::to_string(v);
    return s;
  };
  RawCategory raw;
  for (std::size_t n = 0; n <= m; ++n) raw.objects.push_back(std::to_string(n));
  for (const auto& f : fns) raw.morphisms.push_back({name(f), std::to_string(f.n), std::to_string(f.k)});
  for (std::size_t n = 0; n <= m; ++n) {
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    raw.identities.push_back({std::to_string(n), name(fns[index[{n, n, id}]])});
  }
  for (const auto& f : fns)
    for (const auto& g : fns) {
      if (f.k != g.n) continue;
      std::vector<int> gf(f.n);
      for (std::size_t i = 0; i < f.n; ++i) gf[i] = g.img[static_cast<std::size_t>(f.img[i])];
      raw.composites.push_back({name(g), name(f), name(fns[index[{f.n, g.k, gf}]])});
    }
  return make_category(raw);
}

/// Objects 0, 1 and one arrow u: 0 → 1.
inline CategoryPtr walking_arrow() {
  RawCategory r;
  r.objects = {"0", "1"};
  r.morphisms = {{"id0", "0", "0"}, {"id1", "1", "1"}, {"u", "0", "1"}};
  r.identities = {{"0", "id0"}, {"1", "id1"}};
  return make_category(r);
}

/// A one-object category from a monoid multiplication table on {e, m1, …}.
inline CategoryPtr monoid_category(const std::vector<std::vector<int>>& mult, const std::string& prefix = "m") {
  RawCategory r;
  r.objects = {"*"};
  for (std::size_t i = 0; i < mult.size(); ++i)
    r.morphisms.push_back({i == 0 ? "e" : prefix + std::to_string(i), "*", "*"});
  r.identities = {{"*", "e"}};
  for (std::size_t g = 0; g < mult.size(); ++g)
    for (std::size_t f = 0; f < mult.size(); ++f)
      r.composites.push_back({r.morphisms[g].name, r.morphisms[f].name,
                              r.morphisms[static_cast<std::size_t>(mult[g][f])].name});
  return make_category(r);
}

inline CategoryPtr cyclic_group_category(std::size_t n) {
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = static_cast<int>((i + j) % n);
  return monoid_category(t, "g");
}

// ---------------------------------------------------------------------------
// Thin categories

/// Is the thin category a lattice (nonempty, all binary meets and joins, bounded)?
inline bool is_lattice(const FinCategory& c) {
  if (!c.is_thin() || c.object_count() == 0) return false;
  const std::size_t n = c.object_count();
  auto le = [&](std::size_t a, std::size_t b) { return !c.hom(static_cast<ObjId>(a), static_cast<ObjId>(b)).empty(); };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && le(a, b) && le(b, a)) return false;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      int meets = 0, joins = 0;
      for (std::size_t m = 0; m < n; ++m) {
        bool lower = le(m, a) && le(m, b);
        bool greatest = lower;
        for (std::size_t x = 0; x < n && greatest; ++x)
          if (le(x, a) && le(x, b)) greatest = le(x, m);
        meets += greatest;
        bool upper = le(a, m) && le(b, m);
        bool least = upper;
        for (std::size_t x = 0; x < n && least; ++x)
          if (le(a, x) && le(b, x)) least = le(m, x);
        joins += least;
      }
      if (meets != 1 || joins != 1) return false;
    }
  return true;
}

/// Every lattice with exactly n elements, up to isomorphism.  Elements are
/// named 0..n-1 along a linear extension.
inline std::vector<CategoryPtr> enumerate_lattices(std::size_t n) {
  std::vector<CategoryPtr> out;
  if (n == 0) return out;
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) slots.push_back({i, j});
  std::set<std::vector<char>> seen;
  std::vector<std::size_t> perm(n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << slots.size()); ++mask) {
    std::vector<char> r(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) r[i * n + i] = 1;
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (mask >> s & 1) r[slots[s].first * n + slots[s].second] = 1;
    bool transitive = true;
    for (std::size_t i = 0; i < n && transitive; ++i)
      for (std::size_t j = 0; j < n && transitive; ++j)
        for (std::size_t k = 0; k < n && transitive; ++k)
          if (r[i * n + j] && r[j * n + k] && !r[i * n + k]) transitive = false;
    if (!transitive) continue;
    // Canonical form: lexicographically least relation matrix over relabelings
    // that keep a linear extension.
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<char> best;
    do {
      bool ext = true;
      for (std::size_t i = 0; i < n && ext; ++i)
        for (std::size_t j = 0; j < n && ext; ++j)
          if (r[i * n + j] && perm[i] > perm[j]) ext = false;
      if (!ext) continue;
      std::vector<char> t(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[perm[i] * n + perm[j]] = r[i * n + j];
      if (best.empty() || t < best) best = t;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!seen.insert(best).second) continue;
    std::vector<std::string> objs;
    std::vector<std::pair<std::string, std::string>> leq;
    for (std::size_t i = 0; i < n; ++i) objs.push_back(std::to_string(i));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && best[i * n + j]) leq.push_back({objs[i], objs[j]});
    auto c = poset_category(objs, leq);
    if (is_lattice(*c)) out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random concrete categories

struct RandomCategoryParams {
  std::size_t objects = 3;
  std::size_t max_set_size = 3;
  std::size_t generators = 3;
  std::size_t max_morphisms = 40;
};

/// Random functions between small sets, closed under composition.  Objects are
/// c0, c1, …; identities id_ci; generators g0, g1, …; other composites m0, m1, ….
inline CategoryPtr random_category(const RandomCategoryParams& p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size_dist(1, std::max<std::size_t>(1, p.max_set_size));
  std::vector<std::size_t> sizes(p.objects);
  for (auto& s : sizes) s = size_dist(rng);
  struct Fn {
    std::size_t dom, cod;
    std::vector<int> img;
    auto key() const { return std::tie(dom, cod, img); }
  };
  std::uniform_int_distribution<std::size_t> obj_dist(0, p.objects == 0 ? 0 : p.objects - 1);
  std::vector<Fn> gens;
  for (std::size_t g = 0; g < p.generators && p.objects > 0; ++g) {
    Fn f{obj_dist(rng), obj_dist(rng), {}};
    std::uniform_int_distribution<int> img(0, static_cast<int>(sizes[f.cod]) - 1);
    for (std::size_t x = 0; x < sizes[f.dom]; ++x) f.img.push_back(img(rng));
    gens.push_back(std::move(f));
  }
  for (std::size_t used = gens.size() + 1; used-- > 0;) {
    std::vector<Fn> mors;
    std::vector<std::string> names;
    std::map<std::tuple<std::size_t, std::size_t, std::vector<int>>, std::size_t> index;
    auto add = [&](Fn f, std::string nm) {
      auto k = std::make_tuple(f.dom, f.cod, f.img);
      if (index.count(k)) return false;
      index[k] = mors.size();
      mors.push_back(std::move(f));
      names.push_back(std::move(nm));
      return true;
    };
    for (std::size_t a = 0; a < p.objects; ++a) {
      std::vector<int> id(sizes[a]);
      std::iota(id.begin(), id.end(), 0);
      add({a, a, id}, "id_c" + std::to_string(a));
    }
    for (std::size_t g = 0; g < used; ++g) add(gens[g], "g" + std::to_string(g));
    bool overflow = false;
    std::size_t composite_count = 0;
    for (bool grew = true; grew && !overflow;) {
      grew = false;
      for (std::size_t i = 0; i < mors.size() && !overflow; ++i)
        for (std::size_t j = 0; j < mors.size() && !overflow; ++j) {
          if (mors[j].cod != mors[i].dom) continue;
          Fn c{mors[j].dom, mors[i].cod, {}};
          for (int x : mors[j].img) c.img.push_back(mors[i].img[static_cast<std::size_t>(x)]);
          if (add(std::move(c), "m" + std::to_string(composite_count))) {
            ++composite_count;
            grew = true;
            overflow = mors.size() > p.max_morphisms;
          }
        }
    }
    if (overflow) continue;
    RawCategory raw;
    for (std::size_t a = 0; a < p.objects; ++a) raw.objects.push_back("c" + std::to_string(a));
    for (std::size_t i = 0; i < mors.size(); ++i)
      raw.morphisms.push_back({names[i], raw.objects[mors[i].dom], raw.objects[mors[i].cod]});
    for (std::size_t a = 0; a < p.objects; ++a) raw.identities.push_back({raw.objects[a], names[a]});
    for (std::size_t i = 0; i < mors.size(); ++i)
      for (std::size_t j = 0; j < mors.size(); ++j) {
        if (mors[j].cod != mors[i].dom) continue;
        std::vector<int> img;
        for (int x : mors[j].img) img.push_back(mors[i].img[static_cast<std::size_t>(x)]);
        raw.composites.push_back({names[i], names[j], names[index[{mors[j].dom, mors[i].cod, img}]]});
      }
    return make_category(raw);
  }
  throw Error("random category generation failed");
}

// ---------------------------------------------------------------------------
// Presheaves

/// A random quotient of a coproduct of representables, merged until every
/// set has at most max_elements elements.  Every finite presheaf arises this way.
inline Presheaf random_presheaf(const CategoryPtr& base, std::size_t max_elements, std::mt19937_64& rng,
                                std::size_t max_generators = 3) {
  const auto& C = *base;
  const std::size_t n = C.object_count();
  if (n == 0) return empty_set_functor<Variance::contravariant>(base);
  std::uniform_int_distribution<std::size_t> count_dist(0, max_generators);
  std::uniform_int_distribution<int> obj_dist(0, static_cast<int>(n) - 1);
  std::size_t gens = count_dist(rng);
  // Elements at b: pairs (generator, morphism b → a_gen).
  std::vector<std::vector<std::pair<std::size_t, MorId>>> elems(n);
  std::vector<ObjId> gen_obj;
  for (std::size_t g = 0; g < gens; ++g) gen_obj.push_back(obj_dist(rng));
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t g = 0; g < gens; ++g)
      for (MorId f : C.hom(static_cast<ObjId>(b), gen_obj[g])) elems[b].push_back({g, f});
  std::vector<std::map<std::pair<std::size_t, MorId>, int>> pos(n);
  for (std::size_t b = 0; b < n; ++b)
    for (std::size_t i = 0; i < elems[b].size(); ++i) pos[b][elems[b][i]] = static_cast<int>(i);
  // act[f]: elements at cod f → elements at dom f, by precomposition.
  std::vector<std::vector<int>> act(C.morphism_count());
  for (std::size_t f = 0; f < C.morphism_count(); ++f) {
    auto d = static_cast<std::size_t>(C.dom(static_cast<MorId>(f)));
    for (const auto& [g, h] : elems[static_cast<std::size_t>(C.cod(static_cast<MorId>(f)))])
      act[f].push_back(pos[d][{g, C.compose(h, static_cast<MorId>(f))}]);
  }
  std::vector<std::vector<int>> parent(n);
  for (std::size_t b = 0; b < n; ++b) {
    parent[b].resize(elems[b].size());
    std::iota(parent[b].begin(), parent[b].end(), 0);
  }
  auto find = [&](std::size_t b, int x) {
    while (parent[b][static_cast<std::size_t>(x)] != x) x = parent[b][static_cast<std::size_t>(x)] = parent[b][static_cast<std::size_t>(parent[b][static_cast<std::size_t>(x)])];
    return x;
  };
  // Merge x ~ y at b and close under the action (congruence closure).
  auto merge = [&](std::size_t b0, int x0, int y0) {
    std::vector<std::tuple<std::size_t, int, int>> queue{{b0, x0, y0}};
    while (!queue.empty()) {
      auto [b, x, y] = queue.back();
      queue.pop_back();
      int rx = find(b, x), ry = find(b, y);
      if (rx == ry) continue;
      parent[b][static_cast<std::size_t>(std::max(rx, ry))] = std::min(rx, ry);
      for (std::size_t f = 0; f < C.morphism_count(); ++f) {
        if (static_cast<std::size_t>(C.cod(static_cast<MorId>(f))) != b) continue;
        auto d = static_cast<std::size_t>(C.dom(static_cast<MorId>(f)));
        queue.push_back({d, act[f][static_cast<std::size_t>(x)], act[f][static_cast<std::size_t>(y)]});
      }
    }
  };
  auto classes = [&](std::size_t b) {
    std::set<int> s;
    for (std::size_t x = 0; x < elems[b].size(); ++x) s.insert(find(b, static_cast<int>(x)));
    return s;
  };
  // A few random merges, then forced merges down to the size bound.
  std::uniform_int_distribution<int> coin(0, 3);
  for (std::size_t b = 0; b < n; ++b) {
    if (elems[b].size() > 1 && coin(rng) == 0) {
      std::uniform_int_distribution<int> pick(0, static_cast<int>(elems[b].size()) - 1);
      merge(b, pick(rng), pick(rng));
    }
  }
  for (bool again = true; again;) {
    again = false;
    for (std::size_t b = 0; b < n; ++b) {
      auto cl = classes(b);
      if (cl.size() > max_elements) {
        std::vector<int> reps(cl.begin(), cl.end());
        std::uniform_int_distribution<std::size_t> pick(0, reps.size() - 1);
        std::size_t i = pick(rng), j = pick(rng);
        if (i == j) j = (i + 1) % reps.size();
        merge(b, reps[i], reps[j]);
        again = true;
      }
    }
  }
  std::vector<FinSet> at;
  std::vector<std::vector<int>> class_index(n);
  for (std::size_t b = 0; b < n; ++b) {
    auto cl = classes(b);
    std::vector<int> reps(cl.begin(), cl.end());
    class_index[b].assign(elems[b].size(), -1);
    std::vector<std::string> tokens;
    for (std::size_t k = 0; k < reps.size(); ++k) tokens.push_back(C.object_name(static_cast<ObjId>(b)) + "." + std::to_string(k));
    for (std::size_t x = 0; x < elems[b].size(); ++x)
      class_index[b][x] = static_cast<int>(std::lower_bound(reps.begin(), reps.end(), find(b, static_cast<int>(x))) - reps.begin());
    at.emplace_back(std::move(tokens));
  }
  std::vector<std::vector<int>> qact(C.morphism_count());
  for (std::size_t f = 0; f < C.morphism_count(); ++f) {
    auto c = static_cast<std::size_t>(C.cod(static_cast<MorId>(f)));
    auto d = static_cast<std::size_t>(C.dom(static_cast<MorId>(f)));
    qact[f].assign(at[c].size(), -1);
    for (std::size_t x = 0; x < elems[c].size(); ++x)
      qact[f][static_cast<std::size_t>(class_index[c][x])] = class_index[d][static_cast<std::size_t>(act[f][x])];
  }
  return Presheaf(base, std::move(at), std::move(qact));
}

/// Every presheaf with at most max_elements elements per object (not
/// deduplicated up to isomorphism), elements named 0, 1, ….
template <Variance V = Variance::contravariant>
std::vector<SetFunctor<V>> enumerate_set_functors(const CategoryPtr& base, std::size_t max_elements,
                                                   std::size_t max_results = 100'000) {
  const auto& C = *base;
  const std::size_t n = C.object_count();
  std::vector<SetFunctor<V>> out;
  std::vector<std::size_t> sizes(n, 0);
  std::vector<MorId> nonid;
  for (std::size_t f = 0; f < C.morphism_count(); ++f)
    if (!C.is_identity(static_cast<MorId>(f))) nonid.push_back(static_cast<MorId>(f));
  std::function<void(std::size_t)> choose_sizes = [&](std::size_t a) {
    if (a < n) {
      for (std::size_t s = 0; s <= max_elements; ++s) {
        sizes[a] = s;
        choose_sizes(a + 1);
      }
      return;
    }
    std::vector<FinSet> at;
    for (std::size_t s : sizes) at.push_back(FinSet::range(s));
    std::vector<std::vector<int>> act(C.morphism_count());
    for (std::size_t b = 0; b < n; ++b) act[static_cast<std::size_t>(C.identity(static_cast<ObjId>(b)))] = FinFunction::identity(at[b]).map;
    std::function<void(std::size_t)> choose_maps = [&](std::size_t k) {
      if (k == nonid.size()) {
        if (SetFunctor<V>::violations(C, at, act).empty()) {
          if (out.size() >= max_results) throw BudgetExceeded("too many set functors");
          out.push_back(SetFunctor<V>::unchecked(base, at, act));
        }
        return;
      }
      MorId f = nonid[k];
      auto s = sizes[static_cast<std::size_t>(SetFunctor<V>::source_of(C, f))];
      auto t = sizes[static_cast<std::size_t>(SetFunctor<V>::target_of(C, f))];
      auto hs = hom_set(FinSet::range(s), FinSet::range(t));
      for (const auto& fn : hs.functions) {
        act[static_cast<std::size_t>(f)] = fn;
        choose_maps(k + 1);
      }
    };
    choose_maps(0);
  };
  choose_sizes(0);
  return out;
}

// ---------------------------------------------------------------------------
// Small categories

/// Every category with at most max_objects objects and max_morphisms
/// morphisms, up to isomorphism.
inline std::vector<CategoryPtr> enumerate_small_categories(std::size_t max_objects, std::size_t max_morphisms) {
  std::vector<CategoryPtr> out;
  std::set<std::vector<int>> seen;
  for (std::size_t n = 0; n <= max_objects; ++n)
    for (std::size_t m = n; m <= max_morphisms; ++m) {
      const std::size_t extra = m - n;
      // Endpoints of the non-identity morphisms.
      std::vector<std::pair<std::size_t, std::size_t>> ends(extra);
      std::function<void(std::size_t)> choose_ends = [&](std::size_t k) {
        if (k < extra) {
          for (std::size_t d = 0; d < n; ++d)
            for (std::size_t c = 0; c < n; ++c) {
              ends[k] = {d, c};
              choose_ends(k + 1);
            }
          return;
        }
        if (n == 0 && extra > 0) return;
        // Morphism ids: 0..n-1 identities, n.. extras.
        std::vector<std::pair<std::size_t, std::size_t>> all;
        for (std::size_t a = 0; a < n; ++a) all.push_back({a, a});
        for (const auto& e : ends) all.push_back(e);
        std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (g, f) among extras, composable
        for (std::size_t g = n; g < m; ++g)
          for (std::size_t f = n; f < m; ++f)
            if (all[f].second == all[g].first) pairs.push_back({g, f});
        std::vector<std::vector<std::size_t>> cands;
        for (const auto& [g, f] : pairs) {
          std::vector<std::size_t> c;
          for (std::size_t h = 0; h < m; ++h)
            if (all[h].first == all[f].first && all[h].second == all[g].second) c.push_back(h);
          cands.push_back(std::move(c));
        }
        std::vector<std::size_t> choice(pairs.size(), 0);
        std::function<void(std::size_t)> choose_table = [&](std::size_t k2) {
          if (k2 < pairs.size()) {
            for (std::size_t c : cands[k2]) {
              choice[k2] = c;
              choose_table(k2 + 1);
            }
            return;
          }
          RawCategory raw;
          for (std::size_t a = 0; a < n; ++a) raw.objects.push_back(std::to_string(a));
          for (std::size_t h = 0; h < m; ++h)
            raw.morphisms.push_back({h < n ? "id" + std::to_string(h) : "f" + std::to_string(h - n),
                                     raw.objects[all[h].first], raw.objects[all[h].second]});
          for (std::size_t a = 0; a < n; ++a) raw.identities.push_back({raw.objects[a], raw.morphisms[a].name});
          for (std::size_t i = 0; i < pairs.size(); ++i)
            raw.composites.push_back({raw.morphisms[pairs[i].first].name, raw.morphisms[pairs[i].second].name,
                                      raw.morphisms[choice[i]].name});
          auto r = validate_category(raw);
          if (!r.ok()) return;
          // Canonical form over object and morphism relabelings.
          const auto& C = *r.category;
          std::vector<std::size_t> op(n), mp(extra);
          std::iota(op.begin(), op.end(), 0);
          std::vector<int> best;
          do {
            std::iota(mp.begin(), mp.end(), 0);
            do {
              auto relabel = [&](std::size_t h) { return h < n ? op[h] : n + mp[h - n]; };
              std::vector<int> code(m * 2 + m * m, -1);
              for (std::size_t h = 0; h < m; ++h) {
                code[relabel(h) * 2] = static_cast<int>(op[all[h].first]);
                code[relabel(h) * 2 + 1] = static_cast<int>(op[all[h].second]);
              }
              for (std::size_t g = 0; g < m; ++g)
                for (std::size_t f = 0; f < m; ++f) {
                  MorId gf = C.compose(static_cast<MorId>(g), static_cast<MorId>(f));
                  code[m * 2 + relabel(g) * m + relabel(f)] = gf < 0 ? -1 : static_cast<int>(relabel(static_cast<std::size_t>(gf)));
                }
              if (best.empty() || code < best) best = code;
            } while (std::next_permutation(mp.begin(), mp.end()));
          } while (std::next_permutation(op.begin(), op.end()));
          best.insert(best.begin(), {static_cast<int>(n), static_cast<int>(m)});
          if (!seen.insert(best).second) return;
          out.push_back(share(std::move(*r.category)));
        };
        choose_table(0);
      };
      choose_ends(0);
    }
  return out;
}

}  // namespace codensity
