#include <gtest/gtest.h>

#include <map>
#include <optional>
#include <random>

#include "support.hpp"

using namespace codensity;
using namespace codensity::testing;

namespace {

RawCategory walking_arrow_raw() {
  RawCategory r;
  r.objects = {"0", "1"};
  r.morphisms = {{"id0", "0", "0"}, {"id1", "1", "1"}, {"u", "0", "1"}};
  r.identities = {{"0", "id0"}, {"1", "id1"}};
  return r;
}

/// Independent check of the identity and associativity laws on complete raw tables.
bool satisfies_axioms(const RawCategory& raw) {
  std::map<std::string, std::pair<std::string, std::string>> ends;
  for (const auto& m : raw.morphisms) ends[m.name] = {m.dom, m.cod};
  std::map<std::string, std::string> id;
  for (const auto& [o, f] : raw.identities) id[o] = f;
  std::map<std::pair<std::string, std::string>, std::string> table;
  for (const auto& c : raw.composites) table[{c.g, c.f}] = c.result;
  for (const auto& [o, f] : id) {
    (void)o;
    for (const auto& m : raw.morphisms) {
      if (ends[m.name].first == ends[f].first) table.emplace(std::pair{m.name, f}, m.name);
      if (ends[m.name].second == ends[f].first) table.emplace(std::pair{f, m.name}, m.name);
    }
  }
  auto comp = [&](const std::string& g, const std::string& f) -> std::optional<std::string> {
    if (ends[f].second != ends[g].first) return std::nullopt;
    auto it = table.find({g, f});
    if (it == table.end()) return std::string("?");
    return it->second;
  };
  for (const auto& [gf, h] : table) {
    if (ends[gf.second].second != ends[gf.first].first) return false;
    if (ends[h] != std::pair{ends[gf.second].first, ends[gf.first].second}) return false;
  }
  for (const auto& [o, f] : id)
    for (const auto& m : raw.morphisms) {
      if (ends[m.name].first == o && *comp(m.name, f) != m.name) return false;
      if (ends[m.name].second == o && *comp(f, m.name) != m.name) return false;
    }
  for (const auto& h : raw.morphisms)
    for (const auto& g : raw.morphisms)
      for (const auto& f : raw.morphisms) {
        auto gf = comp(g.name, f.name);
        auto hg = comp(h.name, g.name);
        if (!gf || !hg || *gf == "?" || *hg == "?") continue;
        if (comp(h.name, *gf) != comp(*hg, f.name)) return false;
      }
  return true;
}

bool has_violation(const ValidationResult& v, const std::string& needle) {
  return std::any_of(v.violations.begin(), v.violations.end(), [&](const auto& s) { return s.find(needle) != std::string::npos; });
}

}  // namespace

TEST(ValidateCategory, WalkingArrowIsValid) {
  auto v = validate_category(walking_arrow_raw());
  ASSERT_TRUE(v.ok());
  EXPECT_EQ(v.category->object_count(), 2u);
  EXPECT_EQ(v.category->morphism_count(), 3u);
}

TEST(ValidateCategory, CyclicGroupOfOrderTwo) {
  RawCategory r;
  r.objects = {"*"};
  r.morphisms = {{"e", "*", "*"}, {"s", "*", "*"}};
  r.identities = {{"*", "e"}};
  r.composites = {{"s", "s", "e"}};
  auto v = validate_category(r);
  ASSERT_TRUE(v.ok());
  const auto& c = *v.category;
  EXPECT_EQ(c.compose(1, 1), 0);
  EXPECT_TRUE(c.is_iso(1));
}

TEST(ValidateCategory, ComposingIncompatibleArrowsIsReported) {
  auto r = walking_arrow_raw();
  r.composites.push_back({"u", "u", "u"});
  auto v = validate_category(r);
  EXPECT_FALSE(v.ok());
  EXPECT_TRUE(has_violation(v, "composite endpoints mismatch"));
}

TEST(ValidateCategory, ReportsEveryViolation) {
  auto r = walking_arrow_raw();
  r.identities.pop_back();
  r.morphisms.push_back({"w", "0", "2"});
  auto v = validate_category(r);
  EXPECT_FALSE(v.ok());
  EXPECT_TRUE(has_violation(v, "missing identity for object '1'"));
  EXPECT_TRUE(has_violation(v, "undeclared codomain '2'"));
}

TEST(ValidateCategory, NonAssociativeTableNamesTheTriple) {
  // {e, a, b} with every non-identity product e: (a.a).b = b but a.(a.b) = e.
  RawCategory r;
  r.objects = {"*"};
  r.morphisms = {{"e", "*", "*"}, {"a", "*", "*"}, {"b", "*", "*"}};
  r.identities = {{"*", "e"}};
  r.composites = {{"a", "a", "e"}, {"a", "b", "e"}, {"b", "a", "e"}, {"b", "b", "e"}};
  auto v = validate_category(r);
  EXPECT_FALSE(v.ok());
  EXPECT_TRUE(has_violation(v, "non-associative triple"));
}

TEST(ValidateCategory, CapOnMorphisms) {
  auto v = validate_category(walking_arrow_raw(), 2);
  EXPECT_FALSE(v.ok());
  EXPECT_TRUE(has_violation(v, "above the cap"));
}

TEST(ValidateCategory, RandomCorruptionsAreCaught) {
  std::mt19937_64 rng(11);
  std::size_t caught = 0, corrupted = 0, broken = 0;
  for (int trial = 0; trial < 200; ++trial) {
    RandomCategoryParams p;
    p.objects = 2;
    auto c = random_category(p, rng());
    // Rebuild raw tables, then redirect one non-identity composite.
    RawCategory raw;
    raw.objects = c->object_names();
    for (const auto& m : c->morphisms()) raw.morphisms.push_back({m.name, c->object_name(m.dom), c->object_name(m.cod)});
    for (std::size_t a = 0; a < c->object_count(); ++a)
      raw.identities.push_back({c->object_name(static_cast<ObjId>(a)), c->morphism_name(c->identity(static_cast<ObjId>(a)))});
    std::vector<std::size_t> candidates;
    for (std::size_t g = 0; g < c->morphism_count(); ++g)
      for (std::size_t f = 0; f < c->morphism_count(); ++f) {
        auto gf = c->compose(static_cast<MorId>(g), static_cast<MorId>(f));
        if (gf == kNoMorphism || c->is_identity(static_cast<MorId>(g)) || c->is_identity(static_cast<MorId>(f))) continue;
        candidates.push_back(raw.composites.size());
        raw.composites.push_back({c->morphism_name(static_cast<MorId>(g)), c->morphism_name(static_cast<MorId>(f)), c->morphism_name(gf)});
      }
    ASSERT_TRUE(validate_category(raw).ok());
    if (candidates.empty()) continue;
    auto& victim = raw.composites[candidates[rng() % candidates.size()]];
    std::vector<std::string> others;
    for (const auto& m : c->morphisms())
      if (m.name != victim.result) others.push_back(m.name);
    victim.result = others[rng() % others.size()];
    ++corrupted;
    bool valid = validate_category(raw).ok();
    // A redirected composite can still form a category; the oracle decides.
    EXPECT_EQ(valid, satisfies_axioms(raw)) << "trial " << trial;
    broken += !satisfies_axioms(raw);
    caught += !valid;
  }
  EXPECT_GT(corrupted, 20u);
  EXPECT_GT(broken, 20u);
  EXPECT_EQ(caught, broken);
}

TEST(Opposite, WalkingArrowReversesTheArrow) {
  auto op = opposite_category(walking_arrow());
  auto u = mor(op, "u");
  EXPECT_EQ(op->dom(u), obj(op, "1"));
  EXPECT_EQ(op->cod(u), obj(op, "0"));
}

TEST(Opposite, ChainOrderIsReversed) {
  auto op = opposite_category(chain_category(3));
  EXPECT_TRUE(op->arrow(obj(op, "2"), obj(op, "0")).has_value());
  EXPECT_FALSE(op->arrow(obj(op, "0"), obj(op, "2")).has_value());
}

TEST(Opposite, IsAnInvolutionOnRandomCategories) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RandomCategoryParams p;
    p.objects = 1 + seed % 4;
    auto c = random_category(p, seed);
    EXPECT_EQ(*opposite_category(opposite_category(c)), *c) << "seed " << seed;
  }
}

TEST(Comma, UnderZeroOfTheWalkingArrow) {
  auto w = walking_arrow();
  auto comma = comma_category(obj(w, "0"), Functor::identity(w));
  ASSERT_EQ(comma.category->object_count(), 2u);
  EXPECT_EQ(comma.arrow[0], mor(w, "id0"));
  EXPECT_EQ(comma.arrow[1], mor(w, "u"));
  EXPECT_EQ(comma.category->morphism_count(), 3u);
}

TEST(Comma, TerminalObjectAgainstItsOwnInclusion) {
  auto c = chain_category(3);
  auto sub = full_subcategory(c, {2});
  auto comma = comma_category(2, sub.inclusion);
  EXPECT_EQ(comma.category->object_count(), 1u);
  EXPECT_EQ(comma.category->morphism_count(), 1u);
}

TEST(Comma, EmptyWhenNothingIsReachable) {
  auto c = chain_category(3);
  auto sub = full_subcategory(c, {0});
  auto comma = comma_category(2, sub.inclusion);
  EXPECT_EQ(comma.category->object_count(), 0u);
}

TEST(Comma, UnderIdentityMatchesTheCoslice) {
  // The coslice under b has one object per arrow out of b.
  for (auto c : {chain_category(4), diamond_category(), walking_arrow(), cyclic_group_category(3)}) {
    for (std::size_t b = 0; b < c->object_count(); ++b) {
      auto comma = comma_category(static_cast<ObjId>(b), Functor::identity(c));
      std::size_t out = 0;
      for (std::size_t a = 0; a < c->object_count(); ++a) out += c->hom(static_cast<ObjId>(b), static_cast<ObjId>(a)).size();
      EXPECT_EQ(comma.category->object_count(), out);
    }
  }
}

TEST(NaturalIsomorphism, IdentityOnEqualFunctors) {
  auto c = diamond_category();
  auto id = Functor::identity(c);
  auto w = find_natural_isomorphism(id, id);
  ASSERT_TRUE(w.has_value());
  for (std::size_t a = 0; a < c->object_count(); ++a) EXPECT_TRUE(c->is_identity(w->component(static_cast<ObjId>(a))));
}

TEST(NaturalIsomorphism, NoneBetweenDistinctConstants) {
  auto c = chain_category(3);
  EXPECT_FALSE(find_natural_isomorphism(Functor::constant(c, c, 0), Functor::constant(c, c, 2)).has_value());
}

TEST(NaturalIsomorphism, DenseInclusionOfEverything) {
  auto c = chain_category(3);
  auto sub = full_subcategory(c, {0, 1, 2});
  auto lan = left_kan(sub.inclusion, sub.inclusion);
  ASSERT_TRUE(lan.exists());
  EXPECT_TRUE(find_natural_isomorphism(lan.functor(), Functor::identity(c)).has_value());
}

TEST(NaturalIsomorphism, SymmetricOnRandomPairs) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 40; ++i) {
    auto c = cyclic_group_category(1 + rng() % 4);
    auto d = cyclic_group_category(1 + rng() % 4);
    FunctorSearch fs(c, d);
    auto f = fs.random(rng);
    auto g = fs.random(rng);
    EXPECT_EQ(find_natural_isomorphism(f, g).has_value(), find_natural_isomorphism(g, f).has_value());
  }
}

TEST(FullSubcategory, HomSetsMatchTheParent) {
  auto c = diamond_category();
  auto sub = full_subcategory(c, {obj(c, "bot"), obj(c, "top")});
  const auto& s = *sub.category;
  for (std::size_t a = 0; a < s.object_count(); ++a)
    for (std::size_t b = 0; b < s.object_count(); ++b)
      EXPECT_EQ(s.hom(static_cast<ObjId>(a), static_cast<ObjId>(b)).size(),
                c->hom(sub.objects[a], sub.objects[b]).size());
}
