#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace codensity;

namespace {

FinSet named(std::vector<std::string> t) { return FinSet(std::move(t)); }

Diagram discrete_diagram(std::vector<FinSet> sets) {
  auto shape = discrete_category(sets.size());
  Diagram d{shape, std::move(sets), {}};
  for (std::size_t a = 0; a < d.sets.size(); ++a) d.maps.push_back(FinFunction::identity(d.sets[a]).map);
  return d;
}

/// s → l, s → r.
Diagram span(const FinSet& s, const FinSet& l, const FinSet& r, std::vector<int> to_l, std::vector<int> to_r) {
  auto shape = poset_category({"s", "l", "r"}, {{"s", "l"}, {"s", "r"}});
  Diagram d{shape, {}, {}};
  d.sets = {s, l, r};
  d.maps.resize(shape->morphism_count());
  for (std::size_t f = 0; f < shape->morphism_count(); ++f) {
    auto m = static_cast<MorId>(f);
    if (shape->is_identity(m)) d.maps[f] = FinFunction::identity(d.sets[static_cast<std::size_t>(shape->dom(m))]).map;
    else d.maps[f] = shape->cod(m) == 1 ? to_l : to_r;
  }
  return d;
}

}  // namespace

TEST(HomSet, TwoToTwoHasFourFunctions) {
  auto h = hom_set(named({"a", "b"}), named({"0", "1"}));
  EXPECT_EQ(h.set.size(), 4u);
  EXPECT_EQ(h.functions.front(), (std::vector<int>{0, 0}));
  EXPECT_EQ(h.functions.back(), (std::vector<int>{1, 1}));
}

TEST(HomSet, EmptyDomainHasTheEmptyMap) { EXPECT_EQ(hom_set(FinSet(), named({"0", "1"})).set.size(), 1u); }

TEST(HomSet, NonEmptyIntoEmptyIsEmpty) { EXPECT_EQ(hom_set(named({"a"}), FinSet()).set.size(), 0u); }

TEST(HomSet, OverTheCapThrows) {
  Caps c;
  c.max_tuples = 10;
  ScopedCaps scoped(c);
  EXPECT_THROW(hom_set(FinSet::range(4), FinSet::range(2)), BudgetExceeded);
}

TEST(Limit, ProductOfTwoAndThree) {
  auto lim = limit(discrete_diagram({FinSet::range(2), FinSet::range(3)}));
  EXPECT_EQ(lim.apex.size(), 6u);
}

TEST(Limit, EqualizerOfEqualArrowsIsTheDomain) {
  auto pair = parallel_pair_category();
  Diagram d{pair, {FinSet::range(3), FinSet::range(2)}, {{0, 1, 2}, {0, 1}, {0, 1, 1}, {0, 1, 1}}};
  EXPECT_EQ(limit(d).apex.size(), 3u);
}

TEST(Limit, EmptyShapeGivesASingleton) {
  EXPECT_EQ(limit(discrete_diagram({})).apex.size(), 1u);
}

TEST(Limit, TerminalShapeObjectProjectsBijectively) {
  // Over a chain the top object is terminal in the shape, so its projection is a bijection.
  auto shape = chain_category(3);
  Diagram d{shape, {FinSet::range(2), FinSet::range(2), FinSet::range(3)}, {}};
  d.maps.resize(shape->morphism_count());
  for (std::size_t f = 0; f < shape->morphism_count(); ++f) {
    auto m = static_cast<MorId>(f);
    auto a = shape->dom(m), b = shape->cod(m);
    if (a == b) d.maps[f] = FinFunction::identity(d.sets[static_cast<std::size_t>(a)]).map;
    else if (b == 1) d.maps[f] = {1, 0};
    else if (a == 0) d.maps[f] = {2, 0};
    else d.maps[f] = {0, 2};
  }
  ASSERT_TRUE(d.violations().empty());
  auto lim = limit(d);
  EXPECT_TRUE(lim.projections[0].bijective());
}

TEST(Limit, TerminalAmongSampledCones) {
  std::mt19937_64 rng(3);
  auto pair = parallel_pair_category();
  Diagram d{pair, {FinSet::range(3), FinSet::range(2)}, {{0, 1, 2}, {0, 1}, {0, 1, 1}, {1, 1, 0}}};
  auto lim = limit(d);
  std::size_t cones = 0;
  for (int i = 0; i < 1000; ++i) {
    std::size_t apex = 1 + rng() % 3;
    std::vector<std::vector<int>> legs(2, std::vector<int>(apex));
    for (std::size_t x = 0; x < apex; ++x) {
      legs[0][x] = static_cast<int>(rng() % 3);
      legs[1][x] = d.maps[2][static_cast<std::size_t>(legs[0][x])];
    }
    if (!is_cone(d, apex, legs)) continue;
    ++cones;
    auto u = limit_factor(d, lim, apex, legs);
    ASSERT_TRUE(u.has_value());
    for (std::size_t x = 0; x < apex; ++x)
      for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(lim.projections[j]((*u)[x]), legs[j][x]);
  }
  EXPECT_GT(cones, 100u);
}

TEST(Colimit, CoproductOfTwoAndThree) {
  EXPECT_EQ(colimit(discrete_diagram({FinSet::range(2), FinSet::range(3)})).apex.size(), 5u);
}

TEST(Colimit, CoequalizerOfIdenticalArrowsIsTheCodomain) {
  auto pair = parallel_pair_category();
  Diagram d{pair, {FinSet::range(2), FinSet::range(3)}, {{0, 1}, {0, 1, 2}, {0, 2}, {0, 2}}};
  EXPECT_EQ(colimit(d).apex.size(), 3u);
}

TEST(Colimit, PushoutGluingOnePoint) {
  auto d = span(named({"p"}), named({"x", "y"}), named({"u", "v"}), {0}, {0});
  EXPECT_EQ(colimit(d).apex.size(), 3u);
}

TEST(Colimit, EmptyShapeGivesTheEmptySet) { EXPECT_EQ(colimit(discrete_diagram({})).apex.size(), 0u); }

TEST(Colimit, MatchesUnionFindOracle) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t s = rng() % 4, l = 1 + rng() % 3, r = 1 + rng() % 3;
    std::vector<int> tl(s), tr(s);
    for (auto& x : tl) x = static_cast<int>(rng() % l);
    for (auto& x : tr) x = static_cast<int>(rng() % r);
    auto d = span(FinSet::range(s), FinSet::range(l), FinSet::range(r), tl, tr);
    // Oracle: count classes of l ⊔ r under tl(x) ~ tr(x).
    std::vector<std::size_t> parent(l + r);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (std::size_t x = 0; x < s; ++x) parent[find(static_cast<std::size_t>(tl[x]))] = find(l + static_cast<std::size_t>(tr[x]));
    std::size_t classes = 0;
    for (std::size_t x = 0; x < l + r; ++x) classes += find(x) == x;
    EXPECT_EQ(colimit(d).apex.size(), classes) << "trial " << trial;
  }
}

TEST(Limit, TokensAreStableAcrossRuns) {
  auto d = discrete_diagram({named({"a", "b"}), named({"x"})});
  EXPECT_EQ(limit(d).apex.tokens(), limit(d).apex.tokens());
}
