#include <gtest/gtest.h>

#include <functional>

#include "support.hpp"

using namespace codensity;
using namespace codensity::testing;

namespace {

/// Every family of component functions, filtered by naturality: no pruning.
template <Variance V>
std::vector<Family> brute_force_families(const SetFunctor<V>& p, const SetFunctor<V>& q) {
  const auto& C = p.base();
  std::vector<HomSet> homs;
  for (std::size_t a = 0; a < C.object_count(); ++a) homs.push_back(hom_set(p.at(static_cast<ObjId>(a)), q.at(static_cast<ObjId>(a))));
  std::vector<Family> out;
  Family cur(C.object_count());
  std::function<void(std::size_t)> go = [&](std::size_t a) {
    if (a == C.object_count()) {
      if (is_natural(p, q, cur)) out.push_back(cur);
      return;
    }
    for (const auto& fn : homs[a].functions) {
      cur[a] = fn;
      go(a + 1);
    }
  };
  go(0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Yoneda, TopOfTheChain) {
  auto c = chain_category(3);
  auto y = yoneda(c, 2);
  for (std::size_t b = 0; b < 3; ++b) EXPECT_EQ(y.at(static_cast<ObjId>(b)).size(), 1u);
}

TEST(Yoneda, DiscreteCategory) {
  auto c = discrete_category(3);
  auto y = yoneda(c, 1);
  EXPECT_EQ(set_sizes(y), (std::vector<std::size_t>{0, 1, 0}));
}

TEST(Yoneda, WalkingArrowAtOne) {
  auto w = walking_arrow();
  auto y = yoneda(w, 1);
  EXPECT_EQ(y.at(0).tokens(), (std::vector<std::string>{"u"}));
  EXPECT_EQ(y.at(1).tokens(), (std::vector<std::string>{"id1"}));
}

TEST(Coyoneda, WalkingArrowAtZero) {
  auto w = walking_arrow();
  auto y = coyoneda(w, 0);
  EXPECT_EQ(y.at(0).tokens(), (std::vector<std::string>{"id0"}));
  EXPECT_EQ(y.at(1).tokens(), (std::vector<std::string>{"u"}));
}

TEST(Coyoneda, IsYonedaOnTheOpposite) {
  for (auto c : {walking_arrow(), diamond_category(), cyclic_group_category(3)}) {
    auto op = opposite_category(c);
    for (std::size_t a = 0; a < c->object_count(); ++a) {
      auto q = coyoneda(c, static_cast<ObjId>(a));
      auto p = yoneda(op, static_cast<ObjId>(a));
      EXPECT_EQ(set_sizes(q), set_sizes(p));
      for (std::size_t b = 0; b < c->object_count(); ++b)
        EXPECT_EQ(q.at(static_cast<ObjId>(b)).tokens(), p.at(static_cast<ObjId>(b)).tokens());
    }
  }
}

TEST(NatSet, YonedaCountsElements) {
  auto w = walking_arrow();
  for (const auto& p : enumerate_set_functors(w, 2))
    for (ObjId a : {0, 1}) EXPECT_EQ(nat_set(yoneda(w, a), p).size(), p.at(a).size());
}

TEST(NatSet, IntoTheTerminalPresheaf) {
  auto d = diamond_category();
  std::mt19937_64 rng(1);
  auto p = random_presheaf(d, 3, rng);
  EXPECT_EQ(nat_set(p, terminal_set_functor<Variance::contravariant>(d)).size(), 1u);
}

TEST(NatSet, ConstantTwoOnTheWalkingArrow) {
  auto w = walking_arrow();
  auto two = constant_set_functor<Variance::contravariant>(w, FinSet::range(2));
  EXPECT_EQ(nat_set(two, two).size(), 4u);
  EXPECT_EQ(nat_set(two, two).families, brute_force_families(two, two));
}

TEST(NatSet, PruningMatchesExhaustiveEnumeration) {
  for (auto c : enumerate_small_categories(2, 3)) {
    auto ps = enumerate_set_functors(c, 2);
    for (std::size_t i = 0; i < ps.size(); i += 3)
      for (std::size_t j = 0; j < ps.size(); j += 5) EXPECT_EQ(natural_families(ps[i], ps[j]), brute_force_families(ps[i], ps[j]));
  }
}

TEST(NatSet, YonedaBijectionByEvaluation) {
  std::mt19937_64 rng(4);
  for (auto c : {chain_category(3), diamond_category(), walking_arrow(), cyclic_group_category(2)}) {
    for (int i = 0; i < 5; ++i) {
      auto p = random_presheaf(c, 3, rng);
      for (std::size_t a = 0; a < c->object_count(); ++a) EXPECT_TRUE(yoneda_bijection(p, c, static_cast<ObjId>(a)).bijective);
    }
  }
}

TEST(PresheafLimit, EmptyDiagramIsTerminal) {
  auto c = chain_category(2);
  SetFunctorDiagram<Variance::contravariant> d{discrete_category(0), {}, {}};
  auto lim = pointwise_limit(d, c);
  EXPECT_EQ(set_sizes(lim.object), (std::vector<std::size_t>{1, 1}));
}

TEST(PresheafLimit, ProductWithTerminalIsIsomorphic) {
  auto c = diamond_category();
  std::mt19937_64 rng(7);
  auto p = random_presheaf(c, 3, rng);
  auto one = terminal_set_functor<Variance::contravariant>(c);
  SetFunctorDiagram<Variance::contravariant> d{discrete_category(2), {p, one}, {identity_family(p), identity_family(one)}};
  auto lim = pointwise_limit(d, c);
  EXPECT_TRUE(find_isomorphism(lim.object, p).has_value());
}

TEST(PresheafLimit, EqualizerMatchesObjectwiseLimits) {
  // Two distinct maps y(0) ⇒ P on the 2-chain; the equalizer is computed objectwise.
  auto c = chain_category(2);
  auto p = constant_set_functor<Variance::contravariant>(c, FinSet::range(2));
  auto y = yoneda(c, 1);
  auto maps = natural_families(y, p);
  ASSERT_GE(maps.size(), 2u);
  auto pair = parallel_pair_category();
  SetFunctorDiagram<Variance::contravariant> d{pair, {y, p}, {identity_family(y), identity_family(p), maps[0], maps[1]}};
  auto lim = pointwise_limit(d, c);
  for (std::size_t b = 0; b < c->object_count(); ++b) {
    auto direct = limit(d.at(static_cast<ObjId>(b)));
    EXPECT_EQ(lim.object.at(static_cast<ObjId>(b)).tokens(), direct.apex.tokens());
  }
  EXPECT_EQ(set_sizes(lim.object), (std::vector<std::size_t>{0, 0}));
}

TEST(PowerPresheaf, SingletonExponent) {
  auto c = walking_arrow();
  auto p = yoneda(c, 1);
  EXPECT_TRUE(find_isomorphism(power_presheaf(p, FinSet::range(1)), p).has_value());
}

TEST(PowerPresheaf, EmptyExponentIsTerminal) {
  auto c = walking_arrow();
  auto p = yoneda(c, 0);
  EXPECT_EQ(set_sizes(power_presheaf(p, FinSet())), (std::vector<std::size_t>{1, 1}));
}

TEST(PowerPresheaf, SquareOfARepresentable) {
  auto c = walking_arrow();
  auto p = yoneda(c, 1);
  EXPECT_EQ(set_sizes(power_presheaf(p, FinSet::range(2))), (std::vector<std::size_t>{1, 1}));
}

TEST(PreservesLimits, RepresentablesPreserveMeets) {
  for (const auto& l : enumerate_lattices(4))
    for (std::size_t a = 0; a < l->object_count(); ++a)
      EXPECT_TRUE(preserves_finite_limits(coyoneda(l, static_cast<ObjId>(a)), meet_and_top_probes(l)).all_preserved());
}

TEST(PreservesLimits, ConstantTwoFailsOnABinaryProduct) {
  auto d = diamond_category();
  auto two = constant_set_functor<Variance::covariant>(d, FinSet::range(2));
  auto rep = preserves_finite_limits(two, meet_and_top_probes(d));
  bool found = false;
  for (const auto& o : rep.outcomes)
    if (o.probe == "meet a,b") {
      found = true;
      EXPECT_EQ(o.status, ProbeOutcome::Status::not_preserved);
      EXPECT_EQ(o.value_at_limit, 2u);
      EXPECT_EQ(o.limit_of_values, 4u);
    }
  EXPECT_TRUE(found);
}

TEST(PreservesLimits, MissingLimitIsSkipped) {
  auto c = discrete_category(2);
  auto rep = preserves_finite_limits(coyoneda(c, 0), meet_and_top_probes(c));
  EXPECT_EQ(rep.skipped(), rep.outcomes.size());
}
