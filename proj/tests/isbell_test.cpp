#include <gtest/gtest.h>

#include "support.hpp"

using namespace codensity;
using namespace codensity::testing;

TEST(IsbellO, RepresentableGoesToCorepresentable) {
  InstanceSource src(5, 3);
  for (int i = 0; i < 30; ++i) {
    auto c = src.category(3);
    for (std::size_t a = 0; a < c->object_count(); ++a) {
      auto o = isbell_O(yoneda(c, static_cast<ObjId>(a)));
      EXPECT_TRUE(find_isomorphism(o, coyoneda(c, static_cast<ObjId>(a))).has_value()) << c->object_name(static_cast<ObjId>(a));
    }
  }
}

TEST(IsbellSpec, CorepresentableGoesToRepresentable) {
  InstanceSource src(6, 3);
  for (int i = 0; i < 30; ++i) {
    auto c = src.category(3);
    for (std::size_t a = 0; a < c->object_count(); ++a) {
      auto s = isbell_spec(coyoneda(c, static_cast<ObjId>(a)));
      EXPECT_TRUE(find_isomorphism(s, yoneda(c, static_cast<ObjId>(a))).has_value());
    }
  }
}

TEST(IsbellO, EmptyPresheafGoesToTerminal) {
  auto c = diamond_category();
  auto o = isbell_O(empty_set_functor<Variance::contravariant>(c));
  EXPECT_EQ(set_sizes(o), (std::vector<std::size_t>{1, 1, 1, 1}));
}

TEST(IsbellO, TerminalPresheafOnTheChain) {
  // Nat(1, y a) is nonempty only when a is the top.
  auto c = chain_category(3);
  auto o = isbell_O(terminal_set_functor<Variance::contravariant>(c));
  EXPECT_EQ(set_sizes(o), (std::vector<std::size_t>{0, 0, 1}));
}

TEST(IsbellO, ConstantTwoOnTheWalkingArrow) {
  // Brute force: a family into y0 = (1, 0) needs P(0) → 1, P(1) → ∅; into y1 = (1, 1) it is forced.
  auto w = walking_arrow();
  auto p = constant_set_functor<Variance::contravariant>(w, FinSet::range(2));
  EXPECT_EQ(set_sizes(isbell_O(p)), (std::vector<std::size_t>{0, 1}));
}

TEST(IsbellAdjunction, HomBijectionOnSmallBases) {
  for (const auto& base : {walking_arrow(), chain_category(2), cyclic_group_category(2)}) {
    auto ps = enumerate_set_functors<Variance::contravariant>(base, 2);
    auto qs = enumerate_set_functors<Variance::covariant>(base, 2);
    std::size_t checked = 0;
    for (std::size_t i = 0; i < ps.size(); i += 3)
      for (std::size_t j = 0; j < qs.size(); j += 3) {
        auto b = isbell_hom_bijection(ps[i], qs[j]);
        EXPECT_EQ(b.presheaf_side, b.copresheaf_side);
        EXPECT_TRUE(b.bijective);
        ++checked;
      }
    EXPECT_GT(checked, 0u);
  }
}

TEST(IsbellAdjunction, UnitIsNatural) {
  auto base = diamond_category();
  for (const auto& p : enumerate_set_functors<Variance::contravariant>(base, 1)) {
    auto o = isbell_O_with_families(p);
    auto so = isbell_spec_with_families(o.value);
    EXPECT_TRUE(is_natural(p, so.value, isbell_unit(p, o, so)));
  }
}

TEST(IsbellO, SendsCoproductsToProducts) {
  auto w = walking_arrow();
  auto shape = discrete_category(2);
  SetFunctorDiagram<Variance::contravariant> d{shape, {yoneda(w, 0), yoneda(w, 1)}, {}};
  for (std::size_t u = 0; u < shape->morphism_count(); ++u)
    d.maps.push_back(identity_family(d.nodes[static_cast<std::size_t>(shape->dom(static_cast<MorId>(u)))]));
  EXPECT_TRUE(O_sends_colimit_to_limit(d, w));
}

TEST(MainTheorem, EveryPresheafOnTheWalkingArrow) {
  auto w = walking_arrow();
  auto ps = enumerate_set_functors<Variance::contravariant>(w, 2);
  EXPECT_EQ(ps.size(), 11u);  // frozen: sizes (s0, s1) ≤ 2 with every action
  for (const auto& p : ps) {
    auto r = verify_main_theorem(p);
    EXPECT_TRUE(r.holds());
    EXPECT_TRUE(r.canonical);
  }
}

TEST(MainTheorem, DiamondAndCyclicBases) {
  for (const auto& base : {diamond_category(), cyclic_group_category(3)}) {
    for (const auto& p : enumerate_set_functors<Variance::contravariant>(base, 1)) {
      auto r = verify_main_theorem(p);
      EXPECT_TRUE(r.holds());
      EXPECT_EQ(set_sizes(r.isbell_side), set_sizes(r.codensity_side));
    }
  }
}

TEST(MainTheorem, YonedaCodensityOfARepresentableIsItself) {
  auto c = chain_category(3);
  for (std::size_t a = 0; a < 3; ++a) {
    auto y = yoneda(c, static_cast<ObjId>(a));
    auto t = codensity_of_yoneda(y);
    EXPECT_TRUE(find_isomorphism(t.value, y).has_value());
  }
}

TEST(RanOfYoneda, AgreesWithOOnSmallPresheaves) {
  auto w = walking_arrow();
  for (const auto& p : enumerate_set_functors<Variance::contravariant>(w, 2)) {
    auto r = ran_of_yoneda_against_O(p);
    EXPECT_TRUE(r.isomorphic);
  }
}

TEST(SwapAdjunction, DenseUpperPairOfTheChain) {
  auto c = chain_category(3);
  auto r = swap_adjunction_check(full_subcategory(c, {1, 2}));
  EXPECT_FALSE(r.refused);
  EXPECT_GT(r.probes.size(), 0u);
  EXPECT_TRUE(r.holds()) << r.failures() << " probe failures";
}

TEST(SwapAdjunction, RefusedWhenNotDense) {
  auto c = chain_category(3);
  auto r = swap_adjunction_check(full_subcategory(c, {0, 2}));
  EXPECT_TRUE(r.refused);
  EXPECT_FALSE(r.holds());
}

TEST(SwapAdjunction, NeedsAThinAmbientCategory) {
  auto c = cyclic_group_category(2);
  EXPECT_THROW(swap_adjunction_check(full_subcategory(c, {0})), InputError);
}

TEST(ReflectionConjugation, DiamondSides) {
  auto d = diamond_category();
  auto r = reflection_conjugation_check(full_subcategory(d, {*d->find_object("a"), *d->find_object("b")}));
  EXPECT_TRUE(r.holds()) << r.failure;
}

TEST(ReflectionConjugation, ChainEndpointsAreNotAMonad) {
  // Frozen: {0,2} is not dense and the conjugate object map is (0,0,2).
  auto c = chain_category(3);
  auto r = reflection_conjugation_check(full_subcategory(c, {0, 2}));
  EXPECT_FALSE(r.dense);
  EXPECT_EQ(r.conjugated, (std::vector<ObjId>{0, 0, 2}));
  EXPECT_FALSE(r.conjugate_monad.has_value());
  EXPECT_FALSE(r.holds());
  ASSERT_TRUE(r.codensity.has_value());
  EXPECT_EQ(object_names_of(*r.codensity), (std::vector<std::string>{"0", "2", "2"}));
}
