#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace codensity;
using namespace codensity::testing;

namespace {

Functor discrete_pick(const CategoryPtr& c, std::vector<ObjId> objs) {
  auto shape = discrete_category(objs.size());
  std::vector<MorId> ids;
  for (ObjId o : objs) ids.push_back(c->identity(o));
  return Functor::unchecked(shape, c, std::move(objs), std::move(ids));
}

/// Poset oracle: meet of the A-elements above k, or nullopt.
std::optional<ObjId> meet_above(const FinCategory& K, const std::vector<ObjId>& A, ObjId k) {
  std::vector<ObjId> above;
  for (ObjId a : A)
    if (K.arrow(k, a)) above.push_back(a);
  for (std::size_t m = 0; m < K.object_count(); ++m) {
    auto mm = static_cast<ObjId>(m);
    bool lower = std::all_of(above.begin(), above.end(), [&](ObjId a) { return K.arrow(mm, a).has_value(); });
    if (!lower) continue;
    bool greatest = true;
    for (std::size_t x = 0; x < K.object_count() && greatest; ++x) {
      auto xx = static_cast<ObjId>(x);
      bool xl = std::all_of(above.begin(), above.end(), [&](ObjId a) { return K.arrow(xx, a).has_value(); });
      if (xl && !K.arrow(xx, mm)) greatest = false;
    }
    if (greatest) return mm;
  }
  return std::nullopt;
}

}  // namespace

TEST(LimitInCategory, MeetInTheChain) {
  auto c = chain_category(3);
  auto cone = limit_in_category(discrete_pick(c, {1, 2}));
  ASSERT_TRUE(cone.has_value());
  EXPECT_EQ(cone->apex, 1);
}

TEST(LimitInCategory, NoTerminalInADiscretePair) {
  auto c = discrete_category(2);
  EXPECT_FALSE(limit_in_category(Functor::unchecked(discrete_category(0), c, {}, {})).has_value());
}

TEST(LimitInCategory, PullbacksInLatticesAreMeets) {
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& l : enumerate_lattices(n)) {
      auto cospan_shape = poset_category({"x", "y", "z"}, {{"x", "z"}, {"y", "z"}});
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
          for (std::size_t z = 0; z < n; ++z) {
            auto X = static_cast<ObjId>(x), Y = static_cast<ObjId>(y), Z = static_cast<ObjId>(z);
            if (!l->arrow(X, Z) || !l->arrow(Y, Z)) continue;
            std::vector<MorId> mors(cospan_shape->morphism_count());
            std::vector<ObjId> objs{X, Y, Z};
            for (std::size_t f = 0; f < mors.size(); ++f) {
              auto m = static_cast<MorId>(f);
              mors[f] = *l->arrow(objs[static_cast<std::size_t>(cospan_shape->dom(m))], objs[static_cast<std::size_t>(cospan_shape->cod(m))]);
            }
            auto cone = limit_in_category(Functor::unchecked(cospan_shape, l, objs, mors));
            ASSERT_TRUE(cone.has_value());
            EXPECT_EQ(cone->apex, limit_in_category(discrete_pick(l, {X, Y}))->apex);
          }
    }
}

TEST(RightKan, AlongTheIdentity) {
  auto c = walking_arrow();
  auto id = Functor::identity(c);
  auto r = right_kan(id, id);
  ASSERT_TRUE(r.exists());
  EXPECT_EQ(r.functor(), id);
  EXPECT_TRUE(r.universal->is_iso());
  EXPECT_EQ(r.universal_verified, std::optional<bool>(true));
}

TEST(RightKan, ChainInclusionAlongItself) {
  auto c = chain_category(3);
  auto sub = full_subcategory(c, {0, 2});
  auto r = right_kan(sub.inclusion, sub.inclusion);
  ASSERT_TRUE(r.exists());
  EXPECT_EQ(object_names_of(r.functor()), (std::vector<std::string>{"0", "2", "2"}));
}

TEST(RightKan, MatchesTheMeetOracleOnLattices) {
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& l : enumerate_lattices(n))
      for (auto& objs : all_subsets(n)) {
        auto sub = full_subcategory(l, objs);
        auto r = right_kan(sub.inclusion, sub.inclusion, {.verify_universal = false});
        ASSERT_TRUE(r.exists());
        for (std::size_t k = 0; k < n; ++k)
          EXPECT_EQ(r.functor().on_object(static_cast<ObjId>(k)), *meet_above(*l, sub.objects, static_cast<ObjId>(k)));
      }
}

TEST(RightKan, UniversalPropertyOnRandomInstances) {
  InstanceSource src(17, 3);
  std::size_t verified = 0;
  for (int i = 0; i < 40; ++i) {
    auto a = src.category(2);
    auto b = src.category(3);
    auto c = src.category(2);
    auto F = src.functor(a, b);
    auto G = src.functor(a, c);
    auto r = right_kan(F, G);
    if (!r.exists() || !r.universal_verified) continue;
    ++verified;
    EXPECT_TRUE(*r.universal_verified);
  }
  EXPECT_GT(verified, 5u);
}

TEST(RightKan, AlongAFullFunctorRestrictsBack) {
  InstanceSource src(23, 4);
  for (int i = 0; i < 40; ++i) {
    auto k = src.category(4);
    auto sub = full_subcategory(k, src.subset(*k));
    auto c = src.category(3);
    auto G = src.functor(sub.category, c);
    auto r = right_kan(sub.inclusion, G, {.verify_universal = false});
    if (!r.exists()) continue;
    EXPECT_TRUE(find_natural_isomorphism(compose(r.functor(), sub.inclusion), G).has_value());
  }
}

TEST(RightKan, ReportsMissingObjects) {
  auto c = discrete_category(2);
  auto sub = full_subcategory(c, {});
  auto r = right_kan(sub.inclusion, sub.inclusion);
  EXPECT_FALSE(r.exists());
  EXPECT_EQ(r.missing, (std::vector<ObjId>{0, 1}));
  EXPECT_THROW(r.functor(), Error);
}

TEST(LeftKan, AlongTheIdentity) {
  auto c = walking_arrow();
  auto id = Functor::identity(c);
  auto r = left_kan(id, id);
  ASSERT_TRUE(r.exists());
  EXPECT_EQ(r.functor(), id);
}

TEST(LeftKan, EverythingIsDense) {
  auto c = chain_category(3);
  auto sub = full_subcategory(c, {0, 1, 2});
  auto r = left_kan(sub.inclusion, sub.inclusion);
  ASSERT_TRUE(r.exists());
  EXPECT_EQ(r.functor(), Functor::identity(c));
}

TEST(LeftKan, ChainInclusionAlongItself) {
  // Joins of A-elements below: 1 only sees 0.
  auto c = chain_category(3);
  auto sub = full_subcategory(c, {0, 2});
  auto r = left_kan(sub.inclusion, sub.inclusion);
  ASSERT_TRUE(r.exists());
  EXPECT_EQ(object_names_of(r.functor()), (std::vector<std::string>{"0", "0", "2"}));
}

TEST(Density, TopAloneIsNotDense) {
  auto c = chain_category(3);
  auto d = is_dense(full_subcategory(c, {2}).inclusion);
  EXPECT_FALSE(d.holds);
  EXPECT_TRUE(d.missing.empty());
  ASSERT_TRUE(d.extension.has_value());
  EXPECT_EQ(object_names_of(*d.extension), (std::vector<std::string>{"0", "0", "2"}));
}

TEST(Density, EverythingIsDenseAndCodense) {
  auto c = diamond_category();
  auto sub = full_subcategory(c, {0, 1, 2, 3});
  EXPECT_TRUE(is_dense(sub.inclusion).holds);
  EXPECT_TRUE(is_codense(sub.inclusion).holds);
}

TEST(Density, UpperPairOfTheChain) {
  // 0 is the empty join, so {1,2} is dense.
  auto c = chain_category(3);
  auto d = is_dense(full_subcategory(c, {1, 2}).inclusion);
  EXPECT_TRUE(d.holds);
  ASSERT_TRUE(d.extension.has_value());
  EXPECT_EQ(object_names_of(*d.extension), (std::vector<std::string>{"0", "1", "2"}));
}

TEST(Density, EndpointsOfTheChainAreNotDense) {
  auto c = chain_category(3);
  EXPECT_FALSE(is_dense(full_subcategory(c, {0, 2}).inclusion).holds);
  EXPECT_FALSE(is_codense(full_subcategory(c, {0, 2}).inclusion).holds);
}

TEST(Adjunction, IdentityWithItself) {
  auto c = walking_arrow();
  EXPECT_TRUE(check_adjunction(Functor::identity(c), Functor::identity(c)).holds());
}

TEST(Adjunction, ReflectionIsLeftAdjointToTheInclusion) {
  auto c = chain_category(3);
  auto sub = full_subcategory(c, {0, 2});
  auto refl = left_adjoint_via_ran(sub.inclusion);
  ASSERT_TRUE(refl.adjoint.has_value());
  EXPECT_EQ(object_names_of(*refl.adjoint), (std::vector<std::string>{"0", "2", "2"}));
  EXPECT_TRUE(check_adjunction(*refl.adjoint, sub.inclusion).holds());
  auto wrong = check_adjunction(sub.inclusion, *refl.adjoint);
  EXPECT_FALSE(wrong.holds());
  EXPECT_NE(wrong.failure.find("hom-set"), std::string::npos) << wrong.failure;
}

TEST(LeftAdjointViaRan, Identity) {
  auto c = diamond_category();
  auto r = left_adjoint_via_ran(Functor::identity(c));
  ASSERT_TRUE(r.adjoint.has_value());
  EXPECT_EQ(*r.adjoint, Functor::identity(c));
}

TEST(LeftAdjointViaRan, ConstantAtANonTerminalObject) {
  auto c = chain_category(3);
  auto r = left_adjoint_via_ran(Functor::constant(c, c, 0));
  EXPECT_FALSE(r.adjoint.has_value());
  EXPECT_NE(r.reason.find("not a right adjoint"), std::string::npos);
}

TEST(LeftAdjointViaRan, AgreesWithUniversalArrows) {
  InstanceSource src(31, 4);
  for (int i = 0; i < 60; ++i) {
    auto a = src.lattice_up_to(4);
    auto b = src.lattice_up_to(4);
    auto R = src.functor(a, b);
    auto r = left_adjoint_via_ran(R);
    EXPECT_EQ(r.adjoint.has_value(), has_left_adjoint_by_universal_arrows(R));
    if (r.adjoint) {
      EXPECT_TRUE(check_adjunction(*r.adjoint, R).holds());
    }
  }
}

TEST(KanLaws, SimplifyOnTheChainInclusion) {
  auto c = chain_category(3);
  auto sub = full_subcategory(c, {0, 2});
  auto lan = left_kan(sub.inclusion, sub.inclusion);
  ASSERT_TRUE(lan.exists());
  EXPECT_TRUE(find_natural_isomorphism(compose(lan.functor(), sub.inclusion), sub.inclusion).has_value());
}

TEST(KanLaws, ComposeOnNestedInclusionsOfAFourChain) {
  auto c = chain_category(4);
  auto mid = full_subcategory(c, {0, 2, 3});
  auto inner = full_subcategory(mid.category, {0, 2});  // {0, 3} in c
  auto g = Functor::identity(inner.category);
  auto whole = compose(mid.inclusion, inner.inclusion);
  auto step = left_kan(inner.inclusion, compose(mid.inclusion, inner.inclusion));
  ASSERT_TRUE(step.exists());
  auto two_step = left_kan(mid.inclusion, step.functor());
  auto one_step = left_kan(whole, whole);
  ASSERT_TRUE(two_step.exists());
  ASSERT_TRUE(one_step.exists());
  EXPECT_TRUE(find_natural_isomorphism(two_step.functor(), one_step.functor()).has_value());
  (void)g;
}

TEST(LeftKan, NonFullInclusionNeedsACoproduct) {
  // Discrete {0,1} into the walking arrow: the comma under 1 sees both objects.
  auto w = walking_arrow();
  auto d = discrete_category(2);
  auto inc = Functor::unchecked(d, w, {0, 1}, {w->identity(0), w->identity(1)});
  auto lan = left_kan(inc, Functor::identity(d));
  EXPECT_FALSE(lan.exists());
  EXPECT_EQ(lan.missing, (std::vector<ObjId>{1}));
}
