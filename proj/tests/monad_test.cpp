#include <gtest/gtest.h>

#include "support.hpp"

using namespace codensity;
using namespace codensity::testing;

TEST(MonadLaws, IdentityMonad) {
  EXPECT_TRUE(check_monad_laws(Monad::identity(diamond_category())).holds());
}

TEST(MonadLaws, ClosureOperatorsOnTheChain) {
  EXPECT_TRUE(check_monad_laws(chain_reflection()).holds());
  EXPECT_TRUE(check_monad_laws(terminal_constant()).holds());
}

TEST(MonadLaws, ThinMonadRejectsNonInflationaryMaps) {
  auto c = chain_category(3);
  EXPECT_FALSE(thin_monad(c, {0, 0, 2}).has_value());  // 1 ↦ 0 is deflationary
  EXPECT_FALSE(thin_monad(c, {1, 2, 2}).has_value());  // 0 ↦ 1 ↦ 2 is not idempotent
}

TEST(MonadLaws, ReportsABrokenUnit) {
  // On Z/2, η = g with μ = e gives μ∘Tη = g.
  auto z = cyclic_group_category(2);
  auto id = Functor::identity(z);
  MorId g = z->identity(0) == 0 ? 1 : 0;
  auto eta = NatTransformation::unchecked(id, id, {g});
  auto mu = NatTransformation::unchecked(compose(id, id), id, {z->identity(0)});
  auto laws = check_monad_laws(Monad(id, eta, mu));
  EXPECT_FALSE(laws.holds());
  EXPECT_NE(laws.failures.front().find("unit law"), std::string::npos);
}

TEST(Codensity, ChainEndpoints) {
  auto c = chain_category(3);
  auto t = codensity_monad(full_subcategory(c, {0, 2}));
  ASSERT_TRUE(t.exists());
  EXPECT_EQ(object_names_of(*t.monad), (std::vector<std::string>{"0", "2", "2"}));
  EXPECT_TRUE(find_monad_isomorphism(*t.monad, chain_reflection()).has_value());
}

TEST(Codensity, TopOfTheChain) {
  auto c = chain_category(3);
  auto t = codensity_monad(full_subcategory(c, {2}));
  ASSERT_TRUE(t.exists());
  EXPECT_TRUE(find_monad_isomorphism(*t.monad, terminal_constant()).has_value());
}

TEST(Codensity, EmptySubcategoryOfALattice) {
  // Ran of the empty functor is constant at the top.
  auto d = diamond_category();
  auto t = codensity_monad(full_subcategory(d, {}));
  ASSERT_TRUE(t.exists());
  ObjId top = *d->find_object("top");
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(t.monad->on_object(static_cast<ObjId>(k)), top);
}

TEST(Codensity, WholeCategoryGivesTheIdentity) {
  InstanceSource src(41, 4);
  for (int i = 0; i < 20; ++i) {
    auto c = src.category(3);
    std::vector<ObjId> all;
    for (std::size_t a = 0; a < c->object_count(); ++a) all.push_back(static_cast<ObjId>(a));
    auto t = codensity_monad(full_subcategory(c, all));
    ASSERT_TRUE(t.exists());
    EXPECT_TRUE(find_monad_isomorphism(*t.monad, Monad::identity(c)).has_value());
  }
}

TEST(Codensity, MissingInTheFiniteSkeleton) {
  // Frozen: T(3) for A = {1,2} would need all 8 ultrafilter-like cones.
  auto s = finset_skeleton(3);
  auto t = codensity_monad(full_subcategory(s, {1, 2}));
  EXPECT_FALSE(t.exists());
  EXPECT_EQ(t.kan.missing, (std::vector<ObjId>{3}));
}

TEST(Codensity, LawsHoldOnRandomLatticeSubsets) {
  InstanceSource src(43, 5);
  for (int i = 0; i < 60; ++i) {
    auto l = src.lattice();
    auto t = codensity_monad(full_subcategory(l, src.subset(*l)));
    ASSERT_TRUE(t.exists());  // lattices are complete
    EXPECT_TRUE(check_monad_laws(*t.monad).holds());
  }
}

TEST(MonadIso, IsASymmetricRelationWithInverse) {
  auto a = chain_reflection();
  auto c = chain_category(3);
  auto b = *codensity_monad(full_subcategory(c, {0, 2})).monad;
  auto phi = find_monad_isomorphism(a, b);
  ASSERT_TRUE(phi.has_value());
  auto back = inverse(*phi);
  ASSERT_TRUE(back.has_value());
  EXPECT_TRUE(check_monad_morphism(*back).holds());
  EXPECT_TRUE(check_monad_morphism(compose(*back, *phi)).holds());
  EXPECT_FALSE(find_monad_isomorphism(a, terminal_constant()).has_value());
}

TEST(EilenbergMoore, ChainReflectionAlgebrasAreTheFixedPoints) {
  auto alg = em_category(chain_reflection());
  std::vector<ObjId> carriers;
  for (const auto& a : alg.algebras) carriers.push_back(a.carrier);
  EXPECT_EQ(carriers, (std::vector<ObjId>{0, 2}));
  EXPECT_TRUE(alg.adjunction.has_value()) << alg.adjunction_failure;
}

TEST(EilenbergMoore, IdentityMonadHasOneAlgebraPerObject) {
  auto c = walking_arrow();
  auto alg = em_category(Monad::identity(c));
  EXPECT_EQ(alg.algebras.size(), 2u);
  EXPECT_EQ(alg.category->morphism_count(), c->morphism_count());
  EXPECT_TRUE(alg.adjunction.has_value());
}

TEST(EilenbergMoore, EveryAlgebraSatisfiesTheAxioms) {
  InstanceSource src(47, 5);
  for (int i = 0; i < 30; ++i) {
    auto l = src.lattice();
    auto m = *codensity_monad(full_subcategory(l, src.subset(*l))).monad;
    auto alg = em_category(m);
    for (const auto& a : alg.algebras) EXPECT_TRUE(is_algebra(m, a));
    EXPECT_TRUE(alg.adjunction.has_value()) << alg.adjunction_failure;
  }
}

TEST(FixedPoints, OfTheClosureOperators) {
  EXPECT_EQ(fixed_points(chain_reflection()).subcategory.objects, (std::vector<ObjId>{0, 2}));
  EXPECT_EQ(fixed_points(terminal_constant()).subcategory.objects, (std::vector<ObjId>{2}));
}

TEST(Idempotency, ThinMonadsAreIdempotent) {
  auto r = idempotency_analysis(chain_reflection());
  EXPECT_TRUE(r.idempotent());
  EXPECT_EQ(r.provable_violations(), 0u);
  // μ is iso everywhere but η is not iso at 1.
  EXPECT_EQ(r.literal_disagreements(), 1u);
}

TEST(Idempotency, ProvableEquivalenceOnLatticeMonads) {
  InstanceSource src(53, 5);
  for (int i = 0; i < 60; ++i) {
    auto l = src.lattice();
    auto m = *codensity_monad(full_subcategory(l, src.subset(*l))).monad;
    EXPECT_EQ(idempotency_analysis(m).provable_violations(), 0u);
  }
}

TEST(Arity, IdentityHasArityOfADenseSubcategory) {
  auto c = chain_category(3);
  auto sub = full_subcategory(c, {1, 2});
  EXPECT_TRUE(arity_check(Functor::identity(c), sub).holds);
}

TEST(ArityTheorem, NotDenseIsExcluded) {
  auto c = chain_category(3);
  EXPECT_EQ(verify_arity_theorem(full_subcategory(c, {0, 2})).verdict, ArityTheoremReport::Verdict::not_dense);
}

TEST(ArityTheorem, DenseWholeCategoryPasses) {
  auto c = diamond_category();
  auto r = verify_arity_theorem(full_subcategory(c, {0, 1, 2, 3}));
  EXPECT_EQ(r.verdict, ArityTheoremReport::Verdict::pass);
}

TEST(ArityTheorem, NoHardFailuresOnLattices) {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& l : enumerate_lattices(n))
      for (auto& objs : all_subsets(n))
        EXPECT_NE(verify_arity_theorem(full_subcategory(l, objs)).verdict, ArityTheoremReport::Verdict::hard_failure);
}

TEST(GenericIdempotency, ChainReflectionSmallestWitness) {
  // {0} suffices: nothing in A lies above 1, so T(1) is the empty meet 2.
  auto gi = gi_search(chain_reflection());
  ASSERT_TRUE(gi.witness.has_value());
  EXPECT_EQ(gi.witness->objects, (std::vector<ObjId>{0}));
  EXPECT_EQ(gi.subsets_tried, 2u);
}

TEST(GenericIdempotency, TerminalConstantIsGeneratedByNothing) {
  auto gi = gi_search(terminal_constant());
  ASSERT_TRUE(gi.witness.has_value());
  EXPECT_TRUE(gi.witness->objects.empty());
}

TEST(GenericIdempotency, WitnessesAreMinimal) {
  InstanceSource src(59, 4);
  for (int i = 0; i < 25; ++i) {
    auto l = src.lattice_up_to(4);
    auto m = *codensity_monad(full_subcategory(l, src.subset(*l))).monad;
    auto gi = gi_search(m);
    ASSERT_TRUE(gi.witness.has_value());
    // No smaller subset generates m, fixed points or not.
    for (auto& objs : all_subsets(l->object_count())) {
      if (objs.size() >= gi.witness->objects.size()) continue;
      auto t = codensity_monad(full_subcategory(l, objs));
      if (!t.exists()) continue;
      EXPECT_FALSE(find_monad_isomorphism(m, *t.monad).has_value());
    }
  }
}

TEST(GenericIdempotency, SubsetCapIsABudget) {
  ScopedCaps local([] {
    Caps c = caps();
    c.max_subsets = 1;
    return c;
  }());
  EXPECT_THROW(gi_search(chain_reflection()), BudgetExceeded);
}

TEST(RestrictionComparison, NestedChainSubsets) {
  auto c = chain_category(3);
  auto outer = full_subcategory(c, {0, 1, 2});
  auto inner = full_subcategory(outer.category, {0, 2});
  auto r = restriction_comparison(inner.inclusion, outer.inclusion);
  ASSERT_TRUE(r.morphism.has_value());
  EXPECT_TRUE(r.laws.holds());
}

TEST(EqualizerPresentation, EveryAlgebraIsAnEqualizer) {
  for (const auto& m : {chain_reflection(), terminal_constant(), Monad::identity(diamond_category())}) {
    auto alg = em_category(m);
    for (const auto& a : alg.algebras) {
      auto cert = limit_dense_witness(m, a);
      ASSERT_TRUE(cert.equalizer.has_value());
      EXPECT_TRUE(cert.iso_to_carrier.has_value());
    }
  }
}

TEST(CodenseInAlgebras, FixedPointsOfTheReflection) {
  auto m = chain_reflection();
  auto alg = em_category(m);
  auto r = codense_in_algebras(fixed_points(m).subcategory, m, alg);
  EXPECT_TRUE(r.lifts_exist);
  EXPECT_TRUE(r.codense);
  EXPECT_TRUE(r.idempotent_on_subcategory);
  EXPECT_EQ(r.gi_confirmed, std::optional<bool>(true));
}

TEST(ConjectureProbe, ChainReflection) {
  auto p = conjecture_probe(chain_reflection());
  EXPECT_TRUE(p.monad_iso_to_fixed.has_value());
  EXPECT_TRUE(p.gi.witness.has_value());
  EXPECT_TRUE(p.note.empty()) << p.note;
}
