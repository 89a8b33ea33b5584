#include <gtest/gtest.h>

#include "support.hpp"

using namespace codensity;
using namespace codensity::testing;

namespace {

const char* kChain3 = R"(codensity-spec 1
# the 3-chain
category chain3
  objects 0 1 2
  morphism id_0 0 0
  morphism id_1 1 1
  morphism id_2 2 2
  identity 0 id_0
  identity 1 id_1
  identity 2 id_2
  morphism a 0 1
  morphism b 1 2
  morphism ba 0 2
  compose b a ba
end
)";

std::string with_line_replaced(std::string text, const std::string& from, const std::string& to) {
  text.replace(text.find(from), from.size(), to);
  return text;
}

}  // namespace

TEST(ParseSpec, Chain) {
  auto doc = parse_spec(kChain3);
  ASSERT_TRUE(doc.has("chain3"));
  const auto& c = *doc.category("chain3");
  EXPECT_EQ(c.object_count(), 3u);
  EXPECT_EQ(c.morphism_count(), 6u);
  EXPECT_TRUE(c.is_thin());
  EXPECT_EQ(c.compose(mor(doc.category("chain3"), "b"), mor(doc.category("chain3"), "a")), mor(doc.category("chain3"), "ba"));
}

TEST(ParseSpec, UndeclaredMorphismIsLocated) {
  auto text = with_line_replaced(kChain3, "compose b a ba", "compose b a bz");
  try {
    parse_spec(text);
    FAIL() << "expected a located error";
  } catch (const SpecError& e) {
    EXPECT_EQ(e.line(), 14u);
    EXPECT_NE(std::string(e.what()).find("bz"), std::string::npos) << e.what();
    EXPECT_EQ(std::string(e.what()).rfind("line 14:", 0), 0u) << e.what();
  }
}

TEST(ParseSpec, MissingIdentitiesAreListed) {
  auto text = with_line_replaced(kChain3, "  identity 1 id_1\n", "");
  try {
    parse_spec(text);
    FAIL() << "expected an axiom error";
  } catch (const SpecError& e) {
    EXPECT_EQ(e.line(), 3u);  // the block header
    EXPECT_NE(std::string(e.what()).find("missing identity for object '1'"), std::string::npos) << e.what();
  }
}

TEST(ParseSpec, MissingCompositeIsAnAxiomError) {
  auto text = with_line_replaced(kChain3, "  compose b a ba\n", "");
  EXPECT_THROW(parse_spec(text), InputError);
}

TEST(ParseSpec, BadHeader) {
  EXPECT_THROW(parse_spec("category x\nend\n"), SpecError);
}

TEST(ParseSpec, UnterminatedBlock) {
  EXPECT_THROW(parse_spec("codensity-spec 1\ncategory x\n  objects p\n"), SpecError);
}

TEST(ParseSpec, DuplicateNames) {
  std::string text = kChain3;
  text += "category chain3\n  objects p\nend\n";
  EXPECT_THROW(parse_spec(text), SpecError);
}

TEST(ParseSpec, SubcategoryFunctorAndPresheaf) {
  std::string text = kChain3;
  text += R"(subcategory ends of chain3
  objects 0 2
end
functor top chain3 -> chain3
  object 0 2
  object 1 2
  object 2 2
  morphism a id_2
  morphism b id_2
  morphism ba id_2
end
presheaf P on chain3
  set 0 x y
  set 1 x
  set 2 x
  action a x
  action b x
  action ba x
end
)";
  auto doc = parse_spec(text);
  EXPECT_EQ(doc.subcategories.at("ends").objects, (std::vector<ObjId>{0, 2}));
  EXPECT_EQ(object_names_of(doc.functors.at("top")), (std::vector<std::string>{"2", "2", "2"}));
  EXPECT_EQ(set_sizes(doc.presheaves.at("P")), (std::vector<std::size_t>{2, 1, 1}));
}

TEST(ParseSpec, MonadLawsAreChecked) {
  std::string text = kChain3;
  text += R"(monad T on chain3
  object 0 0
  object 1 0
  object 2 2
end
)";
  EXPECT_THROW(parse_spec(text), InputError);
}

TEST(EmitSpec, RoundTripIsAFixedPoint) {
  auto doc = parse_spec(kChain3);
  auto once = emit_spec(doc);
  auto again = parse_spec(once);
  EXPECT_TRUE(again == doc);
  EXPECT_EQ(emit_spec(again), once);
}

TEST(EmitSpec, RoundTripOnGeneratedDocuments) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto doc = generate("random-presheaf", {1 + seed % 3, 2}, seed);
    auto text = emit_spec(doc);
    auto back = parse_spec(text);
    EXPECT_TRUE(back == doc) << text;
    EXPECT_EQ(emit_spec(back), text);
  }
}

TEST(EmitSpec, RoundTripOfAMonad) {
  SpecDocument doc;
  auto c = chain_category(3);
  doc.add_category("K", c);
  doc.add_monad("T", "K", chain_reflection());
  auto back = parse_spec(emit_spec(doc));
  EXPECT_TRUE(same_monad(back.monads.at("T"), chain_reflection()));
}

TEST(Generate, ChainThree) {
  auto doc = generate("chain", {3}, 0);
  EXPECT_EQ(*doc.category("chain3"), *chain_category(3));
}

TEST(Generate, FinsetSkeletonValidates) {
  // Objects 0..3; hom(m, n) has n^m functions.
  auto doc = generate("finset-skeleton", {3}, 0);
  const auto& c = *doc.category("finset3");
  EXPECT_EQ(c.object_count(), 4u);
  std::size_t expected = 0;
  for (std::size_t m = 0; m <= 3; ++m)
    for (std::size_t n = 0; n <= 3; ++n) {
      std::size_t h = 1;
      for (std::size_t i = 0; i < m; ++i) h *= n;
      expected += h;
    }
  EXPECT_EQ(c.morphism_count(), expected);
  // Reparsing runs the full axiom validator on the emitted tables.
  EXPECT_NO_THROW(parse_spec(emit_spec(doc)));
}

TEST(Generate, RandomCategoryIsDeterministic) {
  auto a = emit_spec(generate("random-category", {4}, 7));
  auto b = emit_spec(generate("random-category", {4}, 7));
  EXPECT_EQ(a, b);
  EXPECT_NE(a, emit_spec(generate("random-category", {4}, 8)));
}

TEST(Generate, CapsAreEnforced) {
  ScopedCaps local([] {
    Caps c = caps();
    c.max_morphisms = 10;
    return c;
  }());
  EXPECT_THROW(generate("finset-skeleton", {3}, 0), InputError);
}

TEST(Generate, UnknownKind) {
  EXPECT_THROW(generate("torus", {}, 0), InputError);
}

TEST(BuiltinCategory, Names) {
  EXPECT_EQ((*builtin_category("chain4"))->object_count(), 4u);
  EXPECT_EQ((*builtin_category("powerset2"))->object_count(), 4u);
  EXPECT_EQ((*builtin_category("cyclic3"))->morphism_count(), 3u);
  EXPECT_FALSE(builtin_category("chainx").has_value());
  EXPECT_FALSE(builtin_category("torus").has_value());
}
