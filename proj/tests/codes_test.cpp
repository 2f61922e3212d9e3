#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "tlab/codes.hpp"

using namespace tlab;

namespace {

Code C(const char* s) { return Code::parse(s); }

Code power(Gen g, const Code& c, int k) {
  Code x = c;
  for (int i = 0; i < k; ++i) x = apply(g, x);
  return x;
}

}  // namespace

TEST(Code, ParseAndPrint) {
  EXPECT_EQ(C("1+2-3+4-5+").str(), "1+2-3+4-5+");
  EXPECT_EQ(C("1+ 2\xE2\x88\x92 3+ 4- 5+"), C("1+2-3+4-5+"));
  EXPECT_THROW(C("1+2+3+4+"), ParseError);
  EXPECT_THROW(C("1+1+3+4+5+"), ParseError);
  EXPECT_THROW(C("1+2+3+4+6+"), ParseError);
}

TEST(Code, IndexIsABijection) {
  std::set<std::string> seen;
  for (int i = 0; i < Code::count; ++i) {
    const Code c = Code::from_index(i);
    ASSERT_TRUE(c.valid());
    EXPECT_EQ(c.index(), i);
    seen.insert(c.str());
  }
  EXPECT_EQ(seen.size(), 3840u);
}

TEST(Generators, Examples) {
  const Code c = C("1+2+3+4-5-");
  EXPECT_EQ(apply(Gen::b1, c), C("5+1+2+3+4-"));
  EXPECT_EQ(apply(Gen::a1, c), C("2+3+4+5-1+"));
  EXPECT_EQ(apply(Gen::a2, c), C("5+4+3+2-1-"));
}

TEST(Generators, RelationsOnAllCodes) {
  int violations = 0;
  for (int i = 0; i < Code::count; ++i) {
    const Code c = Code::from_index(i);
    violations += power(Gen::a1, c, 10) != c;
    violations += power(Gen::b1, c, 10) != c;
    violations += power(Gen::a2, c, 2) != c;
    violations += power(Gen::b2, c, 2) != c;
    violations += apply(Gen::a2, apply(Gen::a1, apply(Gen::a2, c))) != apply(Gen::a1inv, c);
    violations += apply(Gen::b2, apply(Gen::b1, apply(Gen::b2, c))) != apply(Gen::b1inv, c);
    violations += apply(Gen::a1, apply(Gen::a1inv, c)) != c;
    violations += apply(Gen::b1, apply(Gen::b1inv, c)) != c;
    for (Gen a : {Gen::a1, Gen::a2})
      for (Gen b : {Gen::b1, Gen::b2}) violations += apply(a, apply(b, c)) != apply(b, apply(a, c));
  }
  EXPECT_EQ(violations, 0);
}

TEST(Words, ParseForms) {
  const Code c = C("1+2+3+4-5-");
  EXPECT_EQ(apply_word(c, "a1^3"), power(Gen::a1, c, 3));
  EXPECT_EQ(apply_word(c, "alpha1^{3}"), power(Gen::a1, c, 3));
  EXPECT_EQ(apply_word(c, "\xCE\xB1" "1^(-2)"), power(Gen::a1inv, c, 2));
  EXPECT_EQ(apply_word(c, "b1^-1"), apply(Gen::b1inv, c));
  // Rightmost factor first.
  EXPECT_EQ(apply_word(c, "a1 b1"), apply(Gen::a1, apply(Gen::b1, c)));
  EXPECT_THROW(apply_word(c, "g7"), ParseError);
}

TEST(Words, KnownEquivalences) {
  EXPECT_TRUE(is_trivial_code(apply_word(C("4+2-5+1+3+"), "a1^-3 b1^2")));
  EXPECT_TRUE(same_orbit(apply_word(class_representative(CodeClass::C4), "a1^3 b1^-3"), C("4+2-1+5+3+")));
  EXPECT_TRUE(same_orbit(class_representative(CodeClass::C4), C("4+2-1+5+3+")));
}

TEST(Orbits, Sizes) {
  const auto orb = orbit(Code::identity());
  EXPECT_EQ(200 % orb.size(), 0u);
  EXPECT_EQ(induced_group_order(), 200u);
  // Orbits partition the codes and are closed under each generator.
  std::size_t total = 0;
  for (const auto& o : classification().orbits) {
    total += o.size();
    const std::set<Code, std::less<>> members(o.begin(), o.end());
    for (const Code& c : o)
      for (Gen g : {Gen::a1, Gen::a2, Gen::b1, Gen::b2}) ASSERT_TRUE(members.count(apply(g, c)));
  }
  EXPECT_EQ(total, 3840u);
}

TEST(Orbits, HistogramRegression) {
  std::map<std::size_t, int> hist;
  for (const auto& o : classification().orbits) ++hist[o.size()];
  EXPECT_EQ(classification().orbits.size(), 28u);
  EXPECT_EQ(hist, (std::map<std::size_t, int>{{20, 2}, {100, 14}, {200, 12}}));
}

TEST(Triviality, Examples) {
  EXPECT_TRUE(is_trivial_code(C("1+2+3+4+5+")));
  EXPECT_FALSE(is_trivial_code(C("3+2-1+4+5+")));
  EXPECT_TRUE(is_trivial_code(C("4+3+2+1+5-")));
}

TEST(Classification, SixTrivialFreeOrbits) {
  const auto& cl = classification();
  ASSERT_EQ(cl.trivial_free.size(), 6u);
  std::set<CodeClass> classes;
  for (std::size_t pos : cl.trivial_free) {
    for (const Code& c : cl.orbits[pos]) ASSERT_FALSE(is_trivial_code(c));
    classes.insert(canonical_class(cl.orbits[pos].front()));
  }
  EXPECT_EQ(classes.size(), 6u);
  for (CodeClass k : nontrivial_classes) {
    EXPECT_EQ(canonical_class(class_representative(k)), k);
    EXPECT_TRUE(classes.count(k));
  }
  // Every other orbit has a trivial member.
  for (std::size_t i = 0; i < cl.orbits.size(); ++i) {
    bool has_trivial = false;
    for (const Code& c : cl.orbits[i]) has_trivial = has_trivial || is_trivial_code(c);
    EXPECT_NE(has_trivial, std::count(cl.trivial_free.begin(), cl.trivial_free.end(), i) == 1);
  }
}

TEST(Classification, ClassVariants) {
  EXPECT_EQ(canonical_class(C("1+2-3+5-4-")), CodeClass::C1);
  EXPECT_EQ(canonical_class(C("1+2-5-3+4-")), CodeClass::C3);
  EXPECT_EQ(canonical_class(C("1+2-3+5-4+")), CodeClass::C4);
  EXPECT_EQ(canonical_class(C("1+4-2-3+5-")), CodeClass::D5);
  EXPECT_EQ(canonical_class(C("1+2-3-4+5-")), CodeClass::C2);
  EXPECT_EQ(canonical_class(C("1-3+5-2-4+")), CodeClass::E6);
  EXPECT_EQ(canonical_class(Code::identity()), CodeClass::Trivial);
}

TEST(Classification, CanonicalRepresentativeIsOrbitMinimum) {
  for (int i = 0; i < Code::count; i += 7) {
    const Code c = Code::from_index(i);
    const auto orb = orbit(c);
    EXPECT_EQ(canonical_representative(c), orb.front());
  }
}

TEST(Board, Examples) {
  const Board id = to_board(Code::identity());
  for (int col = 0; col < 5; ++col) {
    EXPECT_EQ(id.row_of_column[col], col + 1);
    EXPECT_TRUE(id.white[col]);
  }
  const Board c1 = to_board(class_representative(CodeClass::C1));
  EXPECT_EQ(c1.row_of_column[1], 2);
  EXPECT_FALSE(c1.white[1]);
}

TEST(Board, RoundTripAndCommutingActions) {
  for (int i = 0; i < Code::count; ++i) {
    const Code c = Code::from_index(i);
    ASSERT_EQ(board_roundtrip(c), c);
    for (Gen g : {Gen::a1, Gen::a1inv, Gen::a2, Gen::b1, Gen::b1inv, Gen::b2})
      ASSERT_EQ(from_board(apply(g, to_board(c))), apply(g, c)) << gen_name(g) << " " << c.str();
  }
  Board bad = to_board(Code::identity());
  bad.row_of_column[0] = 2;
  EXPECT_THROW(from_board(bad), ValidationError);
}
