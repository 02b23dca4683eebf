#include <gtest/gtest.h>

#include "generators.hpp"
#include "proofdeck/prop.hpp"

namespace proofdeck {
namespace {

Prop A() { return Prop::atom("A"); }
Prop B() { return Prop::atom("B"); }
Prop C() { return Prop::atom("C"); }

TEST(ParseProp, ImplicationIsRightAssociative) {
  EXPECT_EQ(parse_prop("A -> B -> A"), Prop::imp(A(), Prop::imp(B(), A())));
}

TEST(ParseProp, NotExpandsToImplicationIntoFalse) {
  EXPECT_EQ(parse_prop("~A"), Prop::imp(A(), Prop::falsity()));
  EXPECT_EQ(parse_prop("~A"), parse_prop("A -> False"));
  EXPECT_TRUE(parse_prop("~A").is_negation());
}

TEST(ParseProp, Precedence) {
  EXPECT_EQ(parse_prop("A /\\ B \\/ C"), Prop::disj(Prop::conj(A(), B()), C()));
  EXPECT_EQ(parse_prop("A \\/ B /\\ C"), Prop::disj(A(), Prop::conj(B(), C())));
  EXPECT_EQ(parse_prop("~A /\\ B"), Prop::conj(Prop::negation(A()), B()));
  EXPECT_EQ(parse_prop("A /\\ B -> C \\/ A"),
            Prop::imp(Prop::conj(A(), B()), Prop::disj(C(), A())));
}

TEST(ParseProp, ConjunctionAndDisjunctionAreLeftAssociative) {
  EXPECT_EQ(parse_prop("A /\\ B /\\ C"), Prop::conj(Prop::conj(A(), B()), C()));
  EXPECT_EQ(parse_prop("A \\/ B \\/ C"), Prop::disj(Prop::disj(A(), B()), C()));
}

TEST(ParseProp, ParenthesesAndWhitespace) {
  EXPECT_EQ(parse_prop("  ( A->B ) ->\n C"), Prop::imp(Prop::imp(A(), B()), C()));
  EXPECT_EQ(parse_prop("(((True)))"), Prop::truth());
}

TEST(ParseProp, ErrorsCarryOffsetOfOffendingToken) {
  try {
    parse_prop("A /\\ -> B");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 5u);
  }
  try {
    parse_prop("(A -> B");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 7u);
  }
  EXPECT_THROW(parse_prop("A B"), ParseError);
  EXPECT_THROW(parse_prop(""), ParseError);
  EXPECT_THROW(parse_prop("Lemma"), ParseError);
  EXPECT_THROW(parse_prop("A.B"), ParseError);
  EXPECT_THROW(parse_prop("A & B"), ParseError);
}

TEST(Pretty, MinimalParentheses) {
  EXPECT_EQ(pretty(Prop::imp(A(), Prop::imp(B(), A()))), "A -> B -> A");
  EXPECT_EQ(pretty(Prop::disj(Prop::conj(A(), B()), C())), "A /\\ B \\/ C");
  EXPECT_EQ(pretty(Prop::imp(Prop::imp(A(), B()), C())), "(A -> B) -> C");
  EXPECT_EQ(pretty(Prop::conj(A(), Prop::conj(B(), C()))), "A /\\ (B /\\ C)");
  EXPECT_EQ(pretty(Prop::negation(Prop::conj(A(), B()))), "~(A /\\ B)");
  EXPECT_EQ(pretty(Prop::negation(Prop::negation(A()))), "~~A");
  EXPECT_EQ(pretty(Prop::imp(A(), Prop::falsity())), "~A");
}

TEST(Identifiers, Rules) {
  EXPECT_TRUE(is_identifier("x'"));
  EXPECT_TRUE(is_identifier("_a9"));
  EXPECT_FALSE(is_identifier("9a"));
  EXPECT_FALSE(is_identifier(""));
  EXPECT_TRUE(is_reserved("Qed"));
  EXPECT_FALSE(is_reserved("qed"));
}

TEST(PropProperty, ParseOfPrettyIsIdentity) {
  gen::Rng rng(7);
  for (int i = 0; i < 5000; ++i) {
    const Prop p = gen::prop(rng, 5);
    const std::string s = pretty(p);
    ASSERT_EQ(parse_prop(s), p) << s;
    ASSERT_EQ(pretty(parse_prop(s)), s);
  }
}

}  // namespace
}  // namespace proofdeck
