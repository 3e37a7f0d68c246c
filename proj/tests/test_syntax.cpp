#include <gtest/gtest.h>

#include "omegalogic/testing/random.hpp"
#include "omegalogic/text.hpp"

using namespace omegalogic;
namespace tst = omegalogic::testing;

namespace {
Formula F(const char* s) { return parse_formula(s); }
}  // namespace

TEST(Negate, FlipsAtomicPolarity) {
  EXPECT_EQ(negate(Formula::eq(Term::zero(), Term::one())), Formula::neq(Term::zero(), Term::one()));
  EXPECT_EQ(negate(F("0 in X0")), F("0 notin X0"));
}

TEST(Negate, DualisesQuantifiersAndConnectives) {
  Formula body = F("x0 = 0");
  EXPECT_EQ(negate(Formula::forall_num(0, body)), Formula::exists_num(0, negate(body)));
  EXPECT_EQ(negate(F("0 = 0 & 1 = 1")), F("0 != 0 | 1 != 1"));
  EXPECT_EQ(negate(F("forall X. exists x. x in X")), F("exists X. forall x. x notin X"));
}

TEST(Negate, InvolutionOnRandomFormulas) {
  tst::Rng rng(7);
  tst::FormulaOptions o;
  for (int i = 0; i < 1000; ++i) {
    Formula f = tst::random_formula(rng, o);
    ASSERT_EQ(negate(negate(f)), f) << print(f);
    ASSERT_EQ(rank(negate(f)), rank(f)) << print(f);
  }
}

TEST(Rank, CountsLogicalSymbols) {
  EXPECT_EQ(rank(Formula::eq(Term::zero(), Term::one())), 0u);
  Formula f = Formula::conj(Formula::eq(Term::zero(), Term::zero()),
                            Formula::forall_num(0, Formula::eq(Term::var(0), Term::zero())));
  EXPECT_EQ(rank(f), 2u);
}

TEST(Numeral, UnfoldsWithZeroAndOne) {
  EXPECT_EQ(numeral(0), Term::zero());
  EXPECT_EQ(numeral(2), Term::plus(Term::plus(Term::zero(), Term::one()), Term::one()));
  EXPECT_EQ(as_numeral(numeral(17)), std::optional<std::uint64_t>(17));
  EXPECT_FALSE(as_numeral(Term::one()).has_value());
}

TEST(Substitute, NumeralsIntoFreeOccurrences) {
  Formula f = Formula::eq(Term::var(3), Term::zero());
  EXPECT_EQ(substitute_numerals(f, {{3, 2}}), Formula::eq(numeral(2), Term::zero()));
  Formula closed = F("0 = 1");
  EXPECT_EQ(substitute_numerals(closed, {}), closed);
}

TEST(Substitute, LeavesBoundOccurrencesAlone) {
  Formula f = F("x0 = 0 & forall x0. x0 = x0");
  Formula g = substitute(f, 0, numeral(1));
  EXPECT_EQ(g, Formula::conj(Formula::eq(numeral(1), Term::zero()), F("forall x0. x0 = x0")));
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(F("0 != 1")), (FormulaClass{ClassTag::Delta00, 0, true}));
  EXPECT_EQ(classify(F("exists x. x = 0")), (FormulaClass{ClassTag::Sigma0, 1, true}));
  EXPECT_EQ(classify(F("forall X. exists x. x in X")), (FormulaClass{ClassTag::Pi1, 1, true}));
  EXPECT_EQ(classify(F("forall x < 5. x < 6")), (FormulaClass{ClassTag::Delta00, 0, true}));
  EXPECT_EQ(classify(F("forall x. exists y. x + 1 = y")), (FormulaClass{ClassTag::Pi0, 2, true}));
  EXPECT_FALSE(classify(F("0 in X0")).lightface);
}

TEST(Classify, DualityOnRandomPrenexFormulas) {
  tst::Rng rng(11);
  tst::FormulaOptions o;
  for (int i = 0; i < 1000; ++i) {
    Formula f = tst::random_prenex(rng, o);
    ASSERT_EQ(classify(negate(f)), dual_class(classify(f))) << print(f);
  }
}

TEST(Parser, Examples) {
  EXPECT_EQ(F("0 != 1"), Formula::neq(Term::zero(), Term::one()));
  Formula f = F("forall x. exists y. x + 1 = y");
  ASSERT_EQ(f.kind(), FormulaKind::ForallNum);
  EXPECT_EQ(f.body().kind(), FormulaKind::ExistsNum);
  EXPECT_EQ(parse_term("2"), numeral(2));
  EXPECT_EQ(parse_term("1"), Term::one());
}

TEST(Parser, ImplicationIsAMacro) {
  EXPECT_EQ(F("0 = 1 -> 1 = 1"), Formula::disj(F("0 != 1"), F("1 = 1")));
}

TEST(Parser, RoundTripOnRandomFormulas) {
  tst::Rng rng(3);
  tst::FormulaOptions o;
  o.depth = 5;
  for (int i = 0; i < 2000; ++i) {
    Formula f = tst::random_formula(rng, o);
    ASSERT_EQ(parse_formula(print(f)), f) << print(f);
  }
}

TEST(Parser, RejectsGarbageWithPosition) {
  EXPECT_THROW(F("0 = "), SyntaxError);
  EXPECT_THROW(F("forall . x = x"), SyntaxError);
  try {
    F("0 = 1 )");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_GT(e.position(), 0u);
  }
}

TEST(Sequent, IsASet) {
  Sequent a = parse_sequent("{0 = 1, 1 = 1, 0 = 1}");
  Sequent b = parse_sequent("{1 = 1, 0 = 1}");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.size(), 2u);
  EXPECT_TRUE(Sequent{}.empty());
  EXPECT_EQ(parse_sequent(print(a)), a);
}

TEST(Bounded, MacrosAreRecognised) {
  Formula le = make_le(numeral(2), numeral(5));
  ASSERT_TRUE(match_le(le).has_value());
  EXPECT_EQ(match_le(le)->upper, numeral(5));
  ASSERT_TRUE(match_not_le(negate(le)).has_value());
  Formula b = bounded_forall(0, numeral(4), F("x0 = x0"));
  auto v = match_bounded_forall(b);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->bound, numeral(4));
  EXPECT_TRUE(v->strict);
  EXPECT_TRUE(is_delta00(b));
}
