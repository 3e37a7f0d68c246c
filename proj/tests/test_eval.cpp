#include <gtest/gtest.h>

#include "omegalogic/eval.hpp"
#include "omegalogic/ordinal.hpp"
#include "omegalogic/testing/random.hpp"
#include "omegalogic/text.hpp"

using namespace omegalogic;
namespace tst = omegalogic::testing;

namespace {
Verdict E(const char* s, const OracleTuple& a = {}, std::uint64_t cutoff = 64) {
  return eval_formula(parse_formula(s), a, {}, cutoff);
}
}  // namespace

TEST(EvalTerm, Examples) {
  EXPECT_EQ(eval_term(Term::plus(Term::one(), Term::one()), {}), Natural(2));
  EXPECT_EQ(eval_term(Term::exp(numeral(3)), {}), Natural(8));
  EXPECT_EQ(eval_term(parse_term("x0 * 3 + 1"), {{0, Natural(4)}}), Natural(13));
  EXPECT_THROW(eval_term(Term::var(5), {}), UnboundVariable);
}

TEST(EvalFormula, Examples) {
  EXPECT_TRUE(E("0 != 1").is_true());
  EXPECT_TRUE(E("exists x. x + 1 = 0", {}, 100).is_unknown());
  EXPECT_TRUE(E("forall x < 5. x < 6").is_true());
  EXPECT_TRUE(E("forall x < 5. x < 4").is_false());
  EXPECT_TRUE(E("exists x. x + 1 = 3").is_true());
  EXPECT_TRUE(E("forall x. x = x").is_unknown());
}

TEST(EvalFormula, Oracles) {
  OracleTuple a{{UPSet::evens()}};
  EXPECT_TRUE(E("4 in O0", a).is_true());
  EXPECT_TRUE(E("3 in O0", a).is_false());
  EXPECT_TRUE(E("exists x < 3. x in O0 & x = 0 + 1", a).is_false());
  EXPECT_THROW(E("0 in O3", a), UnresolvedSymbol);
}

TEST(EvalFormula, DualityOnRandomSentences) {
  tst::Rng rng(21);
  OracleTuple a{{UPSet::evens()}};
  tst::SentenceOptions o;
  o.unbounded_exists = true;
  for (int i = 0; i < 500; ++i) {
    Formula f = tst::random_delta00_sentence(rng, o);
    Verdict v = eval_formula(f, a), w = eval_formula(negate(f), a);
    ASSERT_EQ(w.value, v.flipped().value) << print(f);
    if (is_delta00(f)) ASSERT_FALSE(v.is_unknown()) << print(f);
  }
}

TEST(UPSet, MembershipAndAlgebra) {
  UPSet e = UPSet::evens(), o = UPSet::odds();
  EXPECT_TRUE(e.contains(std::uint64_t{10}));
  EXPECT_FALSE(e.contains(std::uint64_t{7}));
  EXPECT_EQ(e.complement(), o);
  EXPECT_EQ(e.unite(o), UPSet::all());
  EXPECT_EQ(e.intersect(o), UPSet::empty());
  UPSet f = UPSet::finite({1, 4});
  EXPECT_TRUE(f.contains(std::uint64_t{4}));
  EXPECT_FALSE(f.contains(std::uint64_t{40}));
  EXPECT_TRUE(e.contains(Natural(1) << 200));
}

TEST(OracleTuple, PrefixAndEncoding) {
  OracleTuple a{{UPSet::evens()}}, b{{UPSet::evens(), UPSet::odds()}};
  EXPECT_TRUE(a.is_prefix_of(b));
  EXPECT_FALSE(b.is_prefix_of(a));
  auto codes = a.encode_tuple(3);
  auto has = [&](std::uint64_t k, std::uint64_t i) {
    return std::find(codes.begin(), codes.end(), cantor_pair(k, i)) != codes.end();
  };
  EXPECT_TRUE(has(0, 1));  // length 1, and 0 ∈ A_0
  EXPECT_TRUE(has(2, 1));
  EXPECT_FALSE(has(1, 1));
  EXPECT_FALSE(has(3, 1));
}

TEST(Ordinal, CantorNormalFormOrder) {
  Ordinal w = Ordinal::omega();
  EXPECT_LT(Ordinal::finite(5), w);
  EXPECT_LT(w, w.successor());
  EXPECT_LT(w + w, Ordinal::omega_power(Ordinal::finite(2)));
  EXPECT_EQ(Ordinal::finite(1) + w, w);
  EXPECT_EQ(Ordinal::parse("w^2 + w*3 + 1"),
            Ordinal::omega_power(Ordinal::finite(2)) + Ordinal::omega_power(Ordinal::finite(1), 3) + Ordinal::finite(1));
  EXPECT_EQ(Ordinal::parse(Ordinal::parse("w^w + 2").str()), Ordinal::parse("w^w + 2"));
  EXPECT_TRUE(w.is_limit());
  EXPECT_TRUE(w.successor().is_successor());
  EXPECT_EQ(w.fundamental(3), Ordinal::finite(3));
}
