#include <gtest/gtest.h>

#include "omegalogic/synth.hpp"
#include "omegalogic/testing/random.hpp"

using namespace omegalogic;
namespace tst = omegalogic::testing;

namespace {
bool proves(const char* sequent, const OracleTuple& a = {}) {
  FiniteProof p = synth_delta00(parse_sequent(sequent), a);
  return p.conclusion == parse_sequent(sequent) && check_proof(p, CutRank::omega(), base_arithmetic(), a);
}
CheckReport omega(const char* phi, const OracleTuple& a) {
  Formula f = parse_formula(phi);
  CheckOptions o;
  o.depth = 3;
  o.samples = 10;
  o.seed = 4;
  return proof_operator_P(Sequent{f}, synth_pi01(f, a), base_arithmetic(), a, o);
}
}  // namespace

TEST(SynthDelta00, Examples) {
  EXPECT_TRUE(proves("{1 + 1 = 2}"));
  EXPECT_TRUE(proves("{0 = 1, 0 != 1}"));
  EXPECT_TRUE(proves("{2 * 3 = 6}"));
  EXPECT_TRUE(proves("{forall x < 4. x < 5}"));
  EXPECT_TRUE(proves("{exists x < 4. x + x = 6}"));
  EXPECT_TRUE(proves("{4 in O0}", {{UPSet::evens()}}));
  EXPECT_THROW(synth_delta00(parse_sequent("{0 = 1}"), {}), NotTrue);
}

TEST(SynthDelta00, ExistentialWitness) {
  FiniteProof p = synth_delta00(parse_sequent("{exists x. x + 1 = 3}"), {});
  ASSERT_EQ(p.tag, RuleTag::EX0);
  auto* w = std::get_if<TermWitness>(&p.witness);
  ASSERT_NE(w, nullptr);
  EXPECT_EQ(as_numeral(w->term), std::optional<std::uint64_t>(2));
  EXPECT_TRUE(check_proof(p, CutRank::omega(), base_arithmetic(), {}));
}

TEST(SynthDelta00, RandomTrueSentences) {
  tst::Rng rng(31);
  tst::SentenceOptions o;
  OracleTuple a{{UPSet::odds()}};
  for (int i = 0; i < 200; ++i) {
    Formula f = tst::random_true_sentence(rng, o, a);
    FiniteProof p = synth_delta00(Sequent{f}, a);
    ASSERT_TRUE(check_proof(p, CutRank::omega(), base_arithmetic(), a)) << print(f);
  }
}

TEST(SynthPi01, TrueUniversalsCheck) {
  EXPECT_TRUE(omega("forall x. x + 0 = x", {}).pass);
  EXPECT_TRUE(omega("forall x. x in O0", {{UPSet::all()}}).pass);
}

TEST(SynthPi01, CounterexamplesAreReported) {
  try {
    synth_pi01(parse_formula("forall x. x < 3"), {});
    FAIL();
  } catch (const CounterexampleFound& e) {
    EXPECT_EQ(e.instance(), 3u);
  }
  try {
    synth_pi01(parse_formula("forall x. x in O0"), {{UPSet::evens()}});
    FAIL();
  } catch (const CounterexampleFound& e) {
    EXPECT_EQ(e.instance(), 1u);
  }
  EXPECT_THROW(synth_pi01(parse_formula("exists x. x = 0"), {}), NotSupported);
}
