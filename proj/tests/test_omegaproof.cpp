#include <gtest/gtest.h>

#include "omegalogic/generators.hpp"
#include "omegalogic/testing/oracles.hpp"
#include "omegalogic/testing/random.hpp"

using namespace omegalogic;
namespace tst = omegalogic::testing;

namespace {
CheckReport run(const GeneratedTree& g, std::uint32_t depth = 3, std::uint32_t samples = 20) {
  CheckOptions o;
  o.depth = depth;
  o.samples = samples;
  o.seed = 1;
  return proof_operator_P(g.root, g.tree, g.theory, g.oracles, o);
}
}  // namespace

TEST(CheckOmega, LemForallPasses) {
  auto r = run(make_generator("lem-forall"));
  EXPECT_TRUE(r.pass);
  EXPECT_GT(r.explored, 4u);
}

TEST(CheckOmega, BadOrdinalIsReported) {
  auto r = run(make_generator("bad-ordinal"));
  ASSERT_FALSE(r.pass);
  EXPECT_EQ(r.first_violation->kind, ViolationKind::OrdinalNotDecreasing);
}

TEST(CheckOmega, TruncatedGeneratorIsPartial) {
  EXPECT_THROW(run(make_generator("truncated")), GeneratorPartial);
}

TEST(CheckOmega, CorruptPremiseFails) {
  auto r = run(make_generator("corrupt-premise"));
  ASSERT_FALSE(r.pass);
  EXPECT_EQ(r.first_violation->position, (Position{}));
}

TEST(CheckOmega, RootMismatch) {
  auto g = make_generator("lem-forall");
  CheckOptions o;
  auto r = proof_operator_P(parse_sequent("{0 = 0}"), g.tree, g.theory, g.oracles, o);
  ASSERT_FALSE(r.pass);
  EXPECT_EQ(r.first_violation->kind, ViolationKind::RootMismatch);
}

TEST(CheckOmega, OracleForallPasses) {
  EXPECT_TRUE(run(make_generator("oracle-forall"), 3, 10).pass);
}

TEST(CheckOmega, MonotoneInCutRank) {
  auto g = make_generator("synth-pi01");
  CheckOptions o;
  o.rho = CutRank::finite(20);
  bool low = proof_operator_P(g.root, g.tree, g.theory, g.oracles, o).pass;
  o.rho = CutRank::omega();
  bool high = proof_operator_P(g.root, g.tree, g.theory, g.oracles, o).pass;
  EXPECT_TRUE(high);
  if (low) EXPECT_TRUE(high);
}

TEST(CheckOmega, EmbeddedFiniteProofsAgreeWithCheckProof) {
  OracleTuple a{{UPSet::evens()}};
  tst::Rng rng(17);
  tst::SentenceOptions so;
  so.depth = 2;
  so.max_numeral = 3;
  TheorySpec base = base_arithmetic();
  for (int i = 0; i < 30; ++i) {
    Formula f = tst::random_true_sentence(rng, so, a);
    FiniteProof p = synth_delta00(Sequent{f}, a);
    OmegaTree t = embed(p);
    CheckOptions o;
    o.depth = static_cast<std::uint32_t>(p.height() + 1);
    bool omega_ok = proof_operator_P(p.conclusion, t, base, a, o).pass;
    EXPECT_EQ(omega_ok, check_proof(p, CutRank::omega(), base, a)) << print(f);
    EXPECT_TRUE(omega_ok) << print(f);
  }
}

TEST(Linearize, ChainAndSiblings) {
  EXPECT_TRUE(kb_less({0, 0}, {0}));
  EXPECT_TRUE(kb_less({0}, {}));
  EXPECT_TRUE(kb_less({0, 5}, {1}));
  EXPECT_TRUE(kb_less({3}, {4}));
  EXPECT_FALSE(kb_less({4}, {4}));
  EXPECT_FALSE(kb_less({}, {7, 1}));
}

TEST(Linearize, AgreesWithReferenceOrder) {
  tst::Rng rng(23);
  for (int i = 0; i < 50; ++i) {
    OmegaTree t = tst::random_shape_tree(rng, 4, 3);
    LinearizedOrder o = linearize(t);
    EXPECT_EQ(o.elements.back(), Position{});
    for (std::size_t k = 0; k + 1 < o.elements.size(); ++k)
      EXPECT_TRUE(tst::reference_kb_less(o.elements[k], o.elements[k + 1]));
    for (std::size_t k = 0; k < o.elements.size(); ++k) EXPECT_EQ(o.rank_of(o.elements[k]), k);
  }
  EXPECT_THROW(linearize(tst::random_shape_tree(rng, 1, 1)).rank_of({9, 9}), OutsideUniverse);
}

TEST(Linearize, GeneratorTreesAreNotEnumerable) {
  EXPECT_THROW(linearize(make_generator("lem-forall").tree), NotSupported);
}
