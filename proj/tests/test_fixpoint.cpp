#include <gtest/gtest.h>

#include "omegalogic/synth.hpp"
#include "omegalogic/testing/suite.hpp"
#include "omegalogic/text.hpp"

using namespace omegalogic;
namespace tst = omegalogic::testing;

namespace {
UniversePtr universe(std::vector<const char*> seeds, std::uint32_t len, std::uint64_t cutoff, std::uint32_t oracles = 0,
                     std::size_t budget = 200000) {
  UniverseSpec s;
  for (auto t : seeds) s.pool.seeds.push_back(parse_formula(t));
  s.pool.omega_cutoff = cutoff;
  s.pool.oracle_count = oracles;
  s.len_bound = len;
  s.max_sequents = budget;
  return make_universe(s);
}
const TheorySpec kTrue({}, 0, true);
}  // namespace

TEST(Universe, ContainsEmptySequentAndIsSortedByCode) {
  auto u = universe({"0 = 1"}, 2, 0);
  EXPECT_EQ(u->size(), 4u);  // {}, {0=1}, {0!=1}, {0=1, 0!=1}
  for (std::size_t i = 0; i + 1 < u->size(); ++i) EXPECT_LT(encode(u->at(i)), encode(u->at(i + 1)));
  EXPECT_TRUE(u->contains(Sequent{}));
}

TEST(Universe, BudgetIsEnforced) {
  EXPECT_THROW(universe({"forall x. exists y. x + y = y + x"}, 3, 5, 0, 100), UniverseTooLarge);
}

TEST(OperatorI, EmptySequentIsUnprovableWithoutAxioms) {
  auto u = universe({"0 = 1", "forall x. x = x"}, 2, 2);
  EXPECT_EQ(operator_I(Sequent{}, u, CutRank::omega(), TheorySpec(), {}), Membership::Out);
  EXPECT_EQ(operator_I(parse_sequent("{0 = 1, 0 != 1}"), u, CutRank::omega(), TheorySpec(), {}), Membership::In);
  EXPECT_EQ(operator_I(parse_sequent("{1 = 1, 1 != 1}"), u, CutRank::omega(), TheorySpec(), {}),
            Membership::OutsideUniverse);
}

TEST(OperatorI, InconsistentTheoryDerivesBottom) {
  auto u = universe({"0 = 1"}, 2, 0);
  TheorySpec t({parse_sequent("{0 = 1}")}, 0, true);
  EXPECT_EQ(operator_I(Sequent{}, u, CutRank::finite(1), t, {}), Membership::In);
  EXPECT_EQ(operator_I(Sequent{}, u, CutRank::finite(0), t, {}), Membership::Out);
}

TEST(OperatorI, OmegaRuleFromTrueInstances) {
  auto u = universe({"forall x. x = x"}, 1, 3);
  EXPECT_EQ(operator_I(parse_sequent("{forall x. x = x}"), u, CutRank::finite(0), kTrue, {}), Membership::In);
  EXPECT_EQ(operator_I(parse_sequent("{exists x. x != x}"), u, CutRank::omega(), kTrue, {}), Membership::Out);
}

TEST(ExtractSet, ReadsOffInstances) {
  auto u = universe({"forall x. x = x"}, 1, 5);
  auto yes = extract_set(u, CutRank::omega(), kTrue, {}, parse_formula("x = x"), 5);
  auto no = extract_set(u, CutRank::omega(), kTrue, {}, parse_formula("x != x"), 5);
  EXPECT_EQ(yes, std::vector<bool>(6, true));
  EXPECT_EQ(no, std::vector<bool>(6, false));
  EXPECT_THROW(extract_set(u, CutRank::omega(), kTrue, {}, parse_formula("x = x"), 9), OutsideUniverse);
  EXPECT_THROW(extract_set(u, CutRank::omega(), kTrue, {}, parse_formula("0 = 0"), 2), FormatError);
}

TEST(ExtractSet, OracleMembership) {
  OracleTuple a{{UPSet::evens()}};
  auto u = universe({"forall x. x in O0"}, 1, 6);
  auto bits = extract_set(u, CutRank::omega(), TheorySpec(), a, parse_formula("x in O0"), 6);
  for (std::size_t n = 0; n < bits.size(); ++n) EXPECT_EQ(bits[n], n % 2 == 0) << n;
}

TEST(Saturate, AgreesWithWorklistOnFixtures) {
  for (const auto& fx : tst::fixture_universes())
    for (CutRank r : {CutRank::finite(0), CutRank::finite(2), CutRank::omega()}) {
      ProvClass c = saturate(fx.universe, r, fx.theory, fx.oracles);
      EXPECT_EQ(c.as_bitset(), saturate_worklist(fx.universe, r, fx.theory, fx.oracles)) << fx.name;
      RuleTable table(fx.universe, r, fx.theory, fx.oracles);
      EXPECT_TRUE(table.is_closed(c.as_bitset())) << fx.name;
      EXPECT_TRUE(verify_provenance(c, table)) << fx.name;
    }
}

TEST(Saturate, ShuffleAndJobsDoNotChangeTheResult) {
  auto fx = tst::fixture_universes().front();
  RuleTable table(fx.universe, CutRank::omega(), fx.theory, fx.oracles);
  auto base = saturate(table).as_bitset();
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    SaturateOptions o;
    o.shuffle_seed = seed;
    o.jobs = 3;
    EXPECT_EQ(saturate(table, o).as_bitset(), base);
  }
}

TEST(Saturate, ProvenanceAuditCatchesForgeries) {
  auto fx = tst::fixture_universes().front();
  RuleTable table(fx.universe, CutRank::omega(), fx.theory, fx.oracles);
  ProvClass c = saturate(table);
  ASSERT_TRUE(verify_provenance(c, table));
  // claim a non-member with a made-up justification
  for (std::size_t i = 0; i < fx.universe->size(); ++i)
    if (!c.contains(i)) {
      Provenance fake;
      fake.kind = ProvKind::Rule;
      fake.tag = RuleTag::LEM;
      c.set(i, 1, fake);
      break;
    }
  EXPECT_FALSE(verify_provenance(c, table));
}

TEST(Saturate, SeededWorklistGivesLeastClosedSuperset) {
  auto fx = tst::fixture_universes().front();
  auto p = saturate_worklist(fx.universe, CutRank::omega(), fx.theory, fx.oracles);
  std::vector<char> seed(fx.universe->size(), 0);
  seed[fx.universe->size() / 2] = 1;
  auto q = tst::closed_superset(fx.universe, CutRank::omega(), fx.theory, fx.oracles, seed);
  RuleTable table(fx.universe, CutRank::omega(), fx.theory, fx.oracles);
  EXPECT_TRUE(table.is_closed(q));
  EXPECT_TRUE(tst::subset_of(p, q));
  EXPECT_TRUE(q[fx.universe->size() / 2]);
}

TEST(Monotonicity, CutRankAndOracles) {
  for (const auto& fx : tst::fixture_universes()) {
    auto lo = saturate(fx.universe, CutRank::finite(1), fx.theory, fx.oracles);
    auto hi = saturate(fx.universe, CutRank::omega(), fx.theory, fx.oracles);
    EXPECT_TRUE(compare_classes(lo, hi).holds) << fx.name;
    EXPECT_TRUE(compare_oracles(fx.universe, CutRank::omega(), fx.theory, fx.oracles, fx.extended).holds) << fx.name;
  }
  auto fx = tst::fixture_universes().front();
  EXPECT_THROW(compare_oracles(fx.universe, CutRank::omega(), fx.theory, OracleTuple{{UPSet::odds()}},
                               OracleTuple{{UPSet::evens()}}),
               FormatError);
}
