#include <gtest/gtest.h>

#include "omegalogic/models.hpp"
#include "omegalogic/testing/suite.hpp"
#include "omegalogic/text.hpp"

using namespace omegalogic;
namespace tst = omegalogic::testing;

namespace {
Formula F(const char* s) { return parse_formula(s); }
}  // namespace

TEST(OmegaModel, SatisfactionOfSetConstants) {
  OmegaModel m({UPSet::evens()}, 1, 16);
  EXPECT_TRUE(m.sat(F("0 in C0")).value);
  EXPECT_FALSE(m.sat(F("1 in C0")).value);
  EXPECT_EQ(m.sat(F("1 in C0")).exactness, Exactness::Exact);
  EXPECT_THROW(m.sat(F("0 in X0")), FormatError);
}

TEST(OmegaModel, SetQuantifiersRangeOverTheFamily) {
  OmegaModel m({UPSet::evens(), UPSet::odds()}, 1, 16);
  EXPECT_FALSE(m.sat(F("forall X. 0 in X")).value);
  EXPECT_TRUE(m.sat(F("exists X. 0 in X")).value);
  EXPECT_TRUE(m.sat(F("forall X. 0 in X | 1 in X")).value);
  OmegaModel only_evens({UPSet::evens()}, 1, 16);
  EXPECT_TRUE(only_evens.sat(F("forall X. 0 in X")).value);
}

TEST(OmegaModel, UnboundedQuantifiersAreTruncated) {
  OmegaModel m({UPSet::evens()}, 1, 8);
  auto e = m.sat(F("forall x. x = x"));
  EXPECT_EQ(e.exactness, Exactness::Truncated);
  auto f = m.sat(F("exists x. x + 1 = 3"));
  EXPECT_TRUE(f.value);
  EXPECT_EQ(f.exactness, Exactness::Exact);
}

TEST(BuildModel, RejectsNonModels) {
  TheorySpec bad({parse_sequent("{0 = 1}")}, 0);
  EXPECT_THROW(build_model({UPSet::evens()}, 1, 8, bad), NotAModelOfT);
  EXPECT_NO_THROW(build_model({UPSet::evens()}, 1, 8, TheorySpec({parse_sequent("{0 in O0}")}, 0)));
  EXPECT_THROW(build_model({UPSet::odds()}, 1, 8, TheorySpec({parse_sequent("{0 in O0}")}, 0)), NotAModelOfT);
}

TEST(OperatorM, HoldsAndFailsAt) {
  ModelPool pool{{OmegaModel({UPSet::evens()}, 1, 16), OmegaModel({UPSet::all()}, 2, 16)}};
  EXPECT_EQ(operator_M(F("0 in C0"), pool, 0).kind, MVerdictKind::Holds);
  auto v = operator_M(F("1 in C0"), pool, 0);
  EXPECT_EQ(v.kind, MVerdictKind::FailsAt);
  EXPECT_EQ(v.model, 0u);
  // rank filter skips the first model
  EXPECT_EQ(operator_M(F("1 in C0"), pool, 2).kind, MVerdictKind::Holds);
  EXPECT_EQ(operator_M(F("forall x. x = x"), pool, 0).kind, MVerdictKind::Undetermined);
}

TEST(Soundness, FixtureIsSoundAndFaultsAreCaught) {
  auto fx = tst::soundness_fixture();
  const std::uint32_t rank_bound = 8;
  ProvClass cls = saturate(fx.universe, CutRank::omega(), fx.theory, fx.oracles);
  auto r = check_soundness_SPC(cls, fx.pool, rank_bound, fx.oracles);
  EXPECT_TRUE(r.ok());
  EXPECT_GT(r.checked, 0u);
  for (const auto& fault : fx.faults) {
    ProvClass bad = cls;
    auto idx = fx.universe->index_of(fault);
    ASSERT_TRUE(idx.has_value()) << print(fault);
    bad.set(*idx, 1, Provenance{});
    EXPECT_FALSE(check_soundness_SPC(bad, fx.pool, rank_bound, fx.oracles).ok()) << print(fault);
  }
}

TEST(Soundness, MismatchedFamiliesAreReported) {
  auto fx = tst::soundness_fixture();
  ProvClass cls = saturate(fx.universe, CutRank::finite(1), fx.theory, fx.oracles);
  ModelPool wrong{{OmegaModel({UPSet::odds()}, 4, 16)}};
  auto r = check_soundness_SPC(cls, wrong, 1, fx.oracles);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.mismatched_models, std::vector<std::size_t>{0});
}

TEST(Reflection, ConsistentAndInconsistentTheories) {
  auto fx = tst::fixture_universes().front();
  ProvClass cls = saturate(fx.universe, CutRank::omega(), fx.theory, fx.oracles);
  auto r = check_reflection_instances(cls, F("x = x"), fx.oracles, 2);
  EXPECT_TRUE(r.clean());

  UniverseSpec us;
  us.pool.seeds = {F("0 = 1"), F("forall x. x = 0")};
  us.pool.omega_cutoff = 2;
  us.len_bound = 2;
  auto u = make_universe(us);
  TheorySpec bad({parse_sequent("{0 = 1}")}, 0, true);
  ProvClass c2 = saturate(u, CutRank::finite(1), bad, {});
  auto r2 = check_reflection_instances(c2, F("x = 0"), {}, 2);
  EXPECT_TRUE(r2.bottom_in);
  EXPECT_FALSE(r2.clean());
  EXPECT_GE(r2.bottom_chain.size(), 2u);
  EXPECT_EQ(r2.bottom_chain.front(), Sequent{});
}

TEST(Beta, GroundTruthAgreesOnTautologies) {
  OmegaModel m({UPSet::evens(), UPSet::odds()}, 2, 16);
  std::vector<UPSet> testpool{UPSet::evens(), UPSet::odds(), UPSet::all(), UPSet::empty()};
  auto rep = check_beta(m, testpool, {F("forall X. 0 in X | 0 notin X"), F("forall X. 0 in X")});
  EXPECT_TRUE(rep.beta);
  ASSERT_EQ(rep.lines.size(), 2u);
  EXPECT_TRUE(rep.lines[0].ground.is_true());
  EXPECT_TRUE(rep.lines[1].ground.is_false());
  EXPECT_THROW(ground_pi11(F("0 = 0"), m, testpool), FormatError);
}
