#include <gtest/gtest.h>

#include <filesystem>

#include "omegalogic/generators.hpp"
#include "omegalogic/json_io.hpp"

using namespace omegalogic;
namespace jio = omegalogic::json_io;

TEST(JsonIo, UPSetAndOracles) {
  for (const auto& s : {UPSet::evens(), UPSet::odds(), UPSet::finite({1, 4}), UPSet::all(), UPSet::empty()})
    EXPECT_EQ(jio::upset_from_json(jio::to_json(s)), s);
  OracleTuple a{{UPSet::evens(), UPSet::finite({3})}};
  EXPECT_EQ(jio::oracles_from_json(jio::to_json(a)).fingerprint(), a.fingerprint());
  EXPECT_THROW(jio::upset_from_json(jio::json{{"prefix", "12"}, {"period", ""}}), FormatError);
}

TEST(JsonIo, Theory) {
  TheorySpec t({parse_sequent("{0 = 1}"), parse_sequent("{x0 + 0 = x0}")}, 2, true);
  TheorySpec back = jio::theory_from_json(jio::to_json(t));
  EXPECT_EQ(back.axioms(), t.axioms());
  EXPECT_EQ(back.search_depth(), 2u);
  EXPECT_TRUE(back.true_atomic());
}

TEST(JsonIo, FiniteProof) {
  FiniteProof p = synth_delta00(parse_sequent("{exists x < 3. x + 1 = 2}"), {});
  FiniteProof q = jio::proof_from_json(jio::to_json(p));
  EXPECT_EQ(q.node_count(), p.node_count());
  EXPECT_TRUE(check_proof(q, CutRank::omega(), base_arithmetic(), {}));
}

TEST(JsonIo, ExplicitTree) {
  FiniteProof p = synth_delta00(parse_sequent("{0 + 1 = 1}"), {});
  OmegaTree t = embed(p);
  OmegaTree u = jio::tree_from_json(jio::tree_to_json(t));
  ASSERT_EQ(u.table().size(), t.table().size());
  for (const auto& [pos, d] : t.table()) {
    auto e = u.node(pos);
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ(e->label, d.label);
    EXPECT_EQ(e->rule, d.rule);
    EXPECT_EQ(e->ordinal, d.ordinal);
  }
}

TEST(JsonIo, ClassRoundTrip) {
  UniverseSpec us;
  us.pool.seeds = {parse_formula("0 = 1"), parse_formula("forall x. x = x")};
  us.pool.omega_cutoff = 2;
  us.len_bound = 2;
  auto u = make_universe(us);
  ProvClass c = saturate(u, CutRank::omega(), TheorySpec({}, 0, true), {});
  ProvClass d = jio::class_from_json(jio::to_json(c));
  EXPECT_EQ(d.as_bitset(), c.as_bitset());
  RuleTable table(d.universe(), CutRank::omega(), TheorySpec({}, 0, true), {});
  EXPECT_TRUE(verify_provenance(d, table));
}

TEST(JsonIo, WellOrderAndModel) {
  auto w = CodedWellOrder::from_sequence({4, 2, 9});
  EXPECT_EQ(order_sequence(jio::wellorder_from_json(jio::to_json(w))), order_sequence(w));
  OmegaModel m({UPSet::evens()}, 2, 12);
  m.sat(parse_formula("0 in C0"));
  OmegaModel n = jio::model_from_json(jio::to_json(m));
  EXPECT_EQ(n.family(), m.family());
  EXPECT_EQ(n.rank(), 2u);
  EXPECT_TRUE(n.sat(parse_formula("0 in C0")).value);
}

TEST(JsonIo, Files) {
  auto path = std::filesystem::temp_directory_path() / "omegalogic_json_io_test.json";
  jio::write_file(path.string(), jio::to_json(CodedWellOrder::from_sequence({0, 1})));
  EXPECT_EQ(jio::wellorder_from_json(jio::read_file(path.string())).domain, (std::vector<std::uint64_t>{0, 1}));
  std::filesystem::remove(path);
  EXPECT_THROW(jio::read_file("/nonexistent/omegalogic.json"), FormatError);
}
