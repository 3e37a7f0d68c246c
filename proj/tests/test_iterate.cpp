#include <gtest/gtest.h>

#include "omegalogic/iterate.hpp"
#include "omegalogic/text.hpp"

using namespace omegalogic;

namespace {
IterSpec spec(std::vector<const char*> seeds, std::uint64_t cutoff = 2) {
  IterSpec s;
  for (auto t : seeds) s.pool.seeds.push_back(parse_formula(t));
  s.pool.omega_cutoff = cutoff;
  return s;
}
const TheorySpec kTrue({}, 0, true);
}  // namespace

TEST(WellOrder, FiniteChains) {
  EXPECT_TRUE(check_wellorder(CodedWellOrder::from_sequence({0, 1, 2})));
  EXPECT_TRUE(check_wellorder(CodedWellOrder::from_sequence({})));
  CodedWellOrder empty_rel;
  empty_rel.domain = {0, 1};
  EXPECT_FALSE(check_wellorder(empty_rel));
  CodedWellOrder cyc = CodedWellOrder::from_sequence({0, 1, 2});
  cyc.pairs.insert({2, 0});
  EXPECT_FALSE(check_wellorder(cyc));
  CodedWellOrder stray = CodedWellOrder::from_sequence({0, 1});
  stray.pairs.insert({0, 9});
  EXPECT_FALSE(check_wellorder(stray));
  EXPECT_EQ(order_sequence(CodedWellOrder::from_sequence({5, 3, 8})), (std::vector<std::uint64_t>{5, 3, 8}));
  EXPECT_THROW(order_sequence(cyc), NotAWellOrder);
}

TEST(OperatorR, BaseTheoremsEnterAtTheFirstStage) {
  auto s = spec({"0 = 0", "forall x. x = x"});
  auto st = run_iteration(CodedWellOrder::from_sequence({0, 1, 2}), s, kTrue, {});
  EXPECT_EQ(operator_R(parse_formula("0 = 0"), st), Membership::In);
  EXPECT_EQ(entry_stage(parse_formula("0 = 0"), st), std::optional<std::size_t>(1));
  EXPECT_EQ(operator_R(parse_formula("0 != 0"), st), Membership::Out);
  EXPECT_EQ(operator_R(parse_formula("1 = 1 & 0 = 0"), st), Membership::OutsideUniverse);
  EXPECT_TRUE(verify_tr_equation(st, kTrue, {}));
}

TEST(OperatorR, StagesAreCumulative) {
  auto s = spec({"forall x. x = x", "0 = 1"});
  auto st = run_iteration(CodedWellOrder::from_sequence({0, 1, 2, 3}), s, kTrue, {});
  for (std::size_t k = 1; k < st.sequence.size(); ++k) {
    auto prev = st.stages.at(st.sequence[k - 1]);
    auto below = st.below(st.sequence[k]);
    for (std::size_t i = 0; i < prev.size(); ++i)
      if (prev[i]) EXPECT_TRUE(below[i]);
  }
}

TEST(OperatorR, RejectsBadOrdersEvenOutsideThePool) {
  CodedWellOrder bad;
  bad.domain = {0, 1};
  auto s = spec({"0 = 0"});
  EXPECT_THROW(operator_R(parse_formula("1 = 1 & 1 = 1"), bad, s, kTrue, {}), NotAWellOrder);
  EXPECT_EQ(operator_R(parse_formula("1 = 1 & 1 = 1"), CodedWellOrder::from_sequence({0}), s, kTrue, {}),
            Membership::OutsideUniverse);
}

TEST(OperatorR, IsomorphicOrdersGiveTheSameResult) {
  auto s = spec({"forall x. x = x", "exists x. x = 0 + 1", "0 = 1"});
  auto a = run_iteration(CodedWellOrder::from_sequence({0, 1, 2}), s, kTrue, {});
  auto b = run_iteration(CodedWellOrder::from_sequence({7, 3, 11}), s, kTrue, {});
  for (const auto& f : a.pool->formulas()) {
    EXPECT_EQ(operator_R(f, a), operator_R(f, b)) << print(f);
    EXPECT_EQ(entry_stage(f, a), entry_stage(f, b)) << print(f);
  }
}
