#pragma once

// Named ω-tree generators for the check-omega command and the tests. Each
// entry bundles the tree with the theory and oracles it is meant to be
// checked against.

#include "synth.hpp"
#include "text.hpp"

namespace omegalogic {

struct GeneratedTree {
  OmegaTree tree;
  TheorySpec theory;
  OracleTuple oracles;
  Sequent root;
};

struct GeneratorArgs {
  std::optional<Formula> formula;  // synth-pi01 only
  OracleTuple oracles;             // synth-pi01 only
};

namespace detail {
// ∀x (x = x ∨ x ≠ x): OMEGA, then OR, then LEM. `bad` puts ω+1 on the children;
// `cut_at` makes the generator undefined from that child on; `corrupt_at`
// relabels that child.
inline GeneratedTree lem_forall(std::string name, bool bad, std::optional<std::uint64_t> cut_at,
                                std::optional<std::uint64_t> corrupt_at) {
  VarIndex x = 0;
  Term v = Term::var(x);
  Formula body = Formula::disj(Formula::eq(v, v), Formula::neq(v, v));
  Formula phi = Formula::forall_num(x, body);
  auto gen = [=](const Position& p) -> std::optional<NodeDescriptor> {
    if (p.empty()) return NodeDescriptor{Sequent{phi}, RuleTag::OMEGA, Arity::infinite(), Ordinal::omega(), OmegaWitness{phi}};
    std::uint64_t n = p[0];
    if (cut_at && n >= *cut_at) return std::nullopt;
    Term t = numeral(corrupt_at && n == *corrupt_at ? n + 1 : n);
    Formula inst = substitute(body, x, t);
    if (p.size() == 1)
      return NodeDescriptor{Sequent{inst}, RuleTag::OR, Arity::finite(1),
                            bad ? Ordinal::omega().successor() : Ordinal::finite(1), NoWitness{}};
    if (p.size() == 2 && p[1] == 0)
      return NodeDescriptor{Sequent{inst.left(), inst.right()}, RuleTag::LEM, Arity::finite(0), Ordinal::zero(),
                            NoWitness{}};
    return std::nullopt;
  };
  return {OmegaTree::from_generator(std::move(name), gen), TheorySpec(), OracleTuple{}, Sequent{phi}};
}
}  // namespace detail

inline std::vector<std::string> generator_names() {
  return {"lem-forall", "bad-ordinal", "truncated", "corrupt-premise", "synth-pi01", "oracle-forall"};
}

inline GeneratedTree make_generator(const std::string& name, const GeneratorArgs& args = {}) {
  if (name == "lem-forall") return detail::lem_forall(name, false, std::nullopt, std::nullopt);
  if (name == "bad-ordinal") return detail::lem_forall(name, true, std::nullopt, std::nullopt);
  if (name == "truncated") return detail::lem_forall(name, false, 2, std::nullopt);
  if (name == "corrupt-premise") return detail::lem_forall(name, false, std::nullopt, 2);
  if (name == "synth-pi01") {
    Formula phi = args.formula ? *args.formula : parse_formula("forall x. x = x");
    return {synth_pi01(phi, args.oracles), base_arithmetic(), args.oracles, Sequent{phi}};
  }
  if (name == "oracle-forall") {
    OracleTuple a{{UPSet::evens()}};
    Formula phi = parse_formula("forall x. x + x in O0");
    return {synth_pi01(phi, a), base_arithmetic(), a, Sequent{phi}};
  }
  throw FormatError("unknown generator " + name);
}

}  // namespace omegalogic
