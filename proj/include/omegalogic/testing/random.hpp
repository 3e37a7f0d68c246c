#pragma once

// Seeded random generators for terms, formulas, true sentences, trees and
// universes used by the property suite.

#include <random>

#include "../eval.hpp"
#include "../omegaproof.hpp"
#include "../syntax.hpp"

namespace omegalogic::testing {

using Rng = std::mt19937_64;

inline std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

struct TermOptions {
  unsigned depth = 2;
  std::vector<VarIndex> vars;   // variables allowed at the leaves
  std::uint64_t max_numeral = 3;
  bool allow_exp = true;
};

inline Term random_term(Rng& rng, const TermOptions& o) {
  if (o.depth == 0 || coin(rng, 0.4)) {
    std::uint64_t pick = uniform(rng, 0, 3 + (o.vars.empty() ? 0 : 2));
    if (pick == 0) return Term::zero();
    if (pick == 1) return Term::one();
    if (pick <= 3) return numeral(uniform(rng, 0, o.max_numeral));
    return Term::var(o.vars[uniform(rng, 0, o.vars.size() - 1)]);
  }
  TermOptions sub = o;
  sub.depth = o.depth - 1;
  switch (uniform(rng, 0, o.allow_exp ? 2 : 1)) {
    case 0: return Term::plus(random_term(rng, sub), random_term(rng, sub));
    case 1: return Term::times(random_term(rng, sub), random_term(rng, sub));
    default: {
      sub.allow_exp = false;
      sub.depth = 0;
      return Term::exp(random_term(rng, sub));
    }
  }
}

// Arbitrary formulas (free variables, set variables, oracle and model constants).
struct FormulaOptions {
  unsigned depth = 3;
  unsigned term_depth = 2;
  unsigned num_vars = 3;
  unsigned set_vars = 2;
  unsigned oracles = 1;
  unsigned model_consts = 1;
  bool set_quantifiers = true;
  bool quantifiers = true;  // false: quantifier-free
};

inline Formula random_formula(Rng& rng, const FormulaOptions& o) {
  auto atom = [&]() {
    TermOptions to;
    to.depth = o.term_depth;
    for (VarIndex v = 0; v < o.num_vars; ++v) to.vars.push_back(v);
    Term a = random_term(rng, to);
    switch (uniform(rng, 0, 3)) {
      case 0: return Formula::eq(a, random_term(rng, to));
      case 1: return Formula::neq(a, random_term(rng, to));
      default: {
        std::vector<SetRef> refs;
        for (VarIndex i = 0; i < o.set_vars; ++i) refs.push_back(SetRef::var(i));
        for (VarIndex i = 0; i < o.oracles; ++i) refs.push_back(SetRef::oracle(i));
        for (VarIndex i = 0; i < o.model_consts; ++i) refs.push_back(SetRef::model(i));
        if (refs.empty()) return Formula::eq(a, a);
        SetRef s = refs[uniform(rng, 0, refs.size() - 1)];
        return coin(rng) ? Formula::in(a, s) : Formula::notin(a, s);
      }
    }
  };
  if (o.depth == 0 || coin(rng, 0.3)) return atom();
  FormulaOptions sub = o;
  sub.depth = o.depth - 1;
  unsigned kinds = !o.quantifiers ? 2 : o.set_quantifiers && o.set_vars ? 6 : 4;
  switch (uniform(rng, 0, kinds - 1)) {
    case 0: return Formula::conj(random_formula(rng, sub), random_formula(rng, sub));
    case 1: return Formula::disj(random_formula(rng, sub), random_formula(rng, sub));
    case 2: return Formula::forall_num(static_cast<VarIndex>(uniform(rng, 0, o.num_vars - 1)), random_formula(rng, sub));
    case 3: return Formula::exists_num(static_cast<VarIndex>(uniform(rng, 0, o.num_vars - 1)), random_formula(rng, sub));
    case 4: return Formula::forall_set(static_cast<VarIndex>(uniform(rng, 0, o.set_vars - 1)), random_formula(rng, sub));
    default: return Formula::exists_set(static_cast<VarIndex>(uniform(rng, 0, o.set_vars - 1)), random_formula(rng, sub));
  }
}

// Quantifier prefix over a quantifier-free matrix.
inline Formula random_prenex(Rng& rng, FormulaOptions o, unsigned max_prefix = 4) {
  o.quantifiers = false;
  Formula f = random_formula(rng, o);
  std::uint64_t k = uniform(rng, 0, max_prefix);
  for (std::uint64_t i = 0; i < k; ++i) {
    bool set = o.set_quantifiers && o.set_vars && coin(rng);
    auto v = static_cast<VarIndex>(uniform(rng, 0, (set ? o.set_vars : o.num_vars) - 1));
    if (set)
      f = coin(rng) ? Formula::forall_set(v, f) : Formula::exists_set(v, f);
    else
      f = coin(rng) ? Formula::forall_num(v, f) : Formula::exists_num(v, f);
  }
  return f;
}

// Closed bounded sentences with small values; bound variables are fresh per
// quantifier so every term can be evaluated.
struct SentenceOptions {
  unsigned depth = 3;
  std::uint64_t max_bound = 4;
  std::uint64_t max_numeral = 4;
  bool oracle_atoms = true;
  bool unbounded_exists = false;  // allow one outer unbounded ∃ (Σ01)
};

namespace detail {
inline Formula random_bounded(Rng& rng, const SentenceOptions& o, unsigned depth, std::vector<VarIndex>& scope,
                              VarIndex& next) {
  TermOptions to;
  to.depth = 1;
  to.vars = scope;
  to.max_numeral = o.max_numeral;
  to.allow_exp = false;
  if (depth == 0 || coin(rng, 0.35)) {
    Term a = random_term(rng, to);
    switch (uniform(rng, 0, o.oracle_atoms ? 4 : 2)) {
      case 0: return Formula::eq(a, random_term(rng, to));
      case 1: return Formula::neq(a, random_term(rng, to));
      case 2: {
        Term b = random_term(rng, to);
        Formula le = coin(rng) ? make_lt(a, b) : make_le(a, b);
        return coin(rng) ? le : negate(le);
      }
      case 3: return Formula::in(a, SetRef::oracle(0));
      default: return Formula::notin(a, SetRef::oracle(0));
    }
  }
  switch (uniform(rng, 0, 3)) {
    case 0: return Formula::conj(random_bounded(rng, o, depth - 1, scope, next), random_bounded(rng, o, depth - 1, scope, next));
    case 1: return Formula::disj(random_bounded(rng, o, depth - 1, scope, next), random_bounded(rng, o, depth - 1, scope, next));
    default: {
      VarIndex x = next++;
      Term bound = numeral(uniform(rng, 0, o.max_bound));
      scope.push_back(x);
      Formula body = random_bounded(rng, o, depth - 1, scope, next);
      scope.pop_back();
      bool strict = coin(rng);
      return coin(rng) ? bounded_forall(x, bound, body, strict) : bounded_exists(x, bound, body, strict);
    }
  }
}
}  // namespace detail

inline Formula random_delta00_sentence(Rng& rng, const SentenceOptions& o) {
  std::vector<VarIndex> scope;
  VarIndex next = 0;
  if (o.unbounded_exists && coin(rng, 0.5)) {
    VarIndex x = next++;
    scope.push_back(x);
    Formula body = detail::random_bounded(rng, o, o.depth ? o.depth - 1 : 0, scope, next);
    return Formula::exists_num(x, body);
  }
  return detail::random_bounded(rng, o, o.depth, scope, next);
}

// True sentence: false bounded sentences are negated; false Σ01 ones are redrawn.
inline Formula random_true_sentence(Rng& rng, const SentenceOptions& o, const OracleTuple& oracles) {
  for (;;) {
    Formula f = random_delta00_sentence(rng, o);
    Verdict v = eval_formula(f, oracles);
    if (v.is_true()) return f;
    if (v.is_false() && is_delta00(f)) return negate(f);
  }
}

// ∀x ψ(x) with ψ bounded and true for every x, from a few identity templates.
inline Formula random_true_pi01(Rng& rng) {
  VarIndex x = 0, y = 1;
  Term X = Term::var(x);
  Term a = numeral(uniform(rng, 0, 3)), b = numeral(uniform(rng, 1, 3));
  auto body = [&]() {
    switch (uniform(rng, 0, 5)) {
      case 0: return Formula::eq(Term::plus(X, a), Term::plus(a, X));
      case 1: return Formula::eq(Term::times(Term::plus(X, a), b), Term::plus(Term::times(b, X), Term::times(a, b)));
      case 2: return Formula::neq(Term::plus(Term::plus(X, a), Term::one()), X);
      case 3: return bounded_exists(y, Term::plus(X, b), Formula::eq(Term::var(y), X), false);
      case 4: return Formula::disj(Formula::in(X, SetRef::oracle(0)), Formula::notin(X, SetRef::oracle(0)));
      default: return bounded_forall(y, b, Formula::neq(Term::plus(Term::plus(X, b), Term::one()), Term::var(y)));
    }
  };
  return Formula::forall_num(x, body());
}

inline UPSet random_upset(Rng& rng) {
  std::vector<bool> pre(uniform(rng, 0, 3)), per(uniform(rng, 1, 3));
  for (std::size_t i = 0; i < pre.size(); ++i) pre[i] = coin(rng);
  for (std::size_t i = 0; i < per.size(); ++i) per[i] = coin(rng);
  return UPSet(pre, per);
}

// Explicit finite tree with random shape and labels {x̄ = x̄} (labels are not
// meant to check; only positions matter).
inline OmegaTree random_shape_tree(Rng& rng, unsigned max_depth, unsigned max_branch) {
  std::map<Position, NodeDescriptor> table;
  std::function<void(Position, unsigned)> grow = [&](Position p, unsigned d) {
    std::uint64_t k = d == 0 ? 0 : uniform(rng, 0, max_branch);
    Sequent label{Formula::eq(numeral(p.size()), numeral(p.size()))};
    table[p] = NodeDescriptor{label, RuleTag::LEM, Arity::finite(k), Ordinal::finite(d), NoWitness{}};
    for (std::uint64_t i = 0; i < k; ++i) {
      Position c = p;
      c.push_back(i);
      grow(c, d - 1);
    }
  };
  grow({}, max_depth);
  return OmegaTree::from_table(std::move(table));
}

}  // namespace omegalogic::testing
