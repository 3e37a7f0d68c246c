#pragma once

// Proof synthesis for true Δ00 / Σ01 sentences (finite proofs) and true Π01
// sentences (ω-rule generator trees).
//
// Atoms are proved by evaluating both sides to numerals inside the calculus:
// the base arithmetic theory supplies the Peano recursion equations for +, ×
// and exp on numerals, and EQ steps rewrite numerals back into the original
// terms. Bounded universals are handled with an eigenvariable a, a bounded-range
// axiom {a ≥ b ∨ a = 0 ∨ … ∨ a = b-1} and one cut per value k < b; the value
// of a inside each branch is carried as the hypothesis a ≠ k̄, so variables
// evaluate by LEM against it.

#include <mutex>

#include "calculus.hpp"
#include "eval.hpp"
#include "omegaproof.hpp"

namespace omegalogic {

inline constexpr std::uint64_t kDefaultRangeAxioms = 64;

// The numeral-computation theory: equality, Peano recursion for +, ×, exp,
// numeral disequality and the bounded-range axioms for b ≤ range_max.
inline TheorySpec base_arithmetic(std::uint64_t range_max = kDefaultRangeAxioms) {
  Term x0 = Term::var(0), x1 = Term::var(1), z = Term::zero(), one = Term::one();
  auto S = [&](Term t) { return Term::plus(t, one); };
  std::vector<Sequent> ax;
  auto add = [&](std::vector<Formula> fs) { ax.emplace_back(std::move(fs)); };
  add({Formula::eq(x0, x0)});
  add({Formula::eq(one, numeral(1))});
  add({Formula::eq(Term::plus(x0, z), x0)});
  add({Formula::eq(Term::plus(x0, S(x1)), S(Term::plus(x0, x1)))});
  add({Formula::eq(Term::times(x0, z), z)});
  add({Formula::eq(Term::times(x0, S(x1)), Term::plus(Term::times(x0, x1), x0))});
  add({Formula::eq(Term::exp(z), numeral(1))});
  add({Formula::eq(Term::exp(S(x0)), Term::plus(Term::exp(x0), Term::exp(x0)))});
  add({Formula::neq(z, S(x0))});
  add({Formula::neq(S(x0), z)});
  add({Formula::neq(S(x0), S(x1)), Formula::eq(x0, x1)});
  for (int strict = 1; strict >= 0; --strict) {
    for (std::uint64_t b = 0; b <= range_max; ++b) {
      std::vector<Formula> fs{negate(strict ? make_lt(x0, numeral(b)) : make_le(x0, numeral(b)))};
      std::uint64_t end = strict ? b : b + 1;
      for (std::uint64_t k = 0; k < end; ++k) fs.push_back(Formula::eq(x0, numeral(k)));
      add(std::move(fs));
    }
  }
  return TheorySpec(std::move(ax), 0, false);
}

namespace detail {

class Synthesizer {
 public:
  Synthesizer(const OracleTuple& oracles, std::uint64_t range_max, std::uint64_t search_limit)
      : oracles_(oracles), range_max_(range_max), search_limit_(search_limit) {}

  struct Ctx {
    NumEnv env;
    Sequent hyps;  // a ≠ k̄ for each a ↦ k in env
  };

  void reserve_vars(std::int64_t m) { next_var_ = std::max<std::int64_t>(next_var_, m + 1); }

  // proof of {φ} ∪ hyps
  FiniteProof prove(const Formula& phi, const Ctx& c) {
    reserve_vars(phi.max_num_var());
    Verdict v = verdict(phi, c);
    if (!v.is_true()) throw NotTrue(print(phi) + " does not evaluate to True");
    switch (phi.kind()) {
      case FormulaKind::Eq: return prove_eq(phi, c);
      case FormulaKind::Neq: return prove_neq(phi, c);
      case FormulaKind::In:
      case FormulaKind::NotIn: return prove_membership(phi, c);
      case FormulaKind::And: {
        auto a = prove(phi.left(), c), b = prove(phi.right(), c);
        return node(RuleTag::AND, with_hyps({phi}, c), NoWitness{}, {std::move(a), std::move(b)});
      }
      case FormulaKind::Or: {
        bool left = verdict(phi.left(), c).is_true();
        Formula pick = left ? phi.left() : phi.right();
        Formula other = left ? phi.right() : phi.left();
        auto p = weaken(prove(pick, c), Sequent{other});
        return node(RuleTag::OR, with_hyps({phi}, c), NoWitness{}, {std::move(p)});
      }
      case FormulaKind::ExistsNum: return prove_exists(phi, c);
      case FormulaKind::ForallNum:
        if (auto nl = match_not_le(phi)) return prove_not_le(phi, *nl, c);
        if (auto b = match_bounded_forall(phi)) return prove_bounded_forall(phi, *b, c);
        throw NotSupported("unbounded universal " + print(phi) + "; use the Pi01 synthesizer");
      default: throw NotSupported("set quantifiers are outside the synthesizable fragment");
    }
  }

 private:
  const OracleTuple& oracles_;
  std::uint64_t range_max_;
  std::uint64_t search_limit_;
  std::int64_t next_var_ = 0;

  VarIndex fresh() { return static_cast<VarIndex>(next_var_++); }

  Verdict verdict(const Formula& f, const Ctx& c) const {
    EvalContext ctx;
    ctx.oracles = &oracles_;
    return eval_formula(f, ctx, c.env);
  }
  std::uint64_t value(const Term& t, const Ctx& c) const {
    auto v = to_u64(eval_term(t, c.env));
    if (!v) throw NotSupported("term value too large");
    return *v;
  }

  static Sequent with_hyps(std::vector<Formula> fs, const Ctx& c) { return Sequent(std::move(fs)).with(c.hyps); }

  static FiniteProof node(RuleTag t, Sequent concl, Witness w, std::vector<FiniteProof> ps) {
    return FiniteProof{t, std::move(concl), std::move(w), std::move(ps)};
  }
  static FiniteProof axiom(Sequent concl) { return node(RuleTag::AXIOM_T, std::move(concl), AxiomWitness{0}, {}); }

  static const Term& term_at(const Formula& alpha, const std::vector<std::size_t>& path) {
    const Term* t = &alpha.terms().at(path[0]);
    for (std::size_t i = 1; i < path.size(); ++i) t = &t->child(path[i]);
    return *t;
  }

  // From pa : ctx ∪ {α} and pe : ctx ∪ {s = to} (s the term at `path`), derive ctx ∪ {α[path := to]}.
  static std::pair<FiniteProof, Formula> rewrite(FiniteProof pa, const Formula& alpha,
                                                 const std::vector<std::size_t>& path, const Term& to,
                                                 FiniteProof pe, const Sequent& ctx) {
    const Term from = term_at(alpha, path);
    if (from == to) return {std::move(pa), alpha};
    auto idx = occurrence_index_at(alpha, from, path);
    auto a2 = replace_occurrences(alpha, from, to, {*idx});
    FiniteProof p = node(RuleTag::EQ, ctx.with(*a2), EqWitness{alpha, from, to, {*idx}}, {std::move(pa), std::move(pe)});
    return {std::move(p), *a2};
  }

  // {a = a} ∪ hyps
  FiniteProof refl(const Term& a, const Ctx& c) { return axiom(with_hyps({Formula::eq(a, a)}, c)); }

  // from p : {a = b} ∪ hyps derive {b = a} ∪ hyps
  FiniteProof sym(FiniteProof p, const Term& a, const Term& b, const Ctx& c) {
    if (a == b) return p;
    return rewrite(refl(a, c), Formula::eq(a, a), {0}, b, std::move(p), c.hyps).first;
  }

  // {m̄ + n̄ = (m+n)‾} ∪ hyps
  FiniteProof plus_num(std::uint64_t m, std::uint64_t n, const Ctx& c) {
    Term M = numeral(m);
    if (n == 0) return axiom(with_hyps({Formula::eq(Term::plus(M, Term::zero()), M)}, c));
    Term inner = Term::plus(M, numeral(n - 1));
    Formula alpha = Formula::eq(Term::plus(M, numeral(n)), Term::plus(inner, Term::one()));
    return rewrite(axiom(with_hyps({alpha}, c)), alpha, {1, 0}, numeral(m + n - 1),
                   plus_num(m, n - 1, c), c.hyps)
        .first;
  }

  // {m̄ · n̄ = (m·n)‾} ∪ hyps
  FiniteProof times_num(std::uint64_t m, std::uint64_t n, const Ctx& c) {
    Term M = numeral(m);
    if (n == 0) return axiom(with_hyps({Formula::eq(Term::times(M, Term::zero()), Term::zero())}, c));
    std::uint64_t p = m * (n - 1);
    Formula alpha = Formula::eq(Term::times(M, numeral(n)), Term::plus(Term::times(M, numeral(n - 1)), M));
    auto [p1, a1] = rewrite(axiom(with_hyps({alpha}, c)), alpha, {1, 0}, numeral(p), times_num(m, n - 1, c), c.hyps);
    return rewrite(std::move(p1), a1, {1}, numeral(p + m), plus_num(p, m, c), c.hyps).first;
  }

  // {exp(n̄) = (2^n)‾} ∪ hyps
  FiniteProof exp_num(std::uint64_t n, const Ctx& c) {
    if (n == 0) return axiom(with_hyps({Formula::eq(Term::exp(Term::zero()), numeral(1))}, c));
    Term e = Term::exp(numeral(n - 1));
    std::uint64_t p = std::uint64_t{1} << (n - 1);
    Formula alpha = Formula::eq(Term::exp(numeral(n)), Term::plus(e, e));
    FiniteProof pe = exp_num(n - 1, c);
    auto idx0 = occurrence_index_at(alpha, e, {1, 0});
    auto idx1 = occurrence_index_at(alpha, e, {1, 1});
    Formula a1 = *replace_occurrences(alpha, e, numeral(p), {*idx0, *idx1});
    FiniteProof step = node(RuleTag::EQ, with_hyps({a1}, c), EqWitness{alpha, e, numeral(p), {*idx0, *idx1}},
                            {axiom(with_hyps({alpha}, c)), std::move(pe)});
    return rewrite(std::move(step), a1, {1}, numeral(2 * p), plus_num(p, p, c), c.hyps).first;
  }

  // {t = v̄} ∪ hyps
  FiniteProof value_proof(const Term& t, const Ctx& c) {
    if (as_numeral(t)) return refl(t, c);
    std::uint64_t v = value(t, c);
    Term V = numeral(v);
    switch (t.kind()) {
      case TermKind::One: return axiom(with_hyps({Formula::eq(t, V)}, c));
      case TermKind::Var: {
        Sequent s = with_hyps({Formula::eq(t, V)}, c);
        if (!c.hyps.contains(Formula::neq(t, V))) throw UnboundVariable(print(t));
        return node(RuleTag::LEM, std::move(s), NoWitness{}, {});
      }
      case TermKind::Exp: {
        std::uint64_t a = value(t.left(), c);
        Formula alpha = Formula::eq(Term::exp(numeral(a)), V);
        return rewrite(exp_num(a, c), alpha, {0, 0}, t.left(), sym(value_proof(t.left(), c), t.left(), numeral(a), c),
                       c.hyps)
            .first;
      }
      default: {
        std::uint64_t a = value(t.left(), c), b = value(t.right(), c);
        bool plus = t.kind() == TermKind::Plus;
        Term A = numeral(a), B = numeral(b);
        Formula alpha = Formula::eq(plus ? Term::plus(A, B) : Term::times(A, B), V);
        FiniteProof p = plus ? plus_num(a, b, c) : times_num(a, b, c);
        auto [p1, a1] = rewrite(std::move(p), alpha, {0, 0}, t.left(),
                                sym(value_proof(t.left(), c), t.left(), A, c), c.hyps);
        return rewrite(std::move(p1), a1, {0, 1}, t.right(), sym(value_proof(t.right(), c), t.right(), B, c), c.hyps)
            .first;
      }
    }
  }

  // {v̄ = t} ∪ hyps
  FiniteProof value_sym(const Term& t, const Ctx& c) {
    return sym(value_proof(t, c), t, numeral(value(t, c)), c);
  }

  // {m̄ ≠ n̄} ∪ hyps for m ≠ n
  FiniteProof neq_num(std::uint64_t m, std::uint64_t n, const Ctx& c) {
    Formula goal = Formula::neq(numeral(m), numeral(n));
    if (m == 0 || n == 0) return axiom(with_hyps({goal}, c));
    Formula cut = Formula::eq(numeral(m - 1), numeral(n - 1));
    Sequent concl = with_hyps({goal}, c);
    return node(RuleTag::CUT, concl, CutWitness{cut},
                {axiom(concl.with(cut)), weaken(neq_num(m - 1, n - 1, c), Sequent{goal})});
  }

  FiniteProof prove_eq(const Formula& phi, const Ctx& c) {
    const Term &s = phi.lhs(), &t = phi.rhs();
    if (s == t) return refl(s, c);
    Formula a0 = Formula::eq(s, numeral(value(s, c)));
    return rewrite(value_proof(s, c), a0, {1}, t, value_sym(t, c), c.hyps).first;
  }

  FiniteProof prove_neq(const Formula& phi, const Ctx& c) {
    const Term &s = phi.lhs(), &t = phi.rhs();
    std::uint64_t a = value(s, c), b = value(t, c);
    Formula a0 = Formula::neq(numeral(a), numeral(b));
    auto [p1, a1] = rewrite(neq_num(a, b, c), a0, {0}, s, value_sym(s, c), c.hyps);
    return rewrite(std::move(p1), a1, {1}, t, value_sym(t, c), c.hyps).first;
  }

  FiniteProof prove_membership(const Formula& phi, const Ctx& c) {
    if (phi.set().kind != SetKind::Oracle) throw NotSupported("membership in a non-oracle set");
    std::uint64_t v = value(phi.lhs(), c);
    Formula a0 = Formula::make_atom(phi.kind(), {numeral(v)}, phi.set());
    RuleTag tag = phi.kind() == FormulaKind::In ? RuleTag::ORACLE_IN : RuleTag::ORACLE_NOTIN;
    FiniteProof leaf = node(tag, with_hyps({a0}, c), OracleWitness{v, phi.set().index}, {});
    return rewrite(std::move(leaf), a0, {0}, phi.lhs(), value_sym(phi.lhs(), c), c.hyps).first;
  }

  FiniteProof prove_exists(const Formula& phi, const Ctx& c) {
    VarIndex x = phi.bound_var();
    const Formula& body = phi.body();
    std::uint64_t limit = search_limit_;
    if (auto le = match_le(phi)) limit = value(le->upper, c);
    if (auto b = match_bounded_exists(phi)) limit = value(b->bound, c);
    for (std::uint64_t n = 0; n <= limit; ++n) {
      NumEnv env = c.env;
      env[x] = n;
      EvalContext ctx;
      ctx.oracles = &oracles_;
      if (!eval_formula(body, ctx, env).is_true()) continue;
      Formula inst = substitute(body, x, numeral(n));
      return node(RuleTag::EX0, with_hyps({phi}, c), TermWitness{numeral(n)}, {prove(inst, c)});
    }
    throw NotTrue("no witness up to " + std::to_string(limit) + " for " + print(phi));
  }

  // From q : S ∪ {N_src} derive S ∪ {N_tgt}, where N = ∀z(u ≠ l + z) and the
  // two differ by terms of equal value. eq_u : {u_src = u_tgt} ∪ hyps, eq_l likewise.
  FiniteProof transport_not_le(FiniteProof q, const Formula& src, const Formula& tgt, const Sequent& S,
                               std::optional<FiniteProof> eq_u, std::optional<FiniteProof> eq_l, const Ctx& c) {
    if (src == tgt) return q;
    VarIndex cv = fresh();
    Term cvar = Term::var(cv);
    Formula tgt_inst = substitute(tgt.body(), tgt.bound_var(), cvar);
    Formula src_neg = negate(src);
    Formula src_inst = substitute(src_neg.body(), src_neg.bound_var(), cvar);
    Sequent ctx = Sequent{src_inst}.with(c.hyps);
    Formula alpha = negate(src_inst);
    FiniteProof p = node(RuleTag::LEM, ctx.with(alpha), NoWitness{}, {});
    if (eq_u) std::tie(p, alpha) = rewrite(std::move(p), alpha, {0}, tgt_inst.lhs(), weaken(*eq_u, ctx), ctx);
    if (eq_l) std::tie(p, alpha) = rewrite(std::move(p), alpha, {1, 0}, tgt_inst.rhs().left(), weaken(*eq_l, ctx), ctx);
    // p : {tgt_inst, src_inst} ∪ hyps
    Sequent s_ex = Sequent{tgt_inst, src_neg}.with(c.hyps);
    FiniteProof ex = node(RuleTag::EX0, s_ex, TermWitness{cvar}, {std::move(p)});
    Sequent s_all = Sequent{tgt, src_neg}.with(c.hyps);
    FiniteProof all = node(RuleTag::ALL0, s_all, EigenWitness{cv}, {std::move(ex)});
    Sequent concl = S.with(tgt);
    return node(RuleTag::CUT, concl, CutWitness{src}, {weaken(std::move(q), Sequent{tgt}), weaken(std::move(all), S)});
  }

  // ∀z (s ≠ t + z) with value(t) > value(s)
  FiniteProof prove_not_le(const Formula& phi, const LeView& nl, const Ctx& c) {
    std::uint64_t b = value(nl.upper, c), m = value(nl.lower, c);
    if (b > range_max_) throw NotSupported("bound exceeds the range axioms of the base theory");
    Term B = numeral(b), Mt = numeral(m);
    Formula src = negate(make_le(Mt, B));
    // range axiom instance {src, m̄ = 0̄, …, m̄ = b̄}; cut every m̄ = k̄ away
    std::vector<Formula> fs{src};
    for (std::uint64_t k = 0; k <= b; ++k) fs.push_back(Formula::eq(Mt, numeral(k)));
    Sequent cur = Sequent(fs).with(c.hyps);
    FiniteProof q = axiom(cur);
    for (std::uint64_t k = 0; k <= b; ++k) {
      Formula e = Formula::eq(Mt, numeral(k));
      Sequent next = cur.without(e);
      q = node(RuleTag::CUT, next, CutWitness{e}, {std::move(q), weaken(neq_num(m, k, c), next)});
      cur = next;
    }
    std::optional<FiniteProof> eq_u, eq_l;
    if (!(nl.upper == B)) eq_u = value_sym(nl.upper, c);
    if (!(nl.lower == Mt)) eq_l = value_sym(nl.lower, c);
    return transport_not_le(std::move(q), src, phi, c.hyps, std::move(eq_u), std::move(eq_l), c);
  }

  FiniteProof prove_bounded_forall(const Formula& phi, const BoundedView& bv, const Ctx& c) {
    std::uint64_t b = value(bv.bound, c);
    if (b > range_max_) throw NotSupported("bound exceeds the range axioms of the base theory");
    VarIndex av = fresh();
    Term a = Term::var(av);
    Formula open = substitute(phi.body(), phi.bound_var(), a);  // N_t(a) ∨ θ(a)
    const Formula& n_t = open.left();
    const Formula& theta = open.right();
    Term B = numeral(b);
    Formula n_b = negate(bv.strict ? make_lt(a, B) : make_le(a, B));
    std::uint64_t end = bv.strict ? b : b + 1;

    // D_k = {N_b(a), θ(a)} ∪ hyps ∪ {a = ī : k ≤ i < end}
    std::vector<Formula> fs{n_b, theta};
    for (std::uint64_t k = 0; k < end; ++k) fs.push_back(Formula::eq(a, numeral(k)));
    Sequent cur = Sequent(fs).with(c.hyps);
    FiniteProof q = axiom(cur);
    for (std::uint64_t k = 0; k < end; ++k) {
      Formula e = Formula::eq(a, numeral(k));
      Sequent next = cur.without(e);
      Ctx inner = c;
      inner.env[av] = k;
      inner.hyps = c.hyps.with(Formula::neq(a, numeral(k)));
      FiniteProof branch = weaken(prove(theta, inner), next);
      q = node(RuleTag::CUT, next, CutWitness{e}, {std::move(q), std::move(branch)});
      cur = next;
    }
    // q : {N_b(a), θ(a)} ∪ hyps
    std::optional<FiniteProof> eq_u;
    if (!(bv.bound == B)) eq_u = value_sym(bv.bound, c);
    Sequent S = Sequent{theta}.with(c.hyps);
    FiniteProof r = transport_not_le(std::move(q), n_b, n_t, S, std::move(eq_u), std::nullopt, c);
    FiniteProof orp = node(RuleTag::OR, with_hyps({open}, c), NoWitness{}, {std::move(r)});
    return node(RuleTag::ALL0, with_hyps({phi}, c), EigenWitness{av}, {std::move(orp)});
  }
};

}  // namespace detail

struct SynthOptions {
  std::uint64_t range_max = kDefaultRangeAxioms;  // must not exceed the theory's range axioms
  std::uint64_t search_limit = 4096;              // witness search for unbounded ∃
};

// A finite proof of γ from a true member, checkable at ρ = ω against base_arithmetic().
inline FiniteProof synth_delta00(const Sequent& gamma, const OracleTuple& oracles, const SynthOptions& opt = {}) {
  for (const auto& f : gamma) {
    if (!f.is_sentence()) continue;
    EvalContext ctx;
    ctx.oracles = &oracles;
    if (!eval_formula(f, ctx).is_true()) continue;
    detail::Synthesizer s(oracles, opt.range_max, opt.search_limit);
    s.reserve_vars(gamma.max_num_var());
    FiniteProof p = s.prove(f, {});
    return weaken(p, gamma.without(f));
  }
  throw NotTrue("no member of " + print(gamma) + " evaluates to True");
}

// Generator tree for ∀xψ: root by the ω-rule (ordinal ω), child n the embedded
// synthesized proof of ψ(n̄). Instances up to spot_checks are evaluated first.
inline OmegaTree synth_pi01(const Formula& phi, const OracleTuple& oracles, std::uint64_t spot_checks = 16,
                            const SynthOptions& opt = {}) {
  if (phi.kind() != FormulaKind::ForallNum || !is_delta00(phi.body()))
    throw NotSupported("expected forall x. psi with psi bounded");
  if (!phi.is_sentence()) throw FormatError("Pi01 synthesis needs a sentence");
  VarIndex x = phi.bound_var();
  for (std::uint64_t n = 0; n <= spot_checks; ++n) {
    EvalContext ctx;
    ctx.oracles = &oracles;
    if (eval_formula(phi.body(), ctx, NumEnv{{x, Natural(n)}}).is_false()) throw CounterexampleFound(n);
  }
  struct State {
    std::mutex mu;
    std::map<std::uint64_t, std::shared_ptr<const FiniteProof>> cache;
  };
  auto st = std::make_shared<State>();
  Formula body = phi.body();
  OracleTuple ors = oracles;
  auto gen = [st, body, x, ors, opt, phi](const Position& p) -> std::optional<NodeDescriptor> {
    if (p.empty())
      return NodeDescriptor{Sequent{phi}, RuleTag::OMEGA, Arity::infinite(), Ordinal::omega(), OmegaWitness{phi}};
    std::shared_ptr<const FiniteProof> proof;
    {
      std::lock_guard lock(st->mu);
      auto it = st->cache.find(p[0]);
      if (it != st->cache.end()) proof = it->second;
    }
    if (!proof) {
      try {
        proof = std::make_shared<const FiniteProof>(synth_delta00(Sequent{substitute(body, x, numeral(p[0]))}, ors, opt));
      } catch (const NotTrue&) {
        return std::nullopt;
      }
      std::lock_guard lock(st->mu);
      st->cache.emplace(p[0], proof);
    }
    const FiniteProof* cur = proof.get();
    for (std::size_t i = 1; i < p.size(); ++i) {
      if (p[i] >= cur->premises.size()) return std::nullopt;
      cur = &cur->premises[p[i]];
    }
    return NodeDescriptor{cur->conclusion, cur->tag, Arity::finite(cur->premises.size()),
                          Ordinal::finite(cur->height()), cur->witness};
  };
  return OmegaTree::from_generator("synth-pi01", gen);
}

}  // namespace omegalogic
