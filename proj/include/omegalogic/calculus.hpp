#pragma once

// Finitary Tait calculus: rule instances, the bounded base-theory prover,
// rule and proof checking, and a weakening transformer.

#include <atomic>
#include <functional>
#include <shared_mutex>
#include <unordered_map>
#include <unordered_set>
#include <variant>

#include "eval.hpp"

namespace omegalogic {

enum class RuleTag : std::uint8_t {
  LEM,
  EQ,
  AND,
  OR,
  ALL0,
  EX0,
  ALL1,
  EX1,
  CUT,
  ORACLE_IN,
  ORACLE_NOTIN,
  AXIOM_T,
  OMEGA
};

inline const char* rule_name(RuleTag t) {
  static const char* names[] = {"LEM", "EQ",  "AND",       "OR",           "ALL0",    "EX0",  "ALL1",
                                "EX1", "CUT", "ORACLE_IN", "ORACLE_NOTIN", "AXIOM_T", "OMEGA"};
  return names[static_cast<int>(t)];
}

inline std::optional<RuleTag> rule_from_name(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(RuleTag::OMEGA); ++i)
    if (s == rule_name(static_cast<RuleTag>(i))) return static_cast<RuleTag>(i);
  return std::nullopt;
}

inline bool is_zero_premise(RuleTag t) {
  return t == RuleTag::LEM || t == RuleTag::ORACLE_IN || t == RuleTag::ORACLE_NOTIN || t == RuleTag::AXIOM_T;
}

// ρ ∈ ℕ ∪ {ω}
struct CutRank {
  std::uint32_t value = 0;
  bool infinite = false;
  static CutRank finite(std::uint32_t n) { return {n, false}; }
  static CutRank omega() { return {0, true}; }
  bool admits(std::size_t formula_rank) const { return infinite || formula_rank < value; }
  friend bool operator<=(const CutRank& a, const CutRank& b) { return b.infinite || (!a.infinite && a.value <= b.value); }
  friend bool operator==(const CutRank&, const CutRank&) = default;
};

inline std::string to_string(const CutRank& r) { return r.infinite ? "omega" : std::to_string(r.value); }
inline CutRank parse_cut_rank(const std::string& s) {
  if (s == "omega" || s == "w" || s == "inf") return CutRank::omega();
  try {
    std::size_t used = 0;
    unsigned long v = std::stoul(s, &used);
    if (used == s.size()) return CutRank::finite(static_cast<std::uint32_t>(v));
  } catch (const std::exception&) {
  }
  throw FormatError("bad cut rank '" + s + "'");
}

// ---------------------------------------------------------------- witnesses

struct NoWitness {
  friend bool operator==(const NoWitness&, const NoWitness&) = default;
};
struct EigenWitness {
  VarIndex var = 0;
  friend bool operator==(const EigenWitness&, const EigenWitness&) = default;
};
struct TermWitness {
  Term term;
  friend bool operator==(const TermWitness&, const TermWitness&) = default;
};
struct SetWitness {
  SetRef set;
  friend bool operator==(const SetWitness&, const SetWitness&) = default;
};
struct CutWitness {
  Formula formula;
  friend bool operator==(const CutWitness&, const CutWitness&) = default;
};
struct OracleWitness {
  std::uint64_t k = 0;
  std::uint32_t i = 0;
  friend bool operator==(const OracleWitness&, const OracleWitness&) = default;
};
// α' arises from α by replacing the listed occurrences of `from` by `to`.
// Occurrences are numbered in preorder over α's terms (left to right); a
// matched occurrence is not searched further.
struct EqWitness {
  Formula alpha;
  Term from;
  Term to;
  std::vector<std::size_t> occurrences;
  friend bool operator==(const EqWitness&, const EqWitness&) = default;
};
struct AxiomWitness {
  std::uint32_t depth = 0;
  friend bool operator==(const AxiomWitness&, const AxiomWitness&) = default;
};
struct OmegaWitness {
  Formula principal;
  friend bool operator==(const OmegaWitness&, const OmegaWitness&) = default;
};

using Witness = std::variant<NoWitness, EigenWitness, TermWitness, SetWitness, CutWitness, OracleWitness, EqWitness,
                             AxiomWitness, OmegaWitness>;

struct RuleInstance {
  RuleTag tag = RuleTag::LEM;
  std::vector<Sequent> premises;
  Sequent conclusion;
  Witness witness;
};

// ---------------------------------------------------------------- EQ occurrences

namespace detail {
inline Term replace_in_term(const Term& t, const Term& from, const Term& to, const std::vector<std::size_t>& occ,
                            std::size_t& counter, std::size_t& replaced) {
  if (t == from) {
    std::size_t idx = counter++;
    if (std::binary_search(occ.begin(), occ.end(), idx)) {
      ++replaced;
      return to;
    }
    return t;
  }
  switch (t.kind()) {
    case TermKind::Plus:
    case TermKind::Times: {
      Term l = replace_in_term(t.left(), from, to, occ, counter, replaced);
      Term r = replace_in_term(t.right(), from, to, occ, counter, replaced);
      return t.kind() == TermKind::Plus ? Term::plus(l, r) : Term::times(l, r);
    }
    case TermKind::Exp: return Term::exp(replace_in_term(t.left(), from, to, occ, counter, replaced));
    default: return t;
  }
}

inline void count_in_term(const Term& t, const Term& from, std::size_t& counter) {
  if (t == from) {
    ++counter;
    return;
  }
  for (std::size_t i = 0; i < t.arity(); ++i) count_in_term(t.child(i), from, counter);
}
}  // namespace detail

inline std::size_t count_occurrences(const Formula& alpha, const Term& from) {
  std::size_t n = 0;
  for (const auto& t : alpha.terms()) detail::count_in_term(t, from, n);
  return n;
}

// nullopt if some listed occurrence does not exist or the list is empty
inline std::optional<Formula> replace_occurrences(const Formula& alpha, const Term& from, const Term& to,
                                                  std::vector<std::size_t> occ) {
  if (!alpha.is_atomic() || occ.empty()) return std::nullopt;
  std::sort(occ.begin(), occ.end());
  occ.erase(std::unique(occ.begin(), occ.end()), occ.end());
  std::size_t counter = 0, replaced = 0;
  std::vector<Term> ts;
  for (const auto& t : alpha.terms()) ts.push_back(detail::replace_in_term(t, from, to, occ, counter, replaced));
  if (replaced != occ.size()) return std::nullopt;
  return Formula::make_atom(alpha.kind(), std::move(ts), alpha.set());
}

// Preorder index (among occurrences of `from`) of the occurrence reached by
// `path`: path[0] selects the atom's term, later entries select children.
inline std::optional<std::size_t> occurrence_index_at(const Formula& alpha, const Term& from,
                                                      const std::vector<std::size_t>& path) {
  if (path.empty() || path[0] >= alpha.terms().size()) return std::nullopt;
  std::size_t counter = 0;
  for (std::size_t i = 0; i < path[0]; ++i) detail::count_in_term(alpha.terms()[i], from, counter);
  const Term* cur = &alpha.terms()[path[0]];
  for (std::size_t d = 1; d <= path.size(); ++d) {
    if (*cur == from) return d == path.size() ? std::optional<std::size_t>(counter) : std::nullopt;
    if (d == path.size()) return std::nullopt;
    std::size_t c = path[d];
    if (c >= cur->arity()) return std::nullopt;
    for (std::size_t j = 0; j < c; ++j) detail::count_in_term(cur->child(j), from, counter);
    cur = &cur->child(c);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- matching for open axioms

namespace detail {
// Pattern free variables (number and set) are metavariables; bound variables
// correspond positionally (α-equivalence).
struct Matcher {
  std::map<VarIndex, Term> num;
  std::map<VarIndex, SetRef> set;
  std::vector<std::pair<VarIndex, VarIndex>> bound_num;  // pattern var -> target var, innermost last
  std::vector<std::pair<VarIndex, VarIndex>> bound_set;

  static std::optional<VarIndex> lookup(const std::vector<std::pair<VarIndex, VarIndex>>& b, VarIndex v) {
    for (auto it = b.rbegin(); it != b.rend(); ++it)
      if (it->first == v) return it->second;
    return std::nullopt;
  }
  static bool target_bound(const std::vector<std::pair<VarIndex, VarIndex>>& b, VarIndex v) {
    for (auto it = b.rbegin(); it != b.rend(); ++it)
      if (it->second == v) return true;
    return false;
  }

  bool term(const Term& p, const Term& t) {
    if (p.kind() == TermKind::Var) {
      if (auto q = lookup(bound_num, p.var_index()))
        return t.kind() == TermKind::Var && t.var_index() == *q;
      for (VarIndex v : t.vars())
        if (target_bound(bound_num, v)) return false;
      auto it = num.find(p.var_index());
      if (it != num.end()) return it->second == t;
      num.emplace(p.var_index(), t);
      return true;
    }
    if (p.kind() != t.kind()) return false;
    if (p.closed()) return p == t;
    for (std::size_t i = 0; i < p.arity(); ++i)
      if (!term(p.child(i), t.child(i))) return false;
    return true;
  }

  bool setref(SetRef p, SetRef t) {
    if (p.kind != SetKind::Var) return p == t;
    if (auto q = lookup(bound_set, p.index)) return t.kind == SetKind::Var && t.index == *q;
    if (t.kind == SetKind::Var && target_bound(bound_set, t.index)) return false;
    auto it = set.find(p.index);
    if (it != set.end()) return it->second == t;
    set.emplace(p.index, t);
    return true;
  }

  bool formula(const Formula& p, const Formula& t) {
    if (p.kind() != t.kind()) return false;
    if (p.is_sentence() && bound_num.empty() && bound_set.empty()) return p == t;
    if (p.is_atomic()) {
      for (std::size_t i = 0; i < p.terms().size(); ++i)
        if (!term(p.terms()[i], t.terms()[i])) return false;
      return !p.is_membership() || setref(p.set(), t.set());
    }
    if (p.is_binary()) return formula(p.left(), t.left()) && formula(p.right(), t.right());
    auto& stack = p.is_set_quantifier() ? bound_set : bound_num;
    stack.emplace_back(p.bound_var(), t.bound_var());
    bool ok = formula(p.body(), t.body());
    stack.pop_back();
    return ok;
  }
};

// Does some substitution instance of `axiom` sit inside γ?
inline bool instance_within(const std::vector<Formula>& axiom, std::size_t i, Matcher m, const Sequent& gamma) {
  if (i == axiom.size()) return true;
  for (const auto& g : gamma) {
    Matcher next = m;
    if (next.formula(axiom[i], g) && instance_within(axiom, i + 1, next, gamma)) return true;
  }
  return false;
}
}  // namespace detail

// ---------------------------------------------------------------- theories

// A theory given by finitely many axiom sequents (free variables schematic),
// realized by depth-bounded cut-free backward search. `true_atomic` adds every
// sequent containing a true closed =/≠ atom as an axiom.
class TheorySpec {
 public:
  TheorySpec() : memo_(std::make_shared<Memo>()) {}
  TheorySpec(std::vector<Sequent> axioms, std::uint32_t search_depth, bool true_atomic = false)
      : axioms_(std::move(axioms)), depth_(search_depth), true_atomic_(true_atomic), memo_(std::make_shared<Memo>()) {
    for (std::size_t i = 0; i < axioms_.size(); ++i) {
      const auto& a = axioms_[i];
      bool open = false;
      for (const auto& f : a) open = open || !f.is_sentence();
      if (!open && a.size() == 1)
        ground_singletons_.insert(a[0]);
      else if (!open)
        ground_multi_.push_back(i);
      else
        open_.push_back(i);
    }
  }

  const std::vector<Sequent>& axioms() const noexcept { return axioms_; }
  std::uint32_t search_depth() const noexcept { return depth_; }
  bool true_atomic() const noexcept { return true_atomic_; }

  // γ contains (an instance of) an axiom; no search.
  bool axiom_match(const Sequent& g, const OracleTuple* oracles = nullptr) const {
    for (const auto& f : g) {
      if (ground_singletons_.count(f)) return true;
      if (true_atomic_ && f.is_sentence() && (f.kind() == FormulaKind::Eq || f.kind() == FormulaKind::Neq)) {
        EvalContext ctx;
        if (eval_formula(f, ctx).is_true()) return true;
      }
      if (oracles && f.is_membership() && f.set().kind == SetKind::Oracle && f.set().index < oracles->size()) {
        if (auto n = as_numeral(f.lhs())) {
          bool mem = oracles->sets[f.set().index].contains(*n);
          if (mem == (f.kind() == FormulaKind::In)) return true;
        }
      }
    }
    for (std::size_t i : ground_multi_)
      if (axioms_[i].subset_of(g)) return true;
    for (std::size_t i : open_)
      if (detail::instance_within(axioms_[i].formulas(), 0, {}, g)) return true;
    return false;
  }

  // Smallest search depth ≤ search_depth proving γ, if any. With oracles the
  // atomic diagram of the tuple counts as axioms (the theory T|A).
  std::optional<std::uint32_t> proves_at(const Sequent& g, const OracleTuple* oracles = nullptr) const {
    for (std::uint32_t d = 0; d <= depth_; ++d)
      if (search(g, d, oracles)) return d;
    return std::nullopt;
  }
  bool proves(const Sequent& g, const OracleTuple* oracles = nullptr) const { return proves_at(g, oracles).has_value(); }

 private:
  struct Key {
    Sequent s;
    std::uint32_t depth;
    std::string oracles;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept {
      return detail::mix(detail::mix(k.s.hash(), k.depth), std::hash<std::string>{}(k.oracles));
    }
  };
  struct Memo {
    std::shared_mutex mu;
    std::unordered_map<Key, bool, KeyHash> table;
  };

  static bool lem(const Sequent& g) {
    for (const auto& f : g)
      if (f.is_atomic() && g.contains(negate(f))) return true;
    return false;
  }

  static std::vector<Term> witness_candidates(const Sequent& g, VarIndex bound) {
    std::vector<Term> out{Term::zero(), Term::one(), Term::var(bound)};
    std::function<void(const Term&)> add = [&](const Term& t) {
      if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
      for (std::size_t i = 0; i < t.arity(); ++i) add(t.child(i));
    };
    std::function<void(const Formula&)> walk = [&](const Formula& f) {
      for (const auto& t : f.terms()) add(t);
      for (const auto& c : f.children()) walk(c);
    };
    for (const auto& f : g) walk(f);
    if (out.size() > 24) out.resize(24);
    return out;
  }

  bool search(const Sequent& g, std::uint32_t d, const OracleTuple* oracles) const {
    if (axiom_match(g, oracles) || lem(g)) return true;
    if (d == 0) return false;
    Key key{g, d, oracles ? oracles->fingerprint() : std::string()};
    {
      std::shared_lock lock(memo_->mu);
      auto it = memo_->table.find(key);
      if (it != memo_->table.end()) return it->second;
    }
    bool result = expand(g, d, oracles);
    std::unique_lock lock(memo_->mu);
    memo_->table.emplace(std::move(key), result);
    return result;
  }

  bool expand(const Sequent& g, std::uint32_t d, const OracleTuple* oracles) const {
    for (const auto& f : g) {
      switch (f.kind()) {
        case FormulaKind::And:
          if (search(g.with(f.left()), d - 1, oracles) && search(g.with(f.right()), d - 1, oracles)) return true;
          break;
        case FormulaKind::Or:
          if (search(g.with(f.left()).with(f.right()), d - 1, oracles)) return true;
          break;
        case FormulaKind::ForallNum: {
          VarIndex v = f.bound_var();
          if (g.has_free_var(v)) v = static_cast<VarIndex>(g.max_num_var() + 1);
          if (search(g.with(substitute(f.body(), f.bound_var(), Term::var(v))), d - 1, oracles)) return true;
          break;
        }
        case FormulaKind::ExistsNum:
          for (const auto& t : witness_candidates(g, f.bound_var()))
            if (search(g.with(substitute(f.body(), f.bound_var(), t)), d - 1, oracles)) return true;
          break;
        case FormulaKind::ForallSet: {
          VarIndex V = f.bound_var();
          if (g.has_free_set_var(V)) V = static_cast<VarIndex>(g.max_set_var() + 1);
          if (search(g.with(substitute_set(f.body(), f.bound_var(), SetRef::var(V))), d - 1, oracles)) return true;
          break;
        }
        case FormulaKind::ExistsSet: {
          std::set<SetRef> cands{SetRef::var(f.bound_var())};
          for (VarIndex v : g.free_set_vars()) cands.insert(SetRef::var(v));
          if (oracles)
            for (VarIndex i = 0; i < oracles->size(); ++i) cands.insert(SetRef::oracle(i));
          for (const auto& s : cands)
            if (search(g.with(substitute_set(f.body(), f.bound_var(), s)), d - 1, oracles)) return true;
          break;
        }
        default: break;
      }
    }
    return false;
  }

  std::vector<Sequent> axioms_;
  std::uint32_t depth_ = 0;
  bool true_atomic_ = false;
  std::unordered_set<Formula> ground_singletons_;
  std::vector<std::size_t> ground_multi_;
  std::vector<std::size_t> open_;
  std::shared_ptr<Memo> memo_;
};

inline bool base_proves(const TheorySpec& theory, const Sequent& g, const OracleTuple* oracles = nullptr) {
  return theory.proves(g, oracles);
}

// ---------------------------------------------------------------- rule checking

namespace detail {
inline std::vector<Sequent> contexts_for(const Sequent& concl, const Formula& principal) {
  return {concl, concl.without(principal)};
}

inline bool check_oracle(const RuleInstance& r, const OracleTuple& oracles) {
  if (!r.premises.empty()) return false;
  bool want_in = r.tag == RuleTag::ORACLE_IN;
  auto ok = [&](const Formula& f, std::optional<OracleWitness> w) {
    if (f.kind() != (want_in ? FormulaKind::In : FormulaKind::NotIn)) return false;
    if (f.set().kind != SetKind::Oracle || f.set().index >= oracles.size()) return false;
    auto n = as_numeral(f.lhs());
    if (!n) return false;
    if (w && (w->k != *n || w->i != f.set().index)) return false;
    return oracles.sets[f.set().index].contains(*n) == want_in;
  };
  if (auto* w = std::get_if<OracleWitness>(&r.witness)) {
    Formula atom = want_in ? Formula::in(numeral(w->k), SetRef::oracle(w->i))
                           : Formula::notin(numeral(w->k), SetRef::oracle(w->i));
    return r.conclusion.contains(atom) && ok(atom, *w);
  }
  for (const auto& f : r.conclusion)
    if (ok(f, std::nullopt)) return true;
  return false;
}
}  // namespace detail

inline bool check_rule(const RuleInstance& r, const CutRank& rho, const TheorySpec& theory,
                       const OracleTuple& oracles) {
  const Sequent& concl = r.conclusion;
  const auto& ps = r.premises;
  switch (r.tag) {
    case RuleTag::LEM:
      if (!ps.empty()) return false;
      for (const auto& f : concl)
        if (f.is_atomic() && concl.contains(negate(f))) return true;
      return false;

    case RuleTag::ORACLE_IN:
    case RuleTag::ORACLE_NOTIN: return detail::check_oracle(r, oracles);

    case RuleTag::AXIOM_T:
      if (!ps.empty()) return false;
      return base_proves(theory, concl, &oracles);

    case RuleTag::AND:
      if (ps.size() != 2) return false;
      for (const auto& f : concl) {
        if (f.kind() != FormulaKind::And) continue;
        for (const auto& ctx : detail::contexts_for(concl, f))
          if (ps[0] == ctx.with(f.left()) && ps[1] == ctx.with(f.right())) return true;
      }
      return false;

    case RuleTag::OR:
      if (ps.size() != 1) return false;
      for (const auto& f : concl) {
        if (f.kind() != FormulaKind::Or) continue;
        for (const auto& ctx : detail::contexts_for(concl, f))
          if (ps[0] == ctx.with(f.left()).with(f.right())) return true;
      }
      return false;

    case RuleTag::ALL0:
    case RuleTag::EX0: {
      if (ps.size() != 1) return false;
      bool universal = r.tag == RuleTag::ALL0;
      FormulaKind want = universal ? FormulaKind::ForallNum : FormulaKind::ExistsNum;
      for (const auto& f : concl) {
        if (f.kind() != want) continue;
        for (const auto& ctx : detail::contexts_for(concl, f)) {
          if (!ctx.subset_of(ps[0])) continue;
          std::vector<Term> cands;
          if (universal) {
            if (auto* w = std::get_if<EigenWitness>(&r.witness)) {
              cands.push_back(Term::var(w->var));
            } else {
              for (const auto& th : ps[0])
                if (auto m = match_instance(f.body(), f.bound_var(), th))
                  cands.push_back(m->vacuous ? Term::var(static_cast<VarIndex>(concl.max_num_var() + 1)) : m->term);
            }
          } else {
            if (auto* w = std::get_if<TermWitness>(&r.witness)) {
              cands.push_back(w->term);
            } else {
              for (const auto& th : ps[0])
                if (auto m = match_instance(f.body(), f.bound_var(), th)) cands.push_back(m->term);
            }
          }
          for (const auto& t : cands) {
            if (universal && (t.kind() != TermKind::Var || concl.has_free_var(t.var_index()))) continue;
            if (ps[0] == ctx.with(substitute(f.body(), f.bound_var(), t))) return true;
          }
        }
      }
      return false;
    }

    case RuleTag::ALL1:
    case RuleTag::EX1: {
      if (ps.size() != 1) return false;
      bool universal = r.tag == RuleTag::ALL1;
      FormulaKind want = universal ? FormulaKind::ForallSet : FormulaKind::ExistsSet;
      for (const auto& f : concl) {
        if (f.kind() != want) continue;
        for (const auto& ctx : detail::contexts_for(concl, f)) {
          if (!ctx.subset_of(ps[0])) continue;
          std::vector<SetRef> cands;
          if (universal) {
            if (auto* w = std::get_if<EigenWitness>(&r.witness))
              cands.push_back(SetRef::var(w->var));
            else
              for (const auto& th : ps[0])
                if (auto m = match_set_instance(f.body(), f.bound_var(), th))
                  cands.push_back(m->vacuous ? SetRef::var(static_cast<VarIndex>(concl.max_set_var() + 1)) : m->set);
          } else {
            if (auto* w = std::get_if<SetWitness>(&r.witness))
              cands.push_back(w->set);
            else
              for (const auto& th : ps[0])
                if (auto m = match_set_instance(f.body(), f.bound_var(), th)) cands.push_back(m->set);
          }
          for (const auto& s : cands) {
            if (universal && (s.kind != SetKind::Var || concl.has_free_set_var(s.index))) continue;
            if (!universal && s.kind == SetKind::ModelConst) continue;
            if (ps[0] == ctx.with(substitute_set(f.body(), f.bound_var(), s))) return true;
          }
        }
      }
      return false;
    }

    case RuleTag::CUT: {
      if (ps.size() != 2) return false;
      std::vector<Formula> cands;
      if (auto* w = std::get_if<CutWitness>(&r.witness)) {
        cands.push_back(w->formula);
      } else {
        for (const auto& f : ps[0])
          if (!concl.contains(f)) cands.push_back(f);
        if (cands.empty())  // cut formula already in the conclusion
          for (const auto& f : ps[1])
            if (!concl.contains(f)) cands.push_back(negate(f));
      }
      for (const auto& phi : cands) {
        if (!rho.admits(phi.rank())) continue;
        Formula neg = negate(phi);
        if ((ps[0] == concl.with(phi) && ps[1] == concl.with(neg)) ||
            (ps[0] == concl.with(neg) && ps[1] == concl.with(phi)))
          return true;
      }
      return false;
    }

    case RuleTag::EQ: {
      if (ps.size() != 2) return false;
      auto* w = std::get_if<EqWitness>(&r.witness);
      if (!w || !w->alpha.is_atomic()) return false;
      auto alpha2 = replace_occurrences(w->alpha, w->from, w->to, w->occurrences);
      if (!alpha2 || !concl.contains(*alpha2)) return false;
      Formula eq = Formula::eq(w->from, w->to);
      for (const auto& ctx : detail::contexts_for(concl, *alpha2))
        if (ps[0] == ctx.with(w->alpha) && ps[1] == ctx.with(eq)) return true;
      return false;
    }

    case RuleTag::OMEGA: return false;  // infinitary; see omegaproof
  }
  return false;
}

// ---------------------------------------------------------------- finite proofs

struct FiniteProof {
  RuleTag tag = RuleTag::LEM;
  Sequent conclusion;
  Witness witness;
  std::vector<FiniteProof> premises;

  std::size_t height() const {
    std::size_t h = 0;
    for (const auto& p : premises) h = std::max(h, p.height() + 1);
    return h;
  }
  std::size_t node_count() const {
    std::size_t n = 1;
    for (const auto& p : premises) n += p.node_count();
    return n;
  }
  RuleInstance instance() const {
    RuleInstance r{tag, {}, conclusion, witness};
    for (const auto& p : premises) r.premises.push_back(p.conclusion);
    return r;
  }
  template <class F>
  void for_each(F&& f) const {
    f(*this);
    for (const auto& p : premises) p.for_each(f);
  }
};

inline bool check_proof(const FiniteProof& p, const CutRank& rho, const TheorySpec& theory,
                        const OracleTuple& oracles) {
  if (!check_rule(p.instance(), rho, theory, oracles)) return false;
  for (const auto& c : p.premises)
    if (!check_proof(c, rho, theory, oracles)) return false;
  return true;
}

namespace detail {
inline Sequent subst_sequent(const Sequent& s, VarIndex v, const Term& t) {
  std::vector<Formula> fs;
  for (const auto& f : s) fs.push_back(substitute(f, v, t));
  return Sequent(std::move(fs));
}

inline Witness subst_witness(const Witness& w, VarIndex v, const Term& t) {
  if (auto* tw = std::get_if<TermWitness>(&w)) return TermWitness{substitute_term(tw->term, v, t)};
  if (auto* cw = std::get_if<CutWitness>(&w)) return CutWitness{substitute(cw->formula, v, t)};
  if (auto* ew = std::get_if<EqWitness>(&w))
    return EqWitness{substitute(ew->alpha, v, t), substitute_term(ew->from, v, t), substitute_term(ew->to, v, t),
                     ew->occurrences};
  return w;
}

// Rename a free first-order variable throughout a proof (used to refresh eigenvariables).
inline FiniteProof rename_var(const FiniteProof& p, VarIndex from, VarIndex to) {
  FiniteProof q;
  q.tag = p.tag;
  Term tt = Term::var(to);
  q.conclusion = subst_sequent(p.conclusion, from, tt);
  q.witness = subst_witness(p.witness, from, tt);
  if (auto* e = std::get_if<EigenWitness>(&p.witness); e && p.tag == RuleTag::ALL0 && e->var == from)
    q.witness = EigenWitness{to};
  for (const auto& c : p.premises) q.premises.push_back(rename_var(c, from, to));
  return q;
}
}  // namespace detail

// Add δ to every sequent of p, refreshing eigenvariables that clash with δ.
inline FiniteProof weaken(const FiniteProof& p, const Sequent& delta) {
  FiniteProof cur = p;
  if (cur.tag == RuleTag::ALL0) {
    if (auto* e = std::get_if<EigenWitness>(&cur.witness); e && delta.has_free_var(e->var)) {
      std::int64_t m = std::max(delta.max_num_var(), cur.conclusion.max_num_var());
      std::function<void(const FiniteProof&)> scan = [&](const FiniteProof& n) {
        m = std::max(m, n.conclusion.max_num_var());
        for (const auto& c : n.premises) scan(c);
      };
      scan(cur);
      VarIndex fresh = static_cast<VarIndex>(m + 1);
      VarIndex old = e->var;
      for (auto& c : cur.premises) c = detail::rename_var(c, old, fresh);
      cur.witness = EigenWitness{fresh};
    }
  }
  FiniteProof out;
  out.tag = cur.tag;
  out.conclusion = cur.conclusion.with(delta);
  out.witness = cur.witness;
  for (const auto& c : cur.premises) out.premises.push_back(weaken(c, delta));
  return out;
}

}  // namespace omegalogic
