#pragma once

// Truth in the standard model: exact on bounded patterns, three-valued with a
// cutoff on unbounded first-order quantifiers.

#include <numeric>
#include <string>

#include "syntax.hpp"
#include "text.hpp"

namespace omegalogic {

// Ultimately periodic subset of ℕ.
class UPSet {
 public:
  UPSet() : period_{false} {}
  UPSet(std::vector<bool> prefix, std::vector<bool> period) : prefix_(std::move(prefix)), period_(std::move(period)) {
    if (period_.empty()) throw FormatError("UPSet period must be nonempty");
  }

  static UPSet empty() { return UPSet({}, {false}); }
  static UPSet all() { return UPSet({}, {true}); }
  static UPSet evens() { return UPSet({}, {true, false}); }
  static UPSet odds() { return UPSet({}, {false, true}); }
  static UPSet finite(const std::vector<std::uint64_t>& elems) {
    std::uint64_t m = 0;
    for (auto e : elems) m = std::max(m, e + 1);
    std::vector<bool> p(m, false);
    for (auto e : elems) p[e] = true;
    return UPSet(std::move(p), {false});
  }
  static UPSet singleton(std::uint64_t n) { return finite({n}); }

  const std::vector<bool>& prefix() const noexcept { return prefix_; }
  const std::vector<bool>& period() const noexcept { return period_; }

  bool contains(std::uint64_t n) const {
    if (n < prefix_.size()) return prefix_[n];
    return period_[(n - prefix_.size()) % period_.size()];
  }
  bool contains(const Natural& n) const {
    if (auto s = to_u64(n)) return contains(*s);
    Natural off = n - prefix_.size();
    return period_[static_cast<std::size_t>(off % period_.size())];
  }

  UPSet complement() const { return combine(*this, *this, [](bool a, bool) { return !a; }); }
  UPSet unite(const UPSet& o) const { return combine(*this, o, [](bool a, bool b) { return a || b; }); }
  UPSet intersect(const UPSet& o) const { return combine(*this, o, [](bool a, bool b) { return a && b; }); }

  // extensional equality
  friend bool operator==(const UPSet& a, const UPSet& b) {
    std::size_t pre = std::max(a.prefix_.size(), b.prefix_.size());
    std::size_t per = std::lcm(a.period_.size(), b.period_.size());
    for (std::size_t n = 0; n < pre + per; ++n)
      if (a.contains(static_cast<std::uint64_t>(n)) != b.contains(static_cast<std::uint64_t>(n))) return false;
    return true;
  }

  std::string describe() const {
    std::string s = "[";
    for (bool b : prefix_) s += b ? '1' : '0';
    s += "](";
    for (bool b : period_) s += b ? '1' : '0';
    return s + ")";
  }

 private:
  template <class Op>
  static UPSet combine(const UPSet& a, const UPSet& b, Op op) {
    std::size_t pre = std::max(a.prefix_.size(), b.prefix_.size());
    std::size_t per = std::lcm(a.period_.size(), b.period_.size());
    std::vector<bool> p(pre), q(per);
    for (std::size_t n = 0; n < pre; ++n) p[n] = op(a.contains(std::uint64_t(n)), b.contains(std::uint64_t(n)));
    for (std::size_t n = 0; n < per; ++n)
      q[n] = op(a.contains(std::uint64_t(pre + n)), b.contains(std::uint64_t(pre + n)));
    return UPSet(std::move(p), std::move(q));
  }
  std::vector<bool> prefix_;
  std::vector<bool> period_;
};

struct OracleTuple {
  std::vector<UPSet> sets;

  std::size_t size() const noexcept { return sets.size(); }
  bool is_prefix_of(const OracleTuple& o) const {
    if (sets.size() > o.sets.size()) return false;
    for (std::size_t i = 0; i < sets.size(); ++i)
      if (!(sets[i] == o.sets[i])) return false;
    return true;
  }
  // {⟨0,n⟩} ∪ {⟨k,i+1⟩ : k ∈ A_i}, restricted to components ≤ bound.
  std::vector<Natural> encode_tuple(std::uint64_t bound) const {
    std::vector<Natural> out;
    out.push_back(cantor_pair(0, sets.size()));
    for (std::size_t i = 0; i < sets.size(); ++i)
      for (std::uint64_t k = 0; k <= bound; ++k)
        if (sets[i].contains(k)) out.push_back(cantor_pair(k, i + 1));
    std::sort(out.begin(), out.end());
    return out;
  }
  // stable text used as a memo key
  std::string fingerprint() const {
    std::string s;
    for (const auto& a : sets) s += a.describe() + ";";
    return s;
  }
};

enum class Truth : std::uint8_t { True, False, Unknown };

struct Verdict {
  Truth value = Truth::Unknown;
  std::string reason;

  static Verdict yes() { return {Truth::True, {}}; }
  static Verdict no() { return {Truth::False, {}}; }
  static Verdict unknown(std::string why) { return {Truth::Unknown, std::move(why)}; }
  static Verdict of(bool b) { return b ? yes() : no(); }
  bool is_true() const noexcept { return value == Truth::True; }
  bool is_false() const noexcept { return value == Truth::False; }
  bool is_unknown() const noexcept { return value == Truth::Unknown; }
  Verdict flipped() const {
    if (value == Truth::True) return no();
    if (value == Truth::False) return yes();
    return *this;
  }
};

inline std::string to_string(const Verdict& v) {
  switch (v.value) {
    case Truth::True: return "True";
    case Truth::False: return "False";
    default: return "Unknown(" + v.reason + ")";
  }
}

using NumEnv = std::map<VarIndex, Natural>;
using SetEnv = std::map<VarIndex, UPSet>;

// Exponents above this are refused rather than computed.
inline constexpr std::uint64_t kMaxExponent = 1u << 16;

inline Natural eval_term(const Term& t, const NumEnv& env) {
  switch (t.kind()) {
    case TermKind::Zero: return 0;
    case TermKind::One: return 1;
    case TermKind::Var: {
      auto it = env.find(t.var_index());
      if (it == env.end()) throw UnboundVariable("x" + std::to_string(t.var_index()));
      return it->second;
    }
    case TermKind::Plus: return eval_term(t.left(), env) + eval_term(t.right(), env);
    case TermKind::Times: return eval_term(t.left(), env) * eval_term(t.right(), env);
    case TermKind::Exp: {
      Natural e = eval_term(t.left(), env);
      if (e > kMaxExponent) throw ValueTooLarge("exp of " + e.str());
      Natural r = 1;
      r <<= static_cast<unsigned>(e);
      return r;
    }
  }
  return 0;
}

struct EvalContext {
  const OracleTuple* oracles = nullptr;
  SetEnv setenv;
  const std::vector<UPSet>* model_consts = nullptr;  // interpretations of C_i
  const std::vector<UPSet>* set_pool = nullptr;      // range of set quantifiers, if any
  std::uint64_t cutoff = 64;
  // bounded quantifiers with more instances than this are not expanded
  std::uint64_t max_bounded = 1u << 16;
};

namespace detail {
inline const UPSet& resolve_set(SetRef s, const EvalContext& ctx) {
  switch (s.kind) {
    case SetKind::Var: {
      auto it = ctx.setenv.find(s.index);
      if (it == ctx.setenv.end()) throw UnresolvedSymbol("X" + std::to_string(s.index));
      return it->second;
    }
    case SetKind::Oracle:
      if (!ctx.oracles || s.index >= ctx.oracles->size()) throw UnresolvedSymbol("O" + std::to_string(s.index));
      return ctx.oracles->sets[s.index];
    case SetKind::ModelConst:
      if (!ctx.model_consts || s.index >= ctx.model_consts->size())
        throw UnresolvedSymbol("C" + std::to_string(s.index));
      return (*ctx.model_consts)[s.index];
  }
  throw UnresolvedSymbol("set");
}

inline Verdict kleene_and(const Verdict& a, const Verdict& b) {
  if (a.is_false()) return a;
  if (b.is_false()) return b;
  if (a.is_unknown()) return a;
  if (b.is_unknown()) return b;
  return Verdict::yes();
}
inline Verdict kleene_or(const Verdict& a, const Verdict& b) {
  if (a.is_true()) return a;
  if (b.is_true()) return b;
  if (a.is_unknown()) return a;
  if (b.is_unknown()) return b;
  return Verdict::no();
}

inline Verdict eval_rec(const Formula& f, NumEnv& env, EvalContext& ctx);

// Iterate x over [0, count) combining with `universal` semantics.
inline Verdict eval_range(const Formula& body, VarIndex x, std::uint64_t count, bool universal, bool exact, NumEnv& env,
                          EvalContext& ctx) {
  auto saved = env.find(x) != env.end() ? std::optional<Natural>(env[x]) : std::nullopt;
  std::optional<Verdict> pending_unknown;
  Verdict result = universal ? Verdict::yes() : Verdict::no();
  bool decided = false;
  for (std::uint64_t n = 0; n < count; ++n) {
    env[x] = n;
    Verdict v = eval_rec(body, env, ctx);
    if (universal ? v.is_false() : v.is_true()) {
      result = v;
      decided = true;
      break;
    }
    if (v.is_unknown() && !pending_unknown) pending_unknown = v;
  }
  if (saved)
    env[x] = *saved;
  else
    env.erase(x);
  if (decided) return result;
  if (pending_unknown) return *pending_unknown;
  if (!exact)
    return Verdict::unknown(std::string(universal ? "universal" : "existential") + " quantifier checked up to cutoff " +
                            std::to_string(ctx.cutoff));
  return result;
}

inline Verdict eval_rec(const Formula& f, NumEnv& env, EvalContext& ctx) {
  try {
    switch (f.kind()) {
      case FormulaKind::Eq: return Verdict::of(eval_term(f.lhs(), env) == eval_term(f.rhs(), env));
      case FormulaKind::Neq: return Verdict::of(eval_term(f.lhs(), env) != eval_term(f.rhs(), env));
      case FormulaKind::In: return Verdict::of(resolve_set(f.set(), ctx).contains(eval_term(f.lhs(), env)));
      case FormulaKind::NotIn: return Verdict::of(!resolve_set(f.set(), ctx).contains(eval_term(f.lhs(), env)));
      case FormulaKind::And: {
        Verdict a = eval_rec(f.left(), env, ctx);
        if (a.is_false()) return a;
        return kleene_and(a, eval_rec(f.right(), env, ctx));
      }
      case FormulaKind::Or: {
        Verdict a = eval_rec(f.left(), env, ctx);
        if (a.is_true()) return a;
        return kleene_or(a, eval_rec(f.right(), env, ctx));
      }
      case FormulaKind::ExistsNum:
      case FormulaKind::ForallNum: {
        bool universal = f.kind() == FormulaKind::ForallNum;
        if (auto le = universal ? match_not_le(f) : match_le(f)) {
          bool le_holds = eval_term(le->lower, env) <= eval_term(le->upper, env);
          return Verdict::of(universal ? !le_holds : le_holds);
        }
        auto bv = universal ? match_bounded_forall(f) : match_bounded_exists(f);
        if (bv) {
          Natural b = eval_term(bv->bound, env);
          if (!bv->strict) b += 1;
          if (b <= ctx.max_bounded)
            return eval_range(bv->body, bv->var, static_cast<std::uint64_t>(b), universal, true, env, ctx);
          // too many instances: fall through to cutoff semantics on the full formula
        }
        return eval_range(f.body(), f.bound_var(), ctx.cutoff + 1, universal, false, env, ctx);
      }
      case FormulaKind::ForallSet:
      case FormulaKind::ExistsSet: {
        if (!ctx.set_pool) return Verdict::unknown("second-order quantifier without a set pool");
        bool universal = f.kind() == FormulaKind::ForallSet;
        VarIndex X = f.bound_var();
        auto saved = ctx.setenv.find(X) != ctx.setenv.end() ? std::optional<UPSet>(ctx.setenv[X]) : std::nullopt;
        Verdict acc = universal ? Verdict::yes() : Verdict::no();
        for (const auto& s : *ctx.set_pool) {
          ctx.setenv[X] = s;
          Verdict v = eval_rec(f.body(), env, ctx);
          acc = universal ? kleene_and(acc, v) : kleene_or(acc, v);
          if (universal ? acc.is_false() : acc.is_true()) break;
        }
        if (saved)
          ctx.setenv[X] = *saved;
        else
          ctx.setenv.erase(X);
        return acc;
      }
    }
  } catch (const ValueTooLarge& e) {
    return Verdict::unknown(e.what());
  }
  return Verdict::unknown("unreachable");
}
}  // namespace detail

inline Verdict eval_formula(const Formula& f, EvalContext ctx, NumEnv env = {}) {
  return detail::eval_rec(f, env, ctx);
}

inline Verdict eval_formula(const Formula& f, const OracleTuple& oracles, const SetEnv& setenv = {},
                            std::uint64_t cutoff = 64) {
  EvalContext ctx;
  ctx.oracles = &oracles;
  ctx.setenv = setenv;
  ctx.cutoff = cutoff;
  return eval_formula(f, std::move(ctx));
}

}  // namespace omegalogic
