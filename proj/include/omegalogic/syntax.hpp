#pragma once

// Negation-free Tait language: terms, formulas, sequents.
//
// Nodes are immutable and shared (shared_ptr), so copying a Term or Formula
// is cheap and values can cross threads freely. Every node caches its hash,
// size, free variables and (lazily) its Gödel code.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "error.hpp"
#include "natural.hpp"

namespace omegalogic {

using VarIndex = std::uint32_t;

namespace detail {
inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  std::uint64_t z = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::vector<VarIndex> merge_sorted(const std::vector<VarIndex>& a, const std::vector<VarIndex>& b) {
  std::vector<VarIndex> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::vector<VarIndex> erase_sorted(std::vector<VarIndex> a, VarIndex v) {
  auto it = std::lower_bound(a.begin(), a.end(), v);
  if (it != a.end() && *it == v) a.erase(it);
  return a;
}

inline bool contains_sorted(const std::vector<VarIndex>& a, VarIndex v) {
  return std::binary_search(a.begin(), a.end(), v);
}
}  // namespace detail

// ---------------------------------------------------------------- terms

enum class TermKind : std::uint8_t { Zero = 0, One = 1, Var = 2, Plus = 3, Times = 4, Exp = 5 };

class Term {
 public:
  Term();  // Zero

  static Term zero();
  static Term one();
  static Term var(VarIndex i);
  static Term plus(Term a, Term b);
  static Term times(Term a, Term b);
  static Term exp(Term a);

  TermKind kind() const noexcept;
  VarIndex var_index() const noexcept;
  std::size_t arity() const noexcept;
  const Term& left() const;   // first child; the exponent for Exp
  const Term& right() const;  // second child
  const Term& child(std::size_t i) const;

  std::uint64_t hash() const noexcept;
  std::size_t size() const noexcept;
  const std::vector<VarIndex>& vars() const noexcept;
  bool has_var(VarIndex v) const { return detail::contains_sorted(vars(), v); }
  bool closed() const noexcept { return vars().empty(); }
  bool same_node(const Term& o) const noexcept { return node_ == o.node_; }

  template <class F>
  const Natural& cached_code(F&& compute) const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Term make(TermKind k, VarIndex v, std::vector<Term> kids);
  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  TermKind kind{};
  VarIndex var = 0;
  std::vector<Term> kids;
  std::uint64_t hash = 0;
  std::size_t size = 1;
  std::vector<VarIndex> vars;
  mutable std::once_flag code_once;
  mutable Natural code;
};

inline Term Term::make(TermKind k, VarIndex v, std::vector<Term> kids) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->var = v;
  std::uint64_t h = detail::mix(0x7e57ULL, static_cast<std::uint64_t>(k));
  if (k == TermKind::Var) {
    h = detail::mix(h, v);
    n->vars = {v};
  }
  for (const auto& c : kids) {
    h = detail::mix(h, c.hash());
    n->size += c.size();
    n->vars = detail::merge_sorted(n->vars, c.vars());
  }
  n->hash = h;
  n->kids = std::move(kids);
  return Term(std::move(n));
}

inline Term Term::zero() {
  static const Term z = make(TermKind::Zero, 0, {});
  return z;
}
inline Term Term::one() {
  static const Term o = make(TermKind::One, 0, {});
  return o;
}
inline Term::Term() : node_(zero().node_) {}
inline Term Term::var(VarIndex i) { return make(TermKind::Var, i, {}); }
inline Term Term::plus(Term a, Term b) { return make(TermKind::Plus, 0, {std::move(a), std::move(b)}); }
inline Term Term::times(Term a, Term b) { return make(TermKind::Times, 0, {std::move(a), std::move(b)}); }
inline Term Term::exp(Term a) { return make(TermKind::Exp, 0, {std::move(a)}); }

inline TermKind Term::kind() const noexcept { return node_->kind; }
inline VarIndex Term::var_index() const noexcept { return node_->var; }
inline std::size_t Term::arity() const noexcept { return node_->kids.size(); }
inline const Term& Term::left() const { return node_->kids.at(0); }
inline const Term& Term::right() const { return node_->kids.at(1); }
inline const Term& Term::child(std::size_t i) const { return node_->kids.at(i); }
inline std::uint64_t Term::hash() const noexcept { return node_->hash; }
inline std::size_t Term::size() const noexcept { return node_->size; }
inline const std::vector<VarIndex>& Term::vars() const noexcept { return node_->vars; }

template <class F>
const Natural& Term::cached_code(F&& compute) const {
  std::call_once(node_->code_once, [&] { node_->code = compute(); });
  return node_->code;
}

inline bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size() || a.kind() != b.kind() || a.var_index() != b.var_index())
    return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!(a.child(i) == b.child(i))) return false;
  return true;
}

// Structural total order: size, then tag, then variable index, then children.
inline std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.var_index() <=> b.var_index(); c != 0) return c;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (auto c = a.child(i) <=> b.child(i); c != 0) return c;
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------- numerals

inline Term numeral(std::uint64_t n) {
  // small numerals are shared so equality checks hit the pointer fast path
  static constexpr std::uint64_t kCached = 512;
  static const std::vector<Term> cache = [] {
    std::vector<Term> v;
    v.reserve(kCached + 1);
    v.push_back(Term::zero());
    for (std::uint64_t i = 1; i <= kCached; ++i) v.push_back(Term::plus(v.back(), Term::one()));
    return v;
  }();
  if (n <= kCached) return cache[n];
  Term t = cache[kCached];
  for (std::uint64_t i = kCached; i < n; ++i) t = Term::plus(t, Term::one());
  return t;
}

// n if t is syntactically numeral(n).
inline std::optional<std::uint64_t> as_numeral(const Term& t) {
  std::uint64_t n = 0;
  const Term* cur = &t;
  while (cur->kind() == TermKind::Plus) {
    if (cur->right().kind() != TermKind::One) return std::nullopt;
    ++n;
    cur = &cur->left();
  }
  if (cur->kind() != TermKind::Zero) return std::nullopt;
  return n;
}

// ---------------------------------------------------------------- formulas

enum class FormulaKind : std::uint8_t {
  Eq = 6,
  Neq = 7,
  In = 8,
  NotIn = 9,
  And = 10,
  Or = 11,
  ForallNum = 12,
  ExistsNum = 13,
  ForallSet = 14,
  ExistsSet = 15
};

enum class SetKind : std::uint8_t { Var = 0, Oracle = 1, ModelConst = 2 };

struct SetRef {
  SetKind kind = SetKind::Var;
  VarIndex index = 0;
  static SetRef var(VarIndex i) { return {SetKind::Var, i}; }
  static SetRef oracle(VarIndex i) { return {SetKind::Oracle, i}; }
  static SetRef model(VarIndex i) { return {SetKind::ModelConst, i}; }
  friend auto operator<=>(const SetRef&, const SetRef&) = default;
  friend bool operator==(const SetRef&, const SetRef&) = default;
};

class Formula {
 public:
  static Formula eq(Term a, Term b);
  static Formula neq(Term a, Term b);
  static Formula in(Term t, SetRef s);
  static Formula notin(Term t, SetRef s);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula forall_num(VarIndex x, Formula body);
  static Formula exists_num(VarIndex x, Formula body);
  static Formula forall_set(VarIndex x, Formula body);
  static Formula exists_set(VarIndex x, Formula body);
  static Formula make_atom(FormulaKind k, std::vector<Term> terms, SetRef s = {});
  static Formula make_binary(FormulaKind k, Formula a, Formula b);
  static Formula make_quantifier(FormulaKind k, VarIndex x, Formula body);

  FormulaKind kind() const noexcept;
  bool is_atomic() const noexcept { return static_cast<int>(kind()) <= 9; }
  bool is_binary() const noexcept { return kind() == FormulaKind::And || kind() == FormulaKind::Or; }
  bool is_quantifier() const noexcept { return static_cast<int>(kind()) >= 12; }
  bool is_number_quantifier() const noexcept {
    return kind() == FormulaKind::ForallNum || kind() == FormulaKind::ExistsNum;
  }
  bool is_set_quantifier() const noexcept {
    return kind() == FormulaKind::ForallSet || kind() == FormulaKind::ExistsSet;
  }
  bool is_membership() const noexcept { return kind() == FormulaKind::In || kind() == FormulaKind::NotIn; }

  const std::vector<Term>& terms() const noexcept;  // atoms: (lhs, rhs) or (element)
  const Term& lhs() const { return terms().at(0); }
  const Term& rhs() const { return terms().at(1); }
  SetRef set() const noexcept;
  const Formula& left() const;
  const Formula& right() const;
  const Formula& body() const { return left(); }
  VarIndex bound_var() const noexcept;
  const std::vector<Formula>& children() const noexcept;

  std::uint64_t hash() const noexcept;
  std::size_t size() const noexcept;  // node count including terms
  std::size_t rank() const noexcept;
  const std::vector<VarIndex>& free_vars() const noexcept;      // first-order
  const std::vector<VarIndex>& free_set_vars() const noexcept;  // Var2 only
  bool has_free_var(VarIndex v) const { return detail::contains_sorted(free_vars(), v); }
  bool has_free_set_var(VarIndex v) const { return detail::contains_sorted(free_set_vars(), v); }
  bool is_sentence() const noexcept { return free_vars().empty() && free_set_vars().empty(); }
  // largest index used anywhere (free or bound), -1 if none
  std::int64_t max_num_var() const noexcept;
  std::int64_t max_set_var() const noexcept;
  bool has_set_quantifier() const noexcept;
  std::int64_t max_oracle() const noexcept;
  std::int64_t max_model_const() const noexcept;
  bool same_node(const Formula& o) const noexcept { return node_ == o.node_; }

  template <class F>
  const Natural& cached_code(F&& compute) const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  FormulaKind kind{};
  VarIndex var = 0;
  SetRef set{};
  std::vector<Term> terms;
  std::vector<Formula> kids;
  std::uint64_t hash = 0;
  std::size_t size = 1;
  std::size_t rank = 0;
  std::vector<VarIndex> free_num;
  std::vector<VarIndex> free_set;
  std::int64_t max_num = -1;
  std::int64_t max_set = -1;
  std::int64_t max_oracle = -1;
  std::int64_t max_model = -1;
  bool set_quant = false;
  mutable std::once_flag code_once;
  mutable Natural code;
};

inline Formula Formula::make_atom(FormulaKind k, std::vector<Term> terms, SetRef s) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  std::uint64_t h = detail::mix(0xf0f0ULL, static_cast<std::uint64_t>(k));
  for (const auto& t : terms) {
    h = detail::mix(h, t.hash());
    n->size += t.size();
    n->free_num = detail::merge_sorted(n->free_num, t.vars());
  }
  if (!n->free_num.empty()) n->max_num = n->free_num.back();
  if (k == FormulaKind::In || k == FormulaKind::NotIn) {
    n->set = s;
    h = detail::mix(h, static_cast<std::uint64_t>(s.kind) * 0x100000000ULL + s.index);
    if (s.kind == SetKind::Var) {
      n->free_set = {s.index};
      n->max_set = s.index;
    } else if (s.kind == SetKind::Oracle) {
      n->max_oracle = s.index;
    } else {
      n->max_model = s.index;
    }
  }
  n->hash = h;
  n->terms = std::move(terms);
  return Formula(std::move(n));
}

inline Formula Formula::make_binary(FormulaKind k, Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->hash = detail::mix(detail::mix(detail::mix(0xabcdULL, static_cast<std::uint64_t>(k)), a.hash()), b.hash());
  n->size = 1 + a.size() + b.size();
  n->rank = 1 + a.rank() + b.rank();
  n->free_num = detail::merge_sorted(a.free_vars(), b.free_vars());
  n->free_set = detail::merge_sorted(a.free_set_vars(), b.free_set_vars());
  n->max_num = std::max(a.max_num_var(), b.max_num_var());
  n->max_set = std::max(a.max_set_var(), b.max_set_var());
  n->max_oracle = std::max(a.max_oracle(), b.max_oracle());
  n->max_model = std::max(a.max_model_const(), b.max_model_const());
  n->set_quant = a.has_set_quantifier() || b.has_set_quantifier();
  n->kids = {std::move(a), std::move(b)};
  return Formula(std::move(n));
}

inline Formula Formula::make_quantifier(FormulaKind k, VarIndex x, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->var = x;
  n->hash = detail::mix(detail::mix(detail::mix(0x5151ULL, static_cast<std::uint64_t>(k)), x), body.hash());
  n->size = 1 + body.size();
  n->rank = 1 + body.rank();
  bool set_q = k == FormulaKind::ForallSet || k == FormulaKind::ExistsSet;
  n->free_num = set_q ? body.free_vars() : detail::erase_sorted(body.free_vars(), x);
  n->free_set = set_q ? detail::erase_sorted(body.free_set_vars(), x) : body.free_set_vars();
  n->max_num = body.max_num_var();
  n->max_set = body.max_set_var();
  if (set_q)
    n->max_set = std::max<std::int64_t>(n->max_set, x);
  else
    n->max_num = std::max<std::int64_t>(n->max_num, x);
  n->max_oracle = body.max_oracle();
  n->max_model = body.max_model_const();
  n->set_quant = set_q || body.has_set_quantifier();
  n->kids = {std::move(body)};
  return Formula(std::move(n));
}

inline Formula Formula::eq(Term a, Term b) { return make_atom(FormulaKind::Eq, {std::move(a), std::move(b)}); }
inline Formula Formula::neq(Term a, Term b) { return make_atom(FormulaKind::Neq, {std::move(a), std::move(b)}); }
inline Formula Formula::in(Term t, SetRef s) { return make_atom(FormulaKind::In, {std::move(t)}, s); }
inline Formula Formula::notin(Term t, SetRef s) { return make_atom(FormulaKind::NotIn, {std::move(t)}, s); }
inline Formula Formula::conj(Formula a, Formula b) { return make_binary(FormulaKind::And, std::move(a), std::move(b)); }
inline Formula Formula::disj(Formula a, Formula b) { return make_binary(FormulaKind::Or, std::move(a), std::move(b)); }
inline Formula Formula::forall_num(VarIndex x, Formula b) { return make_quantifier(FormulaKind::ForallNum, x, std::move(b)); }
inline Formula Formula::exists_num(VarIndex x, Formula b) { return make_quantifier(FormulaKind::ExistsNum, x, std::move(b)); }
inline Formula Formula::forall_set(VarIndex x, Formula b) { return make_quantifier(FormulaKind::ForallSet, x, std::move(b)); }
inline Formula Formula::exists_set(VarIndex x, Formula b) { return make_quantifier(FormulaKind::ExistsSet, x, std::move(b)); }

inline FormulaKind Formula::kind() const noexcept { return node_->kind; }
inline const std::vector<Term>& Formula::terms() const noexcept { return node_->terms; }
inline SetRef Formula::set() const noexcept { return node_->set; }
inline const Formula& Formula::left() const { return node_->kids.at(0); }
inline const Formula& Formula::right() const { return node_->kids.at(1); }
inline VarIndex Formula::bound_var() const noexcept { return node_->var; }
inline const std::vector<Formula>& Formula::children() const noexcept { return node_->kids; }
inline std::uint64_t Formula::hash() const noexcept { return node_->hash; }
inline std::size_t Formula::size() const noexcept { return node_->size; }
inline std::size_t Formula::rank() const noexcept { return node_->rank; }
inline const std::vector<VarIndex>& Formula::free_vars() const noexcept { return node_->free_num; }
inline const std::vector<VarIndex>& Formula::free_set_vars() const noexcept { return node_->free_set; }
inline std::int64_t Formula::max_num_var() const noexcept { return node_->max_num; }
inline std::int64_t Formula::max_set_var() const noexcept { return node_->max_set; }
inline bool Formula::has_set_quantifier() const noexcept { return node_->set_quant; }
inline std::int64_t Formula::max_oracle() const noexcept { return node_->max_oracle; }
inline std::int64_t Formula::max_model_const() const noexcept { return node_->max_model; }

template <class F>
const Natural& Formula::cached_code(F&& compute) const {
  std::call_once(node_->code_once, [&] { node_->code = compute(); });
  return node_->code;
}

inline bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.size() != b.size() || a.kind() != b.kind() || a.bound_var() != b.bound_var() ||
      !(a.set() == b.set()))
    return false;
  const auto& at = a.terms();
  const auto& bt = b.terms();
  for (std::size_t i = 0; i < at.size(); ++i)
    if (!(at[i] == bt[i])) return false;
  const auto& ak = a.children();
  const auto& bk = b.children();
  for (std::size_t i = 0; i < ak.size(); ++i)
    if (!(ak[i] == bk[i])) return false;
  return true;
}

inline std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  if (auto c = a.bound_var() <=> b.bound_var(); c != 0) return c;
  if (auto c = a.set() <=> b.set(); c != 0) return c;
  for (std::size_t i = 0; i < a.terms().size(); ++i)
    if (auto c = a.terms()[i] <=> b.terms()[i]; c != 0) return c;
  for (std::size_t i = 0; i < a.children().size(); ++i)
    if (auto c = a.children()[i] <=> b.children()[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------- basic operations

inline FormulaKind dual_kind(FormulaKind k) {
  switch (k) {
    case FormulaKind::Eq: return FormulaKind::Neq;
    case FormulaKind::Neq: return FormulaKind::Eq;
    case FormulaKind::In: return FormulaKind::NotIn;
    case FormulaKind::NotIn: return FormulaKind::In;
    case FormulaKind::And: return FormulaKind::Or;
    case FormulaKind::Or: return FormulaKind::And;
    case FormulaKind::ForallNum: return FormulaKind::ExistsNum;
    case FormulaKind::ExistsNum: return FormulaKind::ForallNum;
    case FormulaKind::ForallSet: return FormulaKind::ExistsSet;
    case FormulaKind::ExistsSet: return FormulaKind::ForallSet;
  }
  return k;
}

inline Formula negate(const Formula& f) {
  FormulaKind d = dual_kind(f.kind());
  if (f.is_atomic()) return Formula::make_atom(d, f.terms(), f.set());
  if (f.is_binary()) return Formula::make_binary(d, negate(f.left()), negate(f.right()));
  return Formula::make_quantifier(d, f.bound_var(), negate(f.body()));
}

inline std::size_t rank(const Formula& f) { return f.rank(); }

inline Term substitute_term(const Term& t, VarIndex x, const Term& s) {
  if (!t.has_var(x)) return t;
  switch (t.kind()) {
    case TermKind::Var: return s;
    case TermKind::Plus: return Term::plus(substitute_term(t.left(), x, s), substitute_term(t.right(), x, s));
    case TermKind::Times: return Term::times(substitute_term(t.left(), x, s), substitute_term(t.right(), x, s));
    case TermKind::Exp: return Term::exp(substitute_term(t.left(), x, s));
    default: return t;
  }
}

// Capture-avoiding φ[x := t]; binders that would capture a variable of t are renamed.
inline Formula substitute(const Formula& f, VarIndex x, const Term& t) {
  if (!f.has_free_var(x)) return f;
  if (f.is_atomic()) {
    std::vector<Term> ts;
    for (const auto& a : f.terms()) ts.push_back(substitute_term(a, x, t));
    return Formula::make_atom(f.kind(), std::move(ts), f.set());
  }
  if (f.is_binary())
    return Formula::make_binary(f.kind(), substitute(f.left(), x, t), substitute(f.right(), x, t));
  if (f.is_set_quantifier()) return Formula::make_quantifier(f.kind(), f.bound_var(), substitute(f.body(), x, t));
  VarIndex y = f.bound_var();
  if (t.has_var(y)) {
    std::int64_t m = std::max<std::int64_t>({f.max_num_var(), static_cast<std::int64_t>(x),
                                             t.vars().empty() ? -1 : static_cast<std::int64_t>(t.vars().back())});
    VarIndex z = static_cast<VarIndex>(m + 1);
    Formula renamed = substitute(f.body(), y, Term::var(z));
    return Formula::make_quantifier(f.kind(), z, substitute(renamed, x, t));
  }
  return Formula::make_quantifier(f.kind(), y, substitute(f.body(), x, t));
}

// Capture-avoiding φ[X := S] for a set variable X.
inline Formula substitute_set(const Formula& f, VarIndex X, SetRef s) {
  if (!f.has_free_set_var(X)) return f;
  if (f.is_atomic()) {
    SetRef r = f.set();
    if (r.kind == SetKind::Var && r.index == X) r = s;
    return Formula::make_atom(f.kind(), f.terms(), r);
  }
  if (f.is_binary())
    return Formula::make_binary(f.kind(), substitute_set(f.left(), X, s), substitute_set(f.right(), X, s));
  if (f.is_number_quantifier())
    return Formula::make_quantifier(f.kind(), f.bound_var(), substitute_set(f.body(), X, s));
  VarIndex Y = f.bound_var();
  if (s.kind == SetKind::Var && s.index == Y) {
    VarIndex Z = static_cast<VarIndex>(std::max<std::int64_t>({f.max_set_var(), X, s.index}) + 1);
    Formula renamed = substitute_set(f.body(), Y, SetRef::var(Z));
    return Formula::make_quantifier(f.kind(), Z, substitute_set(renamed, X, s));
  }
  return Formula::make_quantifier(f.kind(), Y, substitute_set(f.body(), X, s));
}

// Replace a set constant (oracle or model constant) everywhere; no binders involved.
inline Formula replace_set(const Formula& f, SetRef from, SetRef to) {
  if (f.is_atomic()) {
    if (!f.is_membership() || !(f.set() == from)) return f;
    return Formula::make_atom(f.kind(), f.terms(), to);
  }
  if (f.is_binary()) return Formula::make_binary(f.kind(), replace_set(f.left(), from, to), replace_set(f.right(), from, to));
  return Formula::make_quantifier(f.kind(), f.bound_var(), replace_set(f.body(), from, to));
}

namespace detail {
inline bool binds_num_var(const Formula& f, VarIndex v) {
  if (f.is_atomic()) return false;
  if (f.is_number_quantifier() && f.bound_var() == v) return true;
  for (const auto& c : f.children())
    if (binds_num_var(c, v)) return true;
  return false;
}
}  // namespace detail

// φ(ẋ): replace free occurrences of each key by its numeral.
inline Formula substitute_numerals(const Formula& f, const std::map<VarIndex, std::uint64_t>& assignment) {
  Formula out = f;
  for (const auto& [v, n] : assignment) {
    if (!f.has_free_var(v) && detail::binds_num_var(f, v))
      throw AssignmentToBoundVariable("x" + std::to_string(v) + " is bound, not free");
    out = substitute(out, v, numeral(n));
  }
  return out;
}

inline std::vector<Formula> immediate_subformulas(const Formula& f) { return f.children(); }

// ---------------------------------------------------------------- instance matching

namespace detail {
// Walk ψ and θ in parallel; at the first free occurrence of x in ψ, return the
// corresponding subterm of θ. Binder variable names are ignored here; the
// caller confirms by recomputing the substitution.
inline const Term* find_term_image(const Term& p, const Term& q, VarIndex x) {
  if (p.kind() == TermKind::Var && p.var_index() == x) return &q;
  if (p.kind() != q.kind() || p.arity() != q.arity()) return nullptr;
  for (std::size_t i = 0; i < p.arity(); ++i)
    if (p.child(i).has_var(x)) return find_term_image(p.child(i), q.child(i), x);
  return nullptr;
}

inline const Term* find_formula_image(const Formula& p, const Formula& q, VarIndex x) {
  if (p.kind() != q.kind()) return nullptr;
  if (!p.has_free_var(x)) return nullptr;
  if (p.is_atomic()) {
    for (std::size_t i = 0; i < p.terms().size(); ++i)
      if (p.terms()[i].has_var(x)) return find_term_image(p.terms()[i], q.terms()[i], x);
    return nullptr;
  }
  for (std::size_t i = 0; i < p.children().size(); ++i)
    if (p.children()[i].has_free_var(x)) return find_formula_image(p.children()[i], q.children()[i], x);
  return nullptr;
}

inline std::optional<SetRef> find_set_image(const Formula& p, const Formula& q, VarIndex X) {
  if (p.kind() != q.kind()) return std::nullopt;
  if (!p.has_free_set_var(X)) return std::nullopt;
  if (p.is_atomic()) {
    if (p.set().kind == SetKind::Var && p.set().index == X) return q.set();
    return std::nullopt;
  }
  for (std::size_t i = 0; i < p.children().size(); ++i)
    if (p.children()[i].has_free_set_var(X)) return find_set_image(p.children()[i], q.children()[i], X);
  return std::nullopt;
}
}  // namespace detail

// θ = ψ[x := t] for which t?  `vacuous` means x is not free in ψ and θ = ψ.
struct TermInstance {
  bool vacuous = false;
  Term term;
};
struct SetInstance {
  bool vacuous = false;
  SetRef set;
};

inline std::optional<TermInstance> match_instance(const Formula& psi, VarIndex x, const Formula& theta) {
  if (!psi.has_free_var(x)) {
    if (psi == theta) return TermInstance{true, Term::zero()};
    return std::nullopt;
  }
  const Term* t = detail::find_formula_image(psi, theta, x);
  if (!t) return std::nullopt;
  if (substitute(psi, x, *t) == theta) return TermInstance{false, *t};
  return std::nullopt;
}

inline std::optional<SetInstance> match_set_instance(const Formula& psi, VarIndex X, const Formula& theta) {
  if (!psi.has_free_set_var(X)) {
    if (psi == theta) return SetInstance{true, SetRef::var(0)};
    return std::nullopt;
  }
  auto s = detail::find_set_image(psi, theta, X);
  if (!s) return std::nullopt;
  if (substitute_set(psi, X, *s) == theta) return SetInstance{false, *s};
  return std::nullopt;
}

// ---------------------------------------------------------------- sugar patterns

namespace detail {
inline VarIndex fresh_after(std::initializer_list<const Term*> ts, std::int64_t floor = -1) {
  std::int64_t m = floor;
  for (const Term* t : ts)
    if (!t->vars().empty()) m = std::max<std::int64_t>(m, t->vars().back());
  return static_cast<VarIndex>(m + 1);
}
}  // namespace detail

// t <= s  is  ∃z (s = t + z)
inline Formula make_le(const Term& lower, const Term& upper) {
  VarIndex z = detail::fresh_after({&lower, &upper});
  return Formula::exists_num(z, Formula::eq(upper, Term::plus(lower, Term::var(z))));
}
// t < s  is  t + 1 <= s
inline Formula make_lt(const Term& lower, const Term& upper) { return make_le(Term::plus(lower, Term::one()), upper); }

struct LeView {
  Term lower;
  Term upper;
};

namespace detail {
inline std::optional<LeView> le_shape(const Formula& f, FormulaKind quant, FormulaKind atom) {
  if (f.kind() != quant) return std::nullopt;
  const Formula& b = f.body();
  if (b.kind() != atom) return std::nullopt;
  const Term& s = b.lhs();
  const Term& r = b.rhs();
  VarIndex z = f.bound_var();
  if (r.kind() != TermKind::Plus || r.right().kind() != TermKind::Var || r.right().var_index() != z)
    return std::nullopt;
  if (s.has_var(z) || r.left().has_var(z)) return std::nullopt;
  return LeView{r.left(), s};
}
}  // namespace detail

inline std::optional<LeView> match_le(const Formula& f) {
  return detail::le_shape(f, FormulaKind::ExistsNum, FormulaKind::Eq);
}
inline std::optional<LeView> match_not_le(const Formula& f) {
  return detail::le_shape(f, FormulaKind::ForallNum, FormulaKind::Neq);
}

// ∀x<t.φ is ∀x(∼(x<t) ∨ φ); ∃x<t.φ is ∃x(x<t ∧ φ). `strict` false means ≤.
struct BoundedView {
  VarIndex var = 0;
  Term bound;
  bool strict = true;
  Formula body;
};

namespace detail {
inline std::optional<BoundedView> bounded_shape(const Formula& f, bool universal) {
  if (f.kind() != (universal ? FormulaKind::ForallNum : FormulaKind::ExistsNum)) return std::nullopt;
  const Formula& m = f.body();
  if (m.kind() != (universal ? FormulaKind::Or : FormulaKind::And)) return std::nullopt;
  auto g = universal ? match_not_le(m.left()) : match_le(m.left());
  if (!g) return std::nullopt;
  VarIndex x = f.bound_var();
  if (g->upper.has_var(x)) return std::nullopt;
  const Term& lo = g->lower;
  bool strict;
  if (lo.kind() == TermKind::Var && lo.var_index() == x)
    strict = false;
  else if (lo.kind() == TermKind::Plus && lo.right().kind() == TermKind::One && lo.left().kind() == TermKind::Var &&
           lo.left().var_index() == x)
    strict = true;
  else
    return std::nullopt;
  return BoundedView{x, g->upper, strict, m.right()};
}
}  // namespace detail

inline std::optional<BoundedView> match_bounded_forall(const Formula& f) { return detail::bounded_shape(f, true); }
inline std::optional<BoundedView> match_bounded_exists(const Formula& f) { return detail::bounded_shape(f, false); }

inline Formula bounded_forall(VarIndex x, const Term& bound, const Formula& body, bool strict = true) {
  Term v = Term::var(x);
  Formula guard = strict ? make_lt(v, bound) : make_le(v, bound);
  return Formula::forall_num(x, Formula::disj(negate(guard), body));
}
inline Formula bounded_exists(VarIndex x, const Term& bound, const Formula& body, bool strict = true) {
  Term v = Term::var(x);
  Formula guard = strict ? make_lt(v, bound) : make_le(v, bound);
  return Formula::exists_num(x, Formula::conj(guard, body));
}

// ---------------------------------------------------------------- classes

enum class ClassTag : std::uint8_t { Delta00, Sigma0, Pi0, Sigma1, Pi1, Pi1Omega };

struct FormulaClass {
  ClassTag tag = ClassTag::Delta00;
  unsigned level = 0;
  bool lightface = true;
  friend bool operator==(const FormulaClass&, const FormulaClass&) = default;
};

inline std::string to_string(const FormulaClass& c) {
  std::string s;
  switch (c.tag) {
    case ClassTag::Delta00: s = "Delta00"; break;
    case ClassTag::Sigma0: s = "Sigma0_" + std::to_string(c.level); break;
    case ClassTag::Pi0: s = "Pi0_" + std::to_string(c.level); break;
    case ClassTag::Sigma1: s = "Sigma1_" + std::to_string(c.level); break;
    case ClassTag::Pi1: s = "Pi1_" + std::to_string(c.level); break;
    case ClassTag::Pi1Omega: s = "Pi1_omega"; break;
  }
  return s + (c.lightface ? " lightface" : " boldface");
}

// Bounded quantifiers and the ≤ macro count as Δ00 when everything inside is.
inline bool is_delta00(const Formula& f) {
  if (f.has_set_quantifier()) return false;
  if (f.is_atomic()) return true;
  if (f.is_binary()) return is_delta00(f.left()) && is_delta00(f.right());
  if (match_le(f) || match_not_le(f)) return true;
  if (auto b = match_bounded_forall(f)) return is_delta00(b->body);
  if (auto b = match_bounded_exists(f)) return is_delta00(b->body);
  return false;
}

namespace detail {
// (σ, π): the least n with φ ∈ Σn resp. Πn (arithmetical levels, 0 = Δ00).
struct Levels {
  unsigned sigma = 0, pi = 0;
};

inline Levels quantify(Levels in, bool existential) {
  if (existential) {
    unsigned s = std::max(1u, std::min(in.sigma, in.pi + 1));
    return {s, s + 1};
  }
  unsigned p = std::max(1u, std::min(in.pi, in.sigma + 1));
  return {p + 1, p};
}

inline Levels arith_levels(const Formula& f) {
  if (is_delta00(f)) return {0, 0};
  if (f.is_binary()) {
    Levels a = arith_levels(f.left()), b = arith_levels(f.right());
    return {std::max(a.sigma, b.sigma), std::max(a.pi, b.pi)};
  }
  return quantify(arith_levels(f.body()), f.kind() == FormulaKind::ExistsNum);
}

// Set-quantifier levels; arithmetical subformulas sit at level 0 and number
// quantifiers over second-order matter are absorbed.
inline Levels set_levels(const Formula& f) {
  if (!f.has_set_quantifier()) return {0, 0};
  if (f.is_binary()) {
    Levels a = set_levels(f.left()), b = set_levels(f.right());
    return {std::max(a.sigma, b.sigma), std::max(a.pi, b.pi)};
  }
  if (f.is_number_quantifier()) return set_levels(f.body());
  return quantify(set_levels(f.body()), f.kind() == FormulaKind::ExistsSet);
}
}  // namespace detail

inline FormulaClass classify(const Formula& f) {
  FormulaClass c;
  c.lightface = f.free_set_vars().empty();
  if (f.has_set_quantifier()) {
    auto l = detail::set_levels(f);
    if (l.pi < l.sigma) {
      c.tag = ClassTag::Pi1;
      c.level = l.pi;
    } else {
      c.tag = ClassTag::Sigma1;
      c.level = l.sigma;
    }
    return c;
  }
  auto l = detail::arith_levels(f);
  if (l.sigma == 0) return c;
  if (l.pi < l.sigma) {
    c.tag = ClassTag::Pi0;
    c.level = l.pi;
  } else {
    c.tag = ClassTag::Sigma0;
    c.level = l.sigma;
  }
  return c;
}

inline FormulaClass dual_class(FormulaClass c) {
  switch (c.tag) {
    case ClassTag::Sigma0: c.tag = ClassTag::Pi0; break;
    case ClassTag::Pi0: c.tag = ClassTag::Sigma0; break;
    case ClassTag::Sigma1: c.tag = ClassTag::Pi1; break;
    case ClassTag::Pi1: c.tag = ClassTag::Sigma1; break;
    default: break;
  }
  return c;
}

// ---------------------------------------------------------------- sequents

class Sequent {
 public:
  Sequent() = default;
  explicit Sequent(std::vector<Formula> fs) : items_(std::move(fs)) { canonicalize(); }
  Sequent(std::initializer_list<Formula> fs) : items_(fs) { canonicalize(); }

  const std::vector<Formula>& formulas() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }
  const Formula& operator[](std::size_t i) const { return items_[i]; }

  bool contains(const Formula& f) const {
    auto it = std::lower_bound(items_.begin(), items_.end(), f);
    return it != items_.end() && *it == f;
  }
  bool subset_of(const Sequent& o) const {
    return std::includes(o.items_.begin(), o.items_.end(), items_.begin(), items_.end());
  }
  Sequent with(const Formula& f) const {
    Sequent s = *this;
    auto it = std::lower_bound(s.items_.begin(), s.items_.end(), f);
    if (it == s.items_.end() || !(*it == f)) s.items_.insert(it, f);
    return s;
  }
  Sequent with(const Sequent& o) const {
    Sequent s;
    std::set_union(items_.begin(), items_.end(), o.items_.begin(), o.items_.end(), std::back_inserter(s.items_));
    return s;
  }
  Sequent without(const Formula& f) const {
    Sequent s = *this;
    auto it = std::lower_bound(s.items_.begin(), s.items_.end(), f);
    if (it != s.items_.end() && *it == f) s.items_.erase(it);
    return s;
  }

  std::uint64_t hash() const noexcept {
    std::uint64_t h = 0x5e9ULL;
    for (const auto& f : items_) h = detail::mix(h, f.hash());
    return h;
  }
  std::vector<VarIndex> free_vars() const {
    std::vector<VarIndex> v;
    for (const auto& f : items_) v = detail::merge_sorted(v, f.free_vars());
    return v;
  }
  std::vector<VarIndex> free_set_vars() const {
    std::vector<VarIndex> v;
    for (const auto& f : items_) v = detail::merge_sorted(v, f.free_set_vars());
    return v;
  }
  bool has_free_var(VarIndex v) const {
    for (const auto& f : items_)
      if (f.has_free_var(v)) return true;
    return false;
  }
  bool has_free_set_var(VarIndex v) const {
    for (const auto& f : items_)
      if (f.has_free_set_var(v)) return true;
    return false;
  }
  std::int64_t max_num_var() const {
    std::int64_t m = -1;
    for (const auto& f : items_) m = std::max(m, f.max_num_var());
    return m;
  }
  std::int64_t max_set_var() const {
    std::int64_t m = -1;
    for (const auto& f : items_) m = std::max(m, f.max_set_var());
    return m;
  }

  friend bool operator==(const Sequent& a, const Sequent& b) { return a.items_ == b.items_; }
  friend std::strong_ordering operator<=>(const Sequent& a, const Sequent& b) {
    if (auto c = a.items_.size() <=> b.items_.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.items_.size(); ++i)
      if (auto c = a.items_[i] <=> b.items_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

 private:
  void canonicalize() {
    std::sort(items_.begin(), items_.end());
    items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
  }
  std::vector<Formula> items_;
};

}  // namespace omegalogic

template <>
struct std::hash<omegalogic::Term> {
  std::size_t operator()(const omegalogic::Term& t) const noexcept { return t.hash(); }
};
template <>
struct std::hash<omegalogic::Formula> {
  std::size_t operator()(const omegalogic::Formula& f) const noexcept { return f.hash(); }
};
template <>
struct std::hash<omegalogic::Sequent> {
  std::size_t operator()(const omegalogic::Sequent& s) const noexcept { return s.hash(); }
};
