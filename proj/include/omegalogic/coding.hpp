#pragma once

// Gödel numbering: code = pair(tag, fold of children) with Cantor pairing.
// Fold: no children -> 0, one child -> its code, two -> pair(a, b).
// Atoms of membership pair the term code with pair(set kind, index).
// Sequents: pair(16, seq(list)) with seq([]) = 0, seq(x::xs) = 1 + pair(x, seq(xs)).

#include <variant>

#include "syntax.hpp"

namespace omegalogic {

using GodelCode = Natural;

inline constexpr unsigned kSequentTag = 16;

inline GodelCode encode(const Term& t) {
  return t.cached_code([&]() -> Natural {
    auto tag = static_cast<unsigned>(t.kind());
    switch (t.kind()) {
      case TermKind::Zero:
      case TermKind::One: return cantor_pair(tag, 0);
      case TermKind::Var: return cantor_pair(tag, t.var_index());
      case TermKind::Exp: return cantor_pair(tag, encode(t.left()));
      default: return cantor_pair(tag, cantor_pair(encode(t.left()), encode(t.right())));
    }
  });
}

inline GodelCode encode(SetRef s) { return cantor_pair(static_cast<unsigned>(s.kind), s.index); }

inline GodelCode encode(const Formula& f) {
  return f.cached_code([&]() -> Natural {
    auto tag = static_cast<unsigned>(f.kind());
    if (f.kind() == FormulaKind::Eq || f.kind() == FormulaKind::Neq)
      return cantor_pair(tag, cantor_pair(encode(f.lhs()), encode(f.rhs())));
    if (f.is_membership()) return cantor_pair(tag, cantor_pair(encode(f.lhs()), encode(f.set())));
    if (f.is_binary()) return cantor_pair(tag, cantor_pair(encode(f.left()), encode(f.right())));
    return cantor_pair(tag, cantor_pair(f.bound_var(), encode(f.body())));
  });
}

inline GodelCode encode(const Sequent& s) {
  Natural acc = 0;
  for (auto it = s.formulas().rbegin(); it != s.formulas().rend(); ++it) acc = 1 + cantor_pair(encode(*it), acc);
  return cantor_pair(kSequentTag, acc);
}

// Code of f if it is at most `bound`, computed bottom-up with early exit.
// Pairing is monotone in both arguments, so an oversized subcode settles it;
// this keeps huge numeral codes from ever being materialized.
namespace detail {
inline std::optional<Natural> pair_within(const std::optional<Natural>& a, const std::optional<Natural>& b,
                                          const Natural& bound) {
  if (!a || !b) return std::nullopt;
  Natural c = cantor_pair(*a, *b);
  if (c > bound) return std::nullopt;
  return c;
}
}  // namespace detail

inline std::optional<GodelCode> encode_within(const Term& t, const Natural& bound) {
  auto tag = static_cast<unsigned>(t.kind());
  switch (t.kind()) {
    case TermKind::Zero:
    case TermKind::One: return detail::pair_within(Natural(tag), Natural(0), bound);
    case TermKind::Var: return detail::pair_within(Natural(tag), Natural(t.var_index()), bound);
    case TermKind::Exp: return detail::pair_within(Natural(tag), encode_within(t.left(), bound), bound);
    default: {
      auto l = encode_within(t.left(), bound);
      if (!l) return std::nullopt;
      return detail::pair_within(Natural(tag), detail::pair_within(l, encode_within(t.right(), bound), bound),
                                 bound);
    }
  }
}

inline std::optional<GodelCode> encode_within(const Formula& f, const Natural& bound) {
  auto tag = Natural(static_cast<unsigned>(f.kind()));
  std::optional<Natural> payload;
  if (f.is_atomic()) {
    auto l = encode_within(f.lhs(), bound);
    if (!l) return std::nullopt;
    payload = detail::pair_within(l, f.is_membership() ? std::optional<Natural>(encode(f.set())) : encode_within(f.rhs(), bound),
                                  bound);
  } else if (f.is_binary()) {
    auto l = encode_within(f.left(), bound);
    if (!l) return std::nullopt;
    payload = detail::pair_within(l, encode_within(f.right(), bound), bound);
  } else {
    payload = detail::pair_within(Natural(f.bound_var()), encode_within(f.body(), bound), bound);
  }
  return detail::pair_within(tag, payload, bound);
}

inline bool code_at_most(const Formula& f, const Natural& bound) { return encode_within(f, bound).has_value(); }

using Decoded = std::variant<Term, Formula, Sequent>;

namespace detail {
inline VarIndex small_index(const Natural& n) {
  if (n > Natural(0xffffffffULL)) throw NotACode("index out of range");
  return static_cast<VarIndex>(n);
}

inline Term decode_term(const Natural& c) {
  auto [tag, rest] = cantor_unpair(c);
  if (tag > 5) throw NotACode("not a term tag");
  switch (static_cast<unsigned>(tag)) {
    case 0:
      if (rest != 0) throw NotACode("Zero carries no payload");
      return Term::zero();
    case 1:
      if (rest != 0) throw NotACode("One carries no payload");
      return Term::one();
    case 2: return Term::var(small_index(rest));
    case 5: return Term::exp(decode_term(rest));
    default: {
      auto [a, b] = cantor_unpair(rest);
      Term l = decode_term(a), r = decode_term(b);
      return tag == 3 ? Term::plus(l, r) : Term::times(l, r);
    }
  }
}

inline SetRef decode_set(const Natural& c) {
  auto [k, i] = cantor_unpair(c);
  if (k > 2) throw NotACode("bad set kind");
  return SetRef{static_cast<SetKind>(static_cast<unsigned>(k)), small_index(i)};
}

inline Formula decode_formula(const Natural& c) {
  auto [tag, rest] = cantor_unpair(c);
  if (tag < 6 || tag > 15) throw NotACode("not a formula tag");
  auto k = static_cast<FormulaKind>(static_cast<unsigned>(tag));
  auto [a, b] = cantor_unpair(rest);
  switch (k) {
    case FormulaKind::Eq:
    case FormulaKind::Neq: return Formula::make_atom(k, {decode_term(a), decode_term(b)});
    case FormulaKind::In:
    case FormulaKind::NotIn: return Formula::make_atom(k, {decode_term(a)}, decode_set(b));
    case FormulaKind::And:
    case FormulaKind::Or: return Formula::make_binary(k, decode_formula(a), decode_formula(b));
    default: return Formula::make_quantifier(k, small_index(a), decode_formula(b));
  }
}

inline Sequent decode_sequent_payload(Natural rest) {
  std::vector<Formula> fs;
  while (rest != 0) {
    auto [x, xs] = cantor_unpair(rest - 1);
    fs.push_back(decode_formula(x));
    rest = xs;
  }
  for (std::size_t i = 1; i < fs.size(); ++i)
    if (!(fs[i - 1] < fs[i])) throw NotACode("sequent list is not canonical");
  return Sequent(fs);
}
}  // namespace detail

inline Decoded decode(const GodelCode& c) {
  if (c < 0) throw NotACode("negative");
  auto [tag, rest] = cantor_unpair(c);
  if (tag <= 5) return detail::decode_term(c);
  if (tag <= 15) return detail::decode_formula(c);
  if (tag == kSequentTag) return detail::decode_sequent_payload(rest);
  throw NotACode("unknown tag " + tag.str());
}

inline Formula decode_formula(const GodelCode& c) {
  auto d = decode(c);
  if (auto* f = std::get_if<Formula>(&d)) return *f;
  throw NotACode("code does not denote a formula");
}
inline Sequent decode_sequent(const GodelCode& c) {
  auto d = decode(c);
  if (auto* s = std::get_if<Sequent>(&d)) return *s;
  throw NotACode("code does not denote a sequent");
}
inline Term decode_term(const GodelCode& c) {
  auto d = decode(c);
  if (auto* t = std::get_if<Term>(&d)) return *t;
  throw NotACode("code does not denote a term");
}

// Tag table for --version and documentation.
inline const std::vector<std::pair<std::string, unsigned>>& tag_table() {
  static const std::vector<std::pair<std::string, unsigned>> t = {
      {"Zero", 0},      {"One", 1},        {"Var", 2},       {"Plus", 3},       {"Times", 4},  {"Exp", 5},
      {"Eq", 6},        {"Neq", 7},        {"In", 8},        {"NotIn", 9},      {"And", 10},   {"Or", 11},
      {"ForallNum", 12}, {"ExistsNum", 13}, {"ForallSet", 14}, {"ExistsSet", 15}, {"Sequent", 16}};
  return t;
}

}  // namespace omegalogic
