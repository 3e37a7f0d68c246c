#pragma once

// Text grammar for terms, formulas and sequents.
//
//   term    := sum ;  sum := prod ('+' prod)* ;  prod := prim ('*' prim)*
//   prim    := 0 | 1 | <decimal> | x<i> | name | exp '(' term ')' | '(' term ')'
//   formula := disj ('->' formula)?          (right associative, lowest)
//   disj    := conj ('|' conj)* ;  conj := unary ('&' unary)*
//   unary   := '~' unary | quant | '(' formula ')' | atom
//   quant   := (forall|exists) var [('<'|'<=') term] '.' formula
//   atom    := term ('='|'!='|'<'|'<=') term | term (in|notin) S
//   S       := X<i> | O<i> | C<i> | Name
//
// Decimal n >= 2 denotes numeral(n). Lowercase names other than keywords are
// first-order variables, capitalised ones set variables; names get the
// smallest indices not used explicitly in the input.

#include <cctype>
#include <sstream>
#include <string>
#include <unordered_map>
#include <variant>

#include "syntax.hpp"

namespace omegalogic {

inline constexpr const char* kGrammarVersion = "1";

// ---------------------------------------------------------------- printing

namespace detail {
inline void print_term(std::ostream& os, const Term& t, int ctx);  // ctx: 0 free, 1 plus-right, 2 times-operand

inline void print_term(std::ostream& os, const Term& t, int ctx) {
  if (auto n = as_numeral(t); n && *n >= 2) {
    os << *n;
    return;
  }
  switch (t.kind()) {
    case TermKind::Zero: os << '0'; return;
    case TermKind::One: os << '1'; return;
    case TermKind::Var: os << 'x' << t.var_index(); return;
    case TermKind::Exp:
      os << "exp(";
      print_term(os, t.left(), 0);
      os << ')';
      return;
    case TermKind::Plus: {
      bool paren = ctx != 0;
      if (paren) os << '(';
      print_term(os, t.left(), 0);
      os << " + ";
      print_term(os, t.right(), 1);
      if (paren) os << ')';
      return;
    }
    case TermKind::Times: {
      bool paren = ctx == 3;
      if (paren) os << '(';
      print_term(os, t.left(), 2);
      os << " * ";
      print_term(os, t.right(), 3);
      if (paren) os << ')';
      return;
    }
  }
}

inline void print_set(std::ostream& os, SetRef s) {
  os << (s.kind == SetKind::Var ? 'X' : s.kind == SetKind::Oracle ? 'O' : 'C') << s.index;
}

inline void print_formula(std::ostream& os, const Formula& f);

inline void print_operand(std::ostream& os, const Formula& f, bool paren) {
  if (paren) os << '(';
  print_formula(os, f);
  if (paren) os << ')';
}

inline void print_formula(std::ostream& os, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::Neq:
      print_term(os, f.lhs(), 0);
      os << (f.kind() == FormulaKind::Eq ? " = " : " != ");
      print_term(os, f.rhs(), 0);
      return;
    case FormulaKind::In:
    case FormulaKind::NotIn:
      print_term(os, f.lhs(), 0);
      os << (f.kind() == FormulaKind::In ? " in " : " notin ");
      print_set(os, f.set());
      return;
    case FormulaKind::And:
      print_operand(os, f.left(), f.left().kind() == FormulaKind::Or || f.left().is_quantifier());
      os << " & ";
      print_operand(os, f.right(), !f.right().is_atomic());
      return;
    case FormulaKind::Or:
      print_operand(os, f.left(), f.left().is_quantifier());
      os << " | ";
      print_operand(os, f.right(), f.right().kind() == FormulaKind::Or || f.right().is_quantifier());
      return;
    case FormulaKind::ForallNum: os << "forall x" << f.bound_var() << ". "; break;
    case FormulaKind::ExistsNum: os << "exists x" << f.bound_var() << ". "; break;
    case FormulaKind::ForallSet: os << "forall X" << f.bound_var() << ". "; break;
    case FormulaKind::ExistsSet: os << "exists X" << f.bound_var() << ". "; break;
  }
  print_formula(os, f.body());
}
}  // namespace detail

inline std::string print(const Term& t) {
  std::ostringstream os;
  detail::print_term(os, t, 0);
  return os.str();
}
inline std::string print(const Formula& f) {
  std::ostringstream os;
  detail::print_formula(os, f);
  return os.str();
}
inline std::string print(SetRef s) {
  std::ostringstream os;
  detail::print_set(os, s);
  return os.str();
}
inline std::string print(const Sequent& s) {
  if (s.empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += print(s[i]);
  }
  return out;
}

// ---------------------------------------------------------------- parsing

namespace detail {

enum class Tok { End, Num, Ident, Plus, Star, Eq, Neq, Lt, Le, Amp, Bar, Tilde, Arrow, Dot, LParen, RParen, Comma, LBrace, RBrace };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t pos = 0;
};

inline std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t;
    t.pos = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      t.kind = Tok::Num;
      t.text = s.substr(i, j - i);
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
      t.kind = Tok::Ident;
      t.text = s.substr(i, j - i);
      i = j;
    } else {
      auto two = s.substr(i, 2);
      if (two == "!=") t.kind = Tok::Neq, i += 2;
      else if (two == "<=") t.kind = Tok::Le, i += 2;
      else if (two == "->") t.kind = Tok::Arrow, i += 2;
      else {
        switch (c) {
          case '+': t.kind = Tok::Plus; break;
          case '*': t.kind = Tok::Star; break;
          case '=': t.kind = Tok::Eq; break;
          case '<': t.kind = Tok::Lt; break;
          case '&': t.kind = Tok::Amp; break;
          case '|': t.kind = Tok::Bar; break;
          case '~': t.kind = Tok::Tilde; break;
          case '.': t.kind = Tok::Dot; break;
          case '(': t.kind = Tok::LParen; break;
          case ')': t.kind = Tok::RParen; break;
          case ',': t.kind = Tok::Comma; break;
          case '{': t.kind = Tok::LBrace; break;
          case '}': t.kind = Tok::RBrace; break;
          default: throw SyntaxError(i, std::string("unexpected character '") + c + "'");
        }
        ++i;
      }
      t.text = s.substr(t.pos, i - t.pos);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.pos = s.size();
  out.push_back(end);
  return out;
}

inline bool is_keyword(const std::string& w) {
  return w == "forall" || w == "exists" || w == "exp" || w == "in" || w == "notin";
}

// x<digits>, X<digits>, O<digits>, C<digits>
inline std::optional<std::pair<char, VarIndex>> indexed_name(const std::string& w) {
  if (w.size() < 2) return std::nullopt;
  char p = w[0];
  if (p != 'x' && p != 'X' && p != 'O' && p != 'C') return std::nullopt;
  for (std::size_t i = 1; i < w.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(w[i]))) return std::nullopt;
  if (w.size() > 10) return std::nullopt;
  unsigned long long v = std::stoull(w.substr(1));
  if (v > 0xffffffffULL) return std::nullopt;
  return std::make_pair(p, static_cast<VarIndex>(v));
}

class Parser {
 public:
  explicit Parser(const std::string& src) : toks_(lex(src)) { reserve_explicit(); }

  Term parse_term_only() {
    Term t = term();
    expect_end();
    return t;
  }
  Formula parse_formula_only() {
    Formula f = formula();
    expect_end();
    return f;
  }
  std::variant<Term, Formula> parse_any() {
    std::size_t save = i_;
    try {
      Term t = term();
      if (peek().kind == Tok::End) return t;
    } catch (const SyntaxError&) {
    }
    i_ = save;
    return parse_formula_only();
  }
  Sequent parse_sequent() {
    std::vector<Formula> fs;
    bool braces = peek().kind == Tok::LBrace;
    if (braces) advance();
    Tok close = braces ? Tok::RBrace : Tok::End;
    if (peek().kind != close) {
      fs.push_back(formula());
      while (peek().kind == Tok::Comma) {
        advance();
        fs.push_back(formula());
      }
    }
    if (braces) expect(Tok::RBrace, "'}'");
    expect_end();
    return Sequent(std::move(fs));
  }

 private:
  std::vector<Token> toks_;
  std::size_t i_ = 0;
  std::set<VarIndex> used_num_, used_set_;
  std::unordered_map<std::string, VarIndex> named_num_, named_set_;

  void reserve_explicit() {
    for (const auto& t : toks_) {
      if (t.kind != Tok::Ident) continue;
      if (auto n = indexed_name(t.text)) {
        if (n->first == 'x') used_num_.insert(n->second);
        if (n->first == 'X') used_set_.insert(n->second);
      }
    }
  }
  VarIndex name_index(const std::string& w, bool set) {
    auto& table = set ? named_set_ : named_num_;
    auto& used = set ? used_set_ : used_num_;
    auto it = table.find(w);
    if (it != table.end()) return it->second;
    VarIndex v = 0;
    while (used.count(v)) ++v;
    used.insert(v);
    table.emplace(w, v);
    return v;
  }

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  const Token& advance() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    throw SyntaxError(t.pos, what + (t.kind == Tok::End ? " at end of input" : ", found '" + t.text + "'"));
  }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    advance();
  }
  void expect_end() {
    if (peek().kind != Tok::End) fail("unexpected trailing input");
  }

  // term grammar
  Term term() {
    Term t = product();
    while (peek().kind == Tok::Plus) {
      advance();
      t = Term::plus(t, product());
    }
    return t;
  }
  Term product() {
    Term t = primary();
    while (peek().kind == Tok::Star) {
      advance();
      t = Term::times(t, primary());
    }
    return t;
  }
  Term primary() {
    const Token& t = peek();
    if (t.kind == Tok::Num) {
      advance();
      if (t.text.size() > 9) throw SyntaxError(t.pos, "numeral too large");
      std::uint64_t n = std::stoull(t.text);
      if (n == 0) return Term::zero();
      if (n == 1) return Term::one();
      return numeral(n);
    }
    if (t.kind == Tok::LParen) {
      advance();
      Term inner = term();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "exp") {
        advance();
        expect(Tok::LParen, "'(' after exp");
        Term inner = term();
        expect(Tok::RParen, "')'");
        return Term::exp(inner);
      }
      if (auto v = num_var_token(t)) {
        advance();
        return Term::var(*v);
      }
    }
    fail("expected a term");
  }
  std::optional<VarIndex> num_var_token(const Token& t) {
    if (t.kind != Tok::Ident || is_keyword(t.text)) return std::nullopt;
    if (auto n = indexed_name(t.text)) {
      if (n->first == 'x') return n->second;
      return std::nullopt;
    }
    if (std::islower(static_cast<unsigned char>(t.text[0]))) return name_index(t.text, false);
    return std::nullopt;
  }
  std::optional<SetRef> set_token(const Token& t) {
    if (t.kind != Tok::Ident || is_keyword(t.text)) return std::nullopt;
    if (auto n = indexed_name(t.text)) {
      if (n->first == 'X') return SetRef::var(n->second);
      if (n->first == 'O') return SetRef::oracle(n->second);
      if (n->first == 'C') return SetRef::model(n->second);
      return std::nullopt;
    }
    if (std::isupper(static_cast<unsigned char>(t.text[0]))) return SetRef::var(name_index(t.text, true));
    return std::nullopt;
  }

  // formula grammar
  Formula formula() {
    Formula f = disjunction();
    if (peek().kind == Tok::Arrow) {
      advance();
      Formula g = formula();
      return Formula::disj(negate(f), g);
    }
    return f;
  }
  Formula disjunction() {
    Formula f = conjunction();
    while (peek().kind == Tok::Bar) {
      advance();
      f = Formula::disj(f, conjunction());
    }
    return f;
  }
  Formula conjunction() {
    Formula f = unary();
    while (peek().kind == Tok::Amp) {
      advance();
      f = Formula::conj(f, unary());
    }
    return f;
  }
  static bool continues_term(Tok k) {
    return k == Tok::Plus || k == Tok::Star || k == Tok::Eq || k == Tok::Neq || k == Tok::Lt || k == Tok::Le;
  }
  Formula unary() {
    const Token& t = peek();
    if (t.kind == Tok::Tilde) {
      advance();
      return negate(unary());
    }
    if (t.kind == Tok::Ident && (t.text == "forall" || t.text == "exists")) return quantifier();
    if (t.kind == Tok::LParen) {
      std::size_t save = i_;
      try {
        advance();
        Formula f = formula();
        expect(Tok::RParen, "')'");
        const Token& nx = peek();
        bool term_like = continues_term(nx.kind) ||
                         (nx.kind == Tok::Ident && (nx.text == "in" || nx.text == "notin"));
        if (!term_like) return f;
      } catch (const SyntaxError&) {
      }
      i_ = save;
    }
    return atom();
  }
  Formula quantifier() {
    bool universal = advance().text == "forall";
    const Token& vt = peek();
    if (auto v = num_var_token(vt)) {
      advance();
      std::optional<Term> bound;
      bool strict = true;
      if (peek().kind == Tok::Lt || peek().kind == Tok::Le) {
        strict = advance().kind == Tok::Lt;
        bound = term();
      }
      expect(Tok::Dot, "'.' after quantified variable");
      Formula body = formula();
      if (bound) return universal ? bounded_forall(*v, *bound, body, strict) : bounded_exists(*v, *bound, body, strict);
      return universal ? Formula::forall_num(*v, body) : Formula::exists_num(*v, body);
    }
    if (auto s = set_token(vt); s && s->kind == SetKind::Var) {
      advance();
      expect(Tok::Dot, "'.' after quantified variable");
      Formula body = formula();
      return universal ? Formula::forall_set(s->index, body) : Formula::exists_set(s->index, body);
    }
    fail("expected a variable after quantifier");
  }
  Formula atom() {
    Term l = term();
    const Token& op = peek();
    switch (op.kind) {
      case Tok::Eq: advance(); return Formula::eq(l, term());
      case Tok::Neq: advance(); return Formula::neq(l, term());
      case Tok::Lt: advance(); return make_lt(l, term());
      case Tok::Le: advance(); return make_le(l, term());
      case Tok::Ident:
        if (op.text == "in" || op.text == "notin") {
          bool in = advance().text == "in";
          auto s = set_token(peek());
          if (!s) fail("expected a set symbol");
          advance();
          return in ? Formula::in(l, *s) : Formula::notin(l, *s);
        }
        break;
      default: break;
    }
    fail("expected a relation (=, !=, <, <=, in, notin)");
  }
};
}  // namespace detail

inline Term parse_term(const std::string& s) { return detail::Parser(s).parse_term_only(); }
inline Formula parse_formula(const std::string& s) { return detail::Parser(s).parse_formula_only(); }
inline std::variant<Term, Formula> parse(const std::string& s) { return detail::Parser(s).parse_any(); }
inline Sequent parse_sequent(const std::string& s) { return detail::Parser(s).parse_sequent(); }

}  // namespace omegalogic
