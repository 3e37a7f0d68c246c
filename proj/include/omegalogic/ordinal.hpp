#pragma once

// Ordinals below ε0 in Cantor normal form: Σ ω^{e_i}·c_i with e_0 > e_1 > ...

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"

namespace omegalogic {

class Ordinal {
 public:
  Ordinal() = default;  // zero

  static Ordinal zero() { return {}; }
  static Ordinal finite(std::uint64_t n) {
    Ordinal o;
    if (n) o.push(Ordinal(), n);
    return o;
  }
  static Ordinal omega_power(const Ordinal& e, std::uint64_t c = 1) {
    Ordinal o;
    if (c) o.push(e, c);
    return o;
  }
  static Ordinal omega() { return omega_power(finite(1)); }

  bool is_zero() const noexcept { return exps_.empty(); }
  bool is_finite() const noexcept { return exps_.empty() || (exps_.size() == 1 && exps_[0].is_zero()); }
  std::uint64_t finite_value() const { return is_zero() ? 0 : coefs_.back(); }
  bool is_successor() const noexcept { return !exps_.empty() && exps_.back().is_zero(); }
  bool is_limit() const noexcept { return !exps_.empty() && !exps_.back().is_zero(); }
  std::size_t term_count() const noexcept { return exps_.size(); }
  const Ordinal& exponent(std::size_t i) const { return exps_.at(i); }
  std::uint64_t coefficient(std::size_t i) const { return coefs_.at(i); }

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
    std::size_t n = std::min(a.exps_.size(), b.exps_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (auto c = a.exps_[i] <=> b.exps_[i]; c != 0) return c;
      if (auto c = a.coefs_[i] <=> b.coefs_[i]; c != 0) return c;
    }
    return a.exps_.size() <=> b.exps_.size();
  }
  friend bool operator==(const Ordinal& a, const Ordinal& b) { return (a <=> b) == 0; }

  // ordinal (non-commutative) addition
  friend Ordinal operator+(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) return a;
    Ordinal r;
    const Ordinal& lead = b.exps_[0];
    for (std::size_t i = 0; i < a.exps_.size(); ++i) {
      auto c = a.exps_[i] <=> lead;
      if (c > 0) {
        r.push(a.exps_[i], a.coefs_[i]);
      } else {
        if (c == 0) {
          r.push(lead, a.coefs_[i] + b.coefs_[0]);
          for (std::size_t j = 1; j < b.exps_.size(); ++j) r.push(b.exps_[j], b.coefs_[j]);
          return r;
        }
        break;
      }
    }
    for (std::size_t j = 0; j < b.exps_.size(); ++j) r.push(b.exps_[j], b.coefs_[j]);
    return r;
  }

  Ordinal successor() const { return *this + finite(1); }

  Ordinal predecessor() const {
    if (!is_successor()) throw Error("OrdinalError", "no predecessor");
    Ordinal r = *this;
    if (--r.coefs_.back() == 0) {
      r.exps_.pop_back();
      r.coefs_.pop_back();
    }
    return r;
  }

  // n-th element of the standard fundamental sequence of a limit ordinal;
  // for successors returns the predecessor, so repeated application descends.
  Ordinal fundamental(std::uint64_t n) const {
    if (is_zero()) throw Error("OrdinalError", "zero has no fundamental sequence");
    if (is_successor()) return predecessor();
    Ordinal head = *this;
    Ordinal e = head.exps_.back();
    if (--head.coefs_.back() == 0) {
      head.exps_.pop_back();
      head.coefs_.pop_back();
    }
    Ordinal tail = e.is_successor() ? omega_power(e.predecessor(), n) : omega_power(e.fundamental(n));
    return head + tail;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < exps_.size(); ++i) {
      if (i) s += " + ";
      const Ordinal& e = exps_[i];
      std::uint64_t c = coefs_[i];
      if (e.is_zero()) {
        s += std::to_string(c);
        continue;
      }
      s += "w";
      if (!(e == finite(1))) s += "^" + (e.term_count() == 1 && e.is_finite() ? e.str() : "(" + e.str() + ")");
      if (c != 1) s += "*" + std::to_string(c);
    }
    return s;
  }

  static Ordinal parse(const std::string& text);

 private:
  void push(const Ordinal& e, std::uint64_t c) {
    exps_.push_back(e);
    coefs_.push_back(c);
  }
  std::vector<Ordinal> exps_;
  std::vector<std::uint64_t> coefs_;
};

namespace detail {
class OrdinalParser {
 public:
  explicit OrdinalParser(const std::string& s) : s_(s) {}
  Ordinal run() {
    Ordinal o = sum();
    skip();
    if (i_ != s_.size()) fail("trailing input");
    return o;
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
  [[noreturn]] void fail(const std::string& m) const { throw SyntaxError(i_, "ordinal: " + m); }
  void skip() {
    while (i_ < s_.size() && s_[i_] == ' ') ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  std::uint64_t number() {
    skip();
    std::size_t j = i_;
    while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
    if (j == i_) fail("expected a number");
    std::uint64_t v = std::stoull(s_.substr(i_, j - i_));
    i_ = j;
    return v;
  }
  Ordinal sum() {
    Ordinal o = term();
    while (eat('+')) o = o + term();
    return o;
  }
  Ordinal term() {
    skip();
    if (i_ < s_.size() && (s_[i_] == 'w' || s_[i_] == 'W')) {
      ++i_;
      Ordinal e = Ordinal::finite(1);
      if (eat('^')) {
        if (eat('(')) {
          e = sum();
          if (!eat(')')) fail("expected ')'");
        } else if (i_ < s_.size() && (s_[i_] == 'w' || s_[i_] == 'W')) {
          ++i_;
          e = Ordinal::omega();
        } else {
          e = Ordinal::finite(number());
        }
      }
      std::uint64_t c = 1;
      if (eat('*')) c = number();
      return Ordinal::omega_power(e, c);
    }
    return Ordinal::finite(number());
  }
};
}  // namespace detail

inline Ordinal Ordinal::parse(const std::string& text) { return detail::OrdinalParser(text).run(); }

}  // namespace omegalogic
