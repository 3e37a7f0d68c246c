#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace omegalogic {

// GMP-backed: codes of numerals grow fast and unpairing needs a quick isqrt
using Natural = boost::multiprecision::mpz_int;

inline Natural cantor_pair(const Natural& a, const Natural& b) {
  Natural s = a + b;
  return s * (s + 1) / 2 + b;
}

inline std::pair<Natural, Natural> cantor_unpair(const Natural& z) {
  Natural w = (boost::multiprecision::sqrt(Natural(8 * z + 1)) - 1) / 2;
  Natural t = w * (w + 1) / 2;
  Natural b = z - t;
  return {w - b, b};
}

inline std::optional<std::uint64_t> to_u64(const Natural& n) {
  if (n < 0 || n > Natural(std::numeric_limits<std::uint64_t>::max())) return std::nullopt;
  return static_cast<std::uint64_t>(n);
}

inline std::string to_string(const Natural& n) { return n.str(); }

inline Natural parse_natural(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty natural");
  for (char c : s)
    if (c < '0' || c > '9') throw std::invalid_argument("not a natural: " + s);
  return Natural(s);
}

}  // namespace omegalogic
