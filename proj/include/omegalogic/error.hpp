#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace omegalogic {

// Root of every error the library throws. `kind()` is the stable name used in
// reports and by the CLI; the message is free text.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define OMEGALOGIC_ERROR(Name)                                      \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& msg) : Error(#Name, msg) {}    \
  };

OMEGALOGIC_ERROR(NotACode)
OMEGALOGIC_ERROR(UnboundVariable)
OMEGALOGIC_ERROR(UnresolvedSymbol)
OMEGALOGIC_ERROR(AssignmentToBoundVariable)
OMEGALOGIC_ERROR(NotAWellOrder)
OMEGALOGIC_ERROR(UniverseTooLarge)
OMEGALOGIC_ERROR(OutsideUniverse)
OMEGALOGIC_ERROR(GeneratorPartial)
OMEGALOGIC_ERROR(NotTrue)
OMEGALOGIC_ERROR(NotSupported)
OMEGALOGIC_ERROR(NotAModelOfT)
OMEGALOGIC_ERROR(ValueTooLarge)
OMEGALOGIC_ERROR(FormatError)

#undef OMEGALOGIC_ERROR

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t pos, const std::string& msg)
      : Error("SyntaxError", "at offset " + std::to_string(pos) + ": " + msg), pos_(pos) {}
  std::size_t position() const noexcept { return pos_; }

 private:
  std::size_t pos_;
};

class CounterexampleFound : public Error {
 public:
  explicit CounterexampleFound(std::uint64_t n)
      : Error("CounterexampleFound", "instance n=" + std::to_string(n) + " is false"), n_(n) {}
  std::uint64_t instance() const noexcept { return n_; }

 private:
  std::uint64_t n_;
};

}  // namespace omegalogic
