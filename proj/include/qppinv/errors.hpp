#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qppinv {

// Argument outside a function's documented domain (e.g. N > 2^50, k > 50).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A residue that was required to be invertible mod N is not.
class UnitError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller broke a precondition: mismatched moduli, tau out of range, bad block length.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested exhaustive computation exceeds the supported size.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal mathematical invariant failed. Indicates a bug or an invalid
// QPP that slipped past validation.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qppinv
