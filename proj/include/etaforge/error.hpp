#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace etaforge {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated (non-divisor, n = 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// A computed result contradicts a statement the library relies on
// (e.g. a weight-1/2 projection that is not a single eta factor).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace etaforge
