#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace stochgeo {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t actual)
      : Error("dimension mismatch: expected " + std::to_string(expected) +
              ", got " + std::to_string(actual)) {}
};

class UnboundedError : public Error {
 public:
  UnboundedError() : Error("unbounded") {}
};

// Raised when an input text (body spec, polytope file, config) is malformed.
// `position` is a 1-based line number or character offset, depending on the
// input kind; the message always names which.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace stochgeo
