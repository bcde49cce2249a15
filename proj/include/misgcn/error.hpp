#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace misgcn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad file contents, out-of-range indices, inconsistent
/// shapes. Carries the 1-based line number when one is known (0 otherwise).
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A caller broke an operation's precondition (dependent set passed where an
/// independent one is required, rule applied where it does not hold, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// A resource guard refused the request (e.g. dense complement too large).
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Training produced a non-finite loss.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace misgcn
