#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdsw {

/// Malformed input text. `line()` is 1-based; 0 when unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Well-formed input that violates a domain invariant (death < birth, non-finite value).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Precondition violation on an argument (size caps, non-positive scales, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The exact sweep met coincident critical angles it cannot order.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Not enough members in some class to build a stratified split.
class StratificationError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

/// A pairwise evaluation inside a Gram/distance computation failed.
class PairEvaluationError : public std::runtime_error {
 public:
  PairEvaluationError(std::size_t i, std::size_t j, const std::string& what)
      : std::runtime_error("pair (" + std::to_string(i) + ", " + std::to_string(j) + "): " + what),
        i_(i), j_(j) {}
  std::size_t first() const noexcept { return i_; }
  std::size_t second() const noexcept { return j_; }

 private:
  std::size_t i_, j_;
};

}  // namespace pdsw
