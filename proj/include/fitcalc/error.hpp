#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fitcalc {

// Base of every error the library throws on bad input or failed computation.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands live over different rings (or a variable is foreign to a ring).
class RingMismatch : public Error {
 public:
  using Error::Error;
};

// Malformed polynomial text or problem file. `position` is a 0-based offset
// into the offending text (or line number for problem files, see `line`).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position, std::size_t line = 0)
      : Error(what), position_(position), line_(line) {}

  std::size_t position() const noexcept { return position_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t position_;
  std::size_t line_;
};

// A mathematical precondition failed (non-finite map, non-principal image, ...).
class ComputationError : public Error {
 public:
  using Error::Error;
};

// Buchberger ran past its reduction-step budget.
class BudgetExceeded : public ComputationError {
 public:
  BudgetExceeded(const std::string& what, unsigned long long steps)
      : ComputationError(what), steps_(steps) {}

  unsigned long long steps() const noexcept { return steps_; }

 private:
  unsigned long long steps_;
};

}  // namespace fitcalc
