#pragma once

#include <stdexcept>
#include <string>

namespace hypernorm {

// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value fails a documented precondition (bad exponents, empty support
// where support is required, parameter out of range, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Shapes disagree: mismatched axis counts, dims, or grid sizes.
class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// An evaluation would exceed the configured budget. Carries the cheapest
// cost estimate found so the caller can decide whether to raise the budget.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, double estimated_cost)
      : Error(what), estimated_cost_(estimated_cost) {}
  double estimated_cost() const { return estimated_cost_; }

 private:
  double estimated_cost_ = 0.0;
};

// Malformed serialized input, with a 1-based line/column position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(what), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_ = 0;
  int column_ = 0;
};

}  // namespace hypernorm
