#pragma once

#include <stdexcept>
#include <string>

namespace zb {

// Argument outside the physical domain of an operation (non-positive field,
// negative Landau index, unnormalized state, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A label whose Johnson-Lippmann spinor has vanishing norm.
class NonexistentState : public DomainError {
 public:
  using DomainError::DomainError;
};

// Matrix element requested between levels that violate |n - n'| = 1.
class ForbiddenTransition : public DomainError {
 public:
  using DomainError::DomainError;
};

// Under- or over-determined set of fixed trap quantities.
class ConstraintError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Landau index beyond the tabulated range of a decomposition.
class TruncationError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Quadrature or basis truncation did not reach the requested tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inconsistent or malformed run configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace zb
