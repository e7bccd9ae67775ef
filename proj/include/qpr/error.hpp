#pragma once

#include <stdexcept>
#include <string>

namespace qpr {

/// Raised when an argument lies outside the domain an operation is defined on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a series or product fails to pass its tail test within the
/// configured term cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a quantity cannot be represented as an ordinary double and the
/// caller should switch to a normalized (log-polar) evaluation path.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

}  // namespace qpr
