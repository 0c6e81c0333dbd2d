#pragma once

#include <stdexcept>
#include <string>

namespace qcs {

/// Input outside the mathematical domain of an operation (q <= 1, t < 0,
/// Mandel parameter at the origin, non-finite labels, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A quantity does not fit in double precision; use the log-domain variant.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// A series failed to meet its stopping rule within the term cap.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integrator could not reach the requested tolerance.
class ToleranceError : public std::runtime_error {
 public:
  ToleranceError(const std::string& what, double best_estimate, double error_estimate)
      : std::runtime_error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

/// Operator/state dimensions disagree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed command line or sweep specification.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace qcs
