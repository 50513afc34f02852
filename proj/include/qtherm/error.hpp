#pragma once

#include <stdexcept>
#include <string>

namespace qtherm {

/// Argument outside the domain of a function (beta <= 0, E < 0, x <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Argument too close to a pole of a gamma-function expression.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Result magnitude exceeds the double range; use the log-domain variant.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// An iterative procedure (series, quadrature, root solve) did not reach its
/// tolerance. Carries the best estimate available when it gave up.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_estimate,
                   double error_estimate)
      : std::runtime_error(what),
        best_estimate_(best_estimate),
        error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

}  // namespace qtherm
