#pragma once

#include <cstddef>
#include <functional>

namespace qtherm {

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t evaluations = 0;
};

using RealFunction = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod 7/15 on [a, b]. Bisects the interval with
/// the largest |K15 - G7| until the summed estimate is below
/// max(abs_tol, rel_tol * |value|).
///
/// Throws ConvergenceError (carrying the best estimate) after max_subdivisions.
QuadratureResult integrate_interval(const RealFunction& f, double a, double b,
                                    double abs_tol, double rel_tol = 0.0,
                                    std::size_t max_subdivisions = 10000);

struct SemiInfiniteOptions {
  /// Truncation point; the integral over [upper, inf) is not computed.
  double upper = 50.0;
  /// Caller-supplied analytic bound on the integral over [upper, inf),
  /// added to the error estimate.
  double tail_bound = 0.0;
  /// Integrate in t = sqrt(E); removes E^(+-1/2) endpoint behaviour at 0.
  bool sqrt_endpoint = true;
  double rel_tol = 0.0;
  std::size_t max_subdivisions = 10000;
};

/// Integral of f over [0, inf), truncated at opts.upper.
QuadratureResult integrate_semiinfinite(const RealFunction& f, double tol,
                                        const SemiInfiniteOptions& opts = {});

}  // namespace qtherm
