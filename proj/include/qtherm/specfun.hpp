#pragma once

#include <cstddef>
#include <span>

namespace qtherm::specfun {

/// Partial sum of a series together with a bound on the neglected tail.
struct SeriesResult {
  double value = 0.0;
  std::size_t terms_used = 0;
  double tail_bound = 0.0;  // absolute, >= 0
};

/// log|Gamma(x)| and the sign of Gamma(x).
struct SignedLog {
  double log_abs = 0.0;
  int sign = 1;
};

/// ln Gamma(x) for x > 0. Stirling series after an upward shift to x >= 15.
double log_gamma(double x);

/// ln|Gamma(x)| with sign for any real x that is not a pole (0, -1, -2, ...).
/// Negative arguments go through the reflection formula.
SignedLog log_abs_gamma(double x);

/// psi(x) = d/dx ln Gamma(x), x > 0.
double digamma(double x);

/// psi'(x), x > 0.
double trigamma(double x);

/// Rising factorial a (a+1) ... (a+n-1); n = 0 gives 1.
/// Throws OverflowError when the product leaves the double range.
double pochhammer(double a, unsigned n);

/// ln Gamma(x+a) - ln Gamma(x+b), stable for large x (no cancellation of the
/// two large log-gammas). Requires x > 0, x+a > 0, x+b > 0.
double log_gamma_ratio(double x, double a, double b);

/// Generalized hypergeometric pFq at unit argument.
///
/// Sums the terms by direct recursion. When p = q+1 the terms only decay
/// like n^-(1+s), s = sum(denominators) - sum(numerators), so after N terms the
/// remainder is added by Euler-Maclaurin on the gamma-function continuation of
/// the term; tail_bound covers the EM remainder and the quadrature error of the
/// tail integral. Terminating series (a numerator in {0, -1, -2, ...}) are
/// summed exactly.
///
/// Throws DomainError for tol <= 0 or a denominator in {0, -1, ...};
/// ConvergenceError when s <= 0, p > q+1, or 1e6 terms are not enough.
SeriesResult hyp_pfq_at_1(std::span<const double> numerators,
                          std::span<const double> denominators, double tol);

}  // namespace qtherm::specfun
