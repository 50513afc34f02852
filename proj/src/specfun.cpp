#include "qtherm/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "qtherm/error.hpp"
#include "qtherm/gauss_legendre.hpp"

namespace qtherm::specfun {
namespace {

// B_2, B_4, ..., B_22
constexpr std::array<double, 11> kBernoulli = {
    1.0 / 6.0,         -1.0 / 30.0,    1.0 / 42.0,          -1.0 / 30.0,
    5.0 / 66.0,        -691.0 / 2730.0, 7.0 / 6.0,          -3617.0 / 510.0,
    43867.0 / 798.0,   -174611.0 / 330.0, 854513.0 / 138.0};

constexpr double kStirlingShift = 15.0;
constexpr double kPsiShift = 6.0;

// Stirling correction ln Gamma(z) - [(z-1/2) ln z - z + ln(2 pi)/2], z >= 15.
double stirling_correction(double z) {
  const double zinv = 1.0 / z;
  const double z2 = zinv * zinv;
  double zpow = zinv;
  double sum = 0.0;
  for (int k = 1; k <= 8; ++k) {
    sum += kBernoulli[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * zpow;
    zpow *= z2;
  }
  return sum;
}

double sin_pi(double x) {
  // reduce to [-1, 1) so that exact integers give exact zeros
  double r = std::fmod(x, 2.0);
  if (r < -1.0) r += 2.0;
  if (r >= 1.0) r -= 2.0;
  if (r == 0.0 || r == -1.0) return 0.0;
  return std::sin(std::numbers::pi * r);
}

bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

// ln Gamma(x+a) - ln Gamma(x+b) - (a-b) ln x.  Vanishes like O(1/x).
double log_gamma_ratio_remainder(double x, double a, double b) {
  if (std::isinf(x)) return 0.0;
  if (x >= 1.0 && std::min(x + a, x + b) >= kStirlingShift) {
    const double la = std::log1p(a / x);
    const double lb = std::log1p(b / x);
    return (x - 0.5) * (la - lb) + a * la - b * lb - (a - b) +
           stirling_correction(x + a) - stirling_correction(x + b);
  }
  return log_gamma(x + a) - log_gamma(x + b) - (a - b) * std::log(x);
}

// Compensated summation.
struct Neumaier {
  double sum = 0.0;
  double comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

struct TailEstimate {
  double factor;     // sum_{k>=N} g(k) / g(N)
  double rel_bound;  // bound on the error of factor
};

// Euler-Maclaurin estimate of sum_{k>=N} g(k)/g(N) where
// g(x) = prod Gamma(x+a_i)/Gamma(x+b_i) (up to constants) ~ x^-(1+s).
TailEstimate euler_maclaurin_tail(const std::vector<double>& a,
                                  const std::vector<double>& b, double s,
                                  double n) {
  double d_at_n = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d_at_n += log_gamma_ratio_remainder(n, a[i], b[i]);

  // x = n v^(-1/s) maps [N, inf) onto (0, 1] and flattens the power law.
  auto integrand = [&](double v) {
    const double log_growth = -std::log(v) / s;
    const double x = log_growth > 700.0 ? std::numeric_limits<double>::infinity()
                                        : n * std::exp(log_growth);
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
      d += log_gamma_ratio_remainder(x, a[i], b[i]);
    return std::exp(d - d_at_n);
  };

  // panels graded toward both ends: v^(1/s) behaviour near 0, and for small s
  // the O(1/x) correction is squeezed into a layer of width ~s below v = 1
  std::vector<double> breaks = {0.0};
  constexpr int kLevels = 60;
  for (int k = kLevels; k >= 1; --k) breaks.push_back(std::ldexp(1.0, -k));
  for (int k = 2; k <= kLevels; ++k) breaks.push_back(1.0 - std::ldexp(1.0, -k));
  breaks.push_back(1.0);
  auto composite = [&](std::size_t order) {
    const auto& rule = gauss_legendre(order);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
      const double lo = breaks[k], hi = breaks[k + 1];
      const double half = 0.5 * (hi - lo);
      const double mid = 0.5 * (hi + lo);
      double panel = 0.0;
      for (std::size_t j = 0; j < rule.nodes.size(); ++j)
        panel += rule.weights[j] * integrand(mid + half * rule.nodes[j]);
      total += half * panel;
    }
    return total;
  };
  const double coarse = composite(12);
  const double fine = composite(24);
  const double integral = (n / s) * fine;
  const double quad_err = (n / s) * std::abs(fine - coarse);

  double dh = 0.0;  // h'(N)
  for (std::size_t i = 0; i < a.size(); ++i)
    dh += digamma(n + a[i]) - digamma(n + b[i]);

  const double factor = integral + 0.5 - dh / 12.0;
  // next Euler-Maclaurin term, |g'''|/720, with g''' from the power-law
  // asymptote and a safety factor of 2
  const double em_rem =
      2.0 * (1.0 + s) * (2.0 + s) * (3.0 + s) / (720.0 * n * n * n);
  return {factor, em_rem + quad_err};
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("log_gamma: argument must be positive and finite");
  if (x == 1.0 || x == 2.0) return 0.0;
  double shift_log = 0.0;
  if (x < kStirlingShift) {
    double prod = 1.0;
    while (x < kStirlingShift) {
      prod *= x;
      x += 1.0;
    }
    shift_log = std::log(prod);
  }
  constexpr double half_log_two_pi = 0.91893853320467274178032973640562;
  return (x - 0.5) * std::log(x) - x + half_log_two_pi + stirling_correction(x) -
         shift_log;
}

SignedLog log_abs_gamma(double x) {
  if (!std::isfinite(x)) throw DomainError("log_abs_gamma: non-finite argument");
  if (is_nonpositive_integer(x))
    throw PoleError("log_abs_gamma: pole of Gamma at a non-positive integer");
  if (x > 0.0) return {log_gamma(x), 1};
  // Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
  const double s = sin_pi(x);
  return {std::log(std::numbers::pi) - std::log(std::abs(s)) - log_gamma(1.0 - x),
          s > 0.0 ? 1 : -1};
}

double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("digamma: argument must be positive and finite");
  double acc = 0.0;
  while (x < kPsiShift) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double xinv = 1.0 / x;
  const double x2 = xinv * xinv;
  double xpow = x2;
  double series = 0.0;
  for (int k = 1; k <= 10; ++k) {
    series += kBernoulli[k - 1] / (2.0 * k) * xpow;
    xpow *= x2;
  }
  return acc + std::log(x) - 0.5 * xinv - series;
}

double trigamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("trigamma: argument must be positive and finite");
  double acc = 0.0;
  while (x < kPsiShift) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  const double xinv = 1.0 / x;
  const double x2 = xinv * xinv;
  double xpow = x2 * xinv;
  double series = 0.0;
  for (int k = 1; k <= 10; ++k) {
    series += kBernoulli[k - 1] * xpow;
    xpow *= x2;
  }
  return acc + xinv + 0.5 * x2 + series;
}

double pochhammer(double a, unsigned n) {
  if (!std::isfinite(a)) throw DomainError("pochhammer: non-finite argument");
  double prod = 1.0;
  for (unsigned k = 0; k < n; ++k) {
    prod *= a + k;
    if (prod == 0.0) return 0.0;
    if (!std::isfinite(prod))
      throw OverflowError("pochhammer: result exceeds double range");
  }
  return prod;
}

double log_gamma_ratio(double x, double a, double b) {
  if (!(x > 0.0) || !(x + a > 0.0) || !(x + b > 0.0))
    throw DomainError("log_gamma_ratio: arguments must be positive");
  return (a - b) * std::log(x) + log_gamma_ratio_remainder(x, a, b);
}

SeriesResult hyp_pfq_at_1(std::span<const double> numerators,
                          std::span<const double> denominators, double tol) {
  if (!(tol > 0.0)) throw DomainError("hyp_pfq_at_1: tol must be positive");
  for (double v : numerators)
    if (!std::isfinite(v)) throw DomainError("hyp_pfq_at_1: non-finite parameter");
  for (double v : denominators)
    if (!std::isfinite(v)) throw DomainError("hyp_pfq_at_1: non-finite parameter");

  auto ratio = [&](double n) {
    double r = 1.0 / (n + 1.0);
    for (double v : numerators) r *= v + n;
    for (double v : denominators) r /= v + n;
    return r;
  };

  // terminating series: the first numerator in {0, -1, ...} cuts it off
  double cutoff = std::numeric_limits<double>::infinity();
  for (double v : numerators)
    if (is_nonpositive_integer(v)) cutoff = std::min(cutoff, -v);
  for (double v : denominators)
    if (is_nonpositive_integer(v) && !(cutoff <= -v))
      throw DomainError("hyp_pfq_at_1: denominator parameter is a pole");

  if (std::isfinite(cutoff)) {
    Neumaier sum;
    double term = 1.0;
    const auto last = static_cast<std::size_t>(cutoff);
    for (std::size_t n = 0; n <= last; ++n) {
      sum.add(term);
      term *= ratio(static_cast<double>(n));
    }
    return {sum.value(), last + 1, 0.0};
  }

  const std::size_t p = numerators.size();
  const std::size_t q = denominators.size();
  constexpr std::size_t kMaxTerms = 1'000'000;

  if (p > q + 1)
    throw ConvergenceError("hyp_pfq_at_1: p > q+1 series diverges at unit argument",
                           std::numeric_limits<double>::quiet_NaN(),
                           std::numeric_limits<double>::infinity());

  double scale = 1.0;
  for (double v : numerators) scale = std::max(scale, std::abs(v));
  for (double v : denominators) scale = std::max(scale, std::abs(v));

  if (p < q + 1) {
    // factorial-type decay: stop once the geometric majorant of the tail is small
    Neumaier sum;
    double term = 1.0;
    for (std::size_t n = 0; n < kMaxTerms; ++n) {
      sum.add(term);
      const double r = ratio(static_cast<double>(n));
      term *= r;
      if (static_cast<double>(n) > 2.0 * scale + 2.0 && std::abs(r) < 0.5) {
        const double bound = std::abs(term) / (1.0 - std::abs(r));
        if (bound <= tol) return {sum.value() + term, n + 2, bound};
      }
    }
    throw ConvergenceError("hyp_pfq_at_1: term limit exceeded", sum.value(),
                           std::abs(term));
  }

  double s = 0.0;
  for (double v : denominators) s += v;
  for (double v : numerators) s -= v;
  if (!(s > 0.0))
    throw ConvergenceError(
        "hyp_pfq_at_1: sum(denominators) - sum(numerators) must be positive",
        std::numeric_limits<double>::quiet_NaN(),
        std::numeric_limits<double>::infinity());

  // pair numerators with denominators plus the n! factor
  std::vector<double> a(numerators.begin(), numerators.end());
  std::vector<double> b(denominators.begin(), denominators.end());
  b.push_back(1.0);

  std::size_t target = std::max<std::size_t>(
      1000, static_cast<std::size_t>(std::ceil(20.0 * scale)));
  Neumaier sum;
  double term = 1.0;
  std::size_t n = 0;
  for (;;) {
    for (; n < target; ++n) {
      sum.add(term);
      term *= ratio(static_cast<double>(n));
    }
    const TailEstimate tail =
        euler_maclaurin_tail(a, b, s, static_cast<double>(n));
    const double value = sum.value() + term * tail.factor;
    const double bound = std::abs(term) * tail.rel_bound;
    if (bound <= tol) return {value, n, bound};
    if (n >= kMaxTerms)
      throw ConvergenceError("hyp_pfq_at_1: tail bound not reached within 1e6 terms",
                             value, bound);
    target = std::min(kMaxTerms, 4 * n);
  }
}

}  // namespace qtherm::specfun
