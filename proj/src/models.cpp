#include "qtherm/models.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "qtherm/error.hpp"
#include "qtherm/specfun.hpp"

namespace qtherm {
namespace {

using specfun::digamma;
using specfun::log_gamma;
using specfun::log_gamma_ratio;
using specfun::trigamma;

constexpr double kLn2 = std::numbers::ln2;

void require_beta(double beta, const char* what) {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw DomainError(std::string(what) + ": beta must be positive and finite");
}

void require_energy(double E, const char* what) {
  if (!(E >= 0.0) || std::isnan(E))
    throw DomainError(std::string(what) + ": E must be non-negative");
}

// Gamma((m+1)/2) shift of the power-law partition function.
double half_shift(Model model) { return 0.5 * (*dimension(model) + 1); }

// artanh(r(E)) = E/2 + log1p(r), exact and overflow-free.
double artanh_radius(double E) { return 0.5 * E + std::log1p(polarization_radius(E)); }

// sum_{k >= k0} r^(2k+1)/(2k+1) for small r
double odd_power_tail(double r, int k0) {
  const double r2 = r * r;
  double power = std::pow(r, 2 * k0 + 1);
  double sum = 0.0;
  for (int k = k0; k < k0 + 60; ++k) {
    const double term = power / (2 * k + 1);
    sum += term;
    if (term < 1e-18 * sum) break;
    power *= r2;
  }
  return sum;
}

}  // namespace

GibbsPoint::GibbsPoint(Model m, double b) : model(m), beta(b) {
  require_beta(b, "GibbsPoint");
}

double structure_exponent(Model model) {
  const auto m = dimension(model);
  if (!m) throw DomainError("structure_exponent: KMB is not a power-law family");
  return 0.5 * (*m - 1);
}

std::string_view to_string(Model model) {
  switch (model) {
    case Model::real: return "real";
    case Model::complex: return "complex";
    case Model::quaternionic: return "quat";
    case Model::classical: return "class";
    case Model::kmb: return "kmb";
  }
  return "?";
}

std::optional<Model> parse_model(std::string_view name) {
  if (name == "real") return Model::real;
  if (name == "complex") return Model::complex;
  if (name == "quat" || name == "quaternionic") return Model::quaternionic;
  if (name == "class" || name == "classical") return Model::classical;
  if (name == "kmb") return Model::kmb;
  return std::nullopt;
}

double polarization_radius(double E) {
  require_energy(E, "polarization_radius");
  return std::sqrt(-std::expm1(-E));
}

double structure_function(Model model, double E) {
  require_energy(E, "structure_function");
  const double r = polarization_radius(E);
  switch (model) {
    case Model::real: return 1.0;
    case Model::complex: return r;
    case Model::quaternionic: return r * r * r;
    case Model::classical:
      return E == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / r;
    case Model::kmb: return E + 2.0 * std::log1p(r);
  }
  return 0.0;
}

double log_partition(Model model, double beta) {
  require_beta(beta, "partition");
  if (model == Model::kmb)
    return log_partition(Model::classical, beta) - std::log(beta);
  if (model == Model::real) return -std::log(beta);
  const double c = half_shift(model);
  return log_gamma(c) + log_gamma(beta) - log_gamma(c + beta);
}

double partition(Model model, double beta) {
  return std::exp(log_partition(model, beta));
}

double pdf(Model model, double beta, double E) {
  require_beta(beta, "pdf");
  require_energy(E, "pdf");
  const double omega = structure_function(model, E);
  if (std::isinf(omega)) return omega;
  if (omega == 0.0) return 0.0;
  return std::exp(-beta * E - log_partition(model, beta)) * omega;
}

double mean_energy(Model model, double beta) {
  require_beta(beta, "mean_energy");
  switch (model) {
    case Model::real: return 1.0 / beta;
    case Model::kmb: return 1.0 / beta + digamma(0.5 + beta) - digamma(beta);
    default: return digamma(half_shift(model) + beta) - digamma(beta);
  }
}

double var_energy(Model model, double beta) {
  require_beta(beta, "var_energy");
  switch (model) {
    case Model::real: return 1.0 / (beta * beta);
    case Model::kmb:
      return 1.0 / (beta * beta) + trigamma(beta) - trigamma(0.5 + beta);
    default: return trigamma(beta) - trigamma(half_shift(model) + beta);
  }
}

double mean_polarization(Model model, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw DomainError("mean_polarization: beta must be non-negative and finite");
  if (beta == 0.0) return 1.0;
  if (model == Model::kmb) {
    static constexpr std::array<double, 3> num = {0.5, 1.0, 2.0};
    const std::array<double, 2> den = {1.5, 2.0 + beta};
    // the series grows like 1/beta as beta -> 0
    const auto series = specfun::hyp_pfq_at_1(num, den, 1e-12 * std::max(1.0, 1.0 / beta));
    const double log_prefactor = kLn2 + std::log(beta) - 0.5 * std::log(std::numbers::pi) +
                                 log_gamma_ratio(beta, 0.5, 2.0);
    return std::exp(log_prefactor) * series.value;
  }
  const double half_m = 0.5 * *dimension(model);
  return std::exp(log_gamma(1.0 + half_m) - log_gamma(0.5 + half_m) +
                  log_gamma_ratio(beta, 0.5 + half_m, 1.0 + half_m));
}

double integrated_density(Model model, double E0) {
  require_energy(E0, "integrated_density");
  if (E0 == 0.0) return 0.0;
  const double r = polarization_radius(E0);
  switch (model) {
    case Model::real: return E0;
    case Model::classical: return 2.0 * artanh_radius(E0);
    case Model::complex:
      if (r < 0.1) return 2.0 * odd_power_tail(r, 1);
      return 2.0 * (artanh_radius(E0) - r);
    case Model::quaternionic:
      if (r < 0.1) return 2.0 * odd_power_tail(r, 2);
      return 2.0 * (artanh_radius(E0) + r * (std::exp(-E0) - 4.0) / 3.0);
    case Model::kmb: return integrated_density_kmb(E0).value;
  }
  return 0.0;
}

QuadratureResult integrated_density_kmb(double E0) {
  require_energy(E0, "integrated_density_kmb");
  const RealFunction integrand = [](double t) {
    return 2.0 * t * structure_function(Model::kmb, t * t);
  };
  return integrate_interval(integrand, 0.0, std::sqrt(E0), 1e-10);
}

double modal_beta_estimate(Model model, double E) {
  if (!(E > 0.0)) throw DomainError("modal_beta_estimate: E must be positive");
  if (model == Model::kmb) {
    return 1.0 / (polarization_radius(E) * structure_function(Model::kmb, E));
  }
  return structure_exponent(model) / std::expm1(E);
}

double modal_beta_curvature(Model model, double E) {
  if (!(E > 0.0)) throw DomainError("modal_beta_curvature: E must be positive");
  if (model == Model::kmb) {
    const double r = polarization_radius(E);
    const double omega = structure_function(Model::kmb, E);
    return std::exp(-E) / (2.0 * r * r * r * omega) + 1.0 / (r * r * omega * omega);
  }
  return structure_exponent(model) / (std::expm1(E) * -std::expm1(-E));
}

double approx_beta_small(double mean_E) {
  const double shift = 2.0 + kLn2;
  if (!(mean_E > shift))
    throw DomainError("approx_beta_small: requires <E> > 2 + ln 2");
  return 1.0 / (mean_E - shift);
}

double approx_beta_large(double mean_E) {
  if (!(mean_E > 0.0)) throw DomainError("approx_beta_large: requires <E> > 0");
  return 1.5 / mean_E;
}

double beta_for_mean_energy(Model model, double mean_E) {
  if (!(mean_E > 0.0) || !std::isfinite(mean_E))
    throw DomainError("beta_for_mean_energy: <E> must be positive");
  auto f = [&](double b) { return mean_energy(model, b) - mean_E; };
  double lo = 1.0, hi = 1.0;
  while (f(lo) < 0.0) {
    lo *= 0.5;
    if (lo < 1e-300) throw ConvergenceError("beta_for_mean_energy: no bracket", lo, lo);
  }
  while (f(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 1e300) throw ConvergenceError("beta_for_mean_energy: no bracket", hi, hi);
  }
  if (lo == hi) return lo;
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, boost::math::tools::eps_tolerance<double>(52), iters);
  return 0.5 * (a + b);
}

double mean_energy_asymptotic(double beta, int order) {
  require_beta(beta, "mean_energy_asymptotic");
  if (order < 1 || order > 5)
    throw DomainError("mean_energy_asymptotic: order must be in 1..5");
  static constexpr std::array<double, 5> coeff = {1.5, -0.375, 0.25, -9.0 / 64.0,
                                                  1.0 / 16.0};
  double sum = 0.0;
  double inv_power = 1.0 / beta;
  for (int k = 0; k < order; ++k) {
    sum += coeff[k] * inv_power;
    inv_power /= beta;
  }
  return sum;
}

double polarization_asymptotic(double beta) {
  require_beta(beta, "polarization_asymptotic");
  const double root = std::sqrt(beta);
  const double inv = 1.0 / beta;
  const double series = 2.0 - 1.25 * inv + (73.0 / 64.0) * inv * inv -
                        (575.0 / 512.0) * inv * inv * inv;
  return series / (root * std::sqrt(std::numbers::pi));
}

double reflection_identity_residual(double beta) {
  require_beta(beta, "reflection_identity_residual");
  const double nearest_half = std::round(2.0 * beta) / 2.0;
  if (std::abs(beta - nearest_half) < 1e-3)
    throw PoleError("reflection_identity_residual: beta is within 1e-3 of a pole");
  const auto g_num = specfun::log_abs_gamma(1.5 - beta);
  const auto g_den = specfun::log_abs_gamma(-beta);
  const double denom_poly = 4.0 * beta * beta - 1.0;
  const double log_lhs = std::log(mean_polarization(Model::complex, beta)) +
                         std::log(2.0 * std::sqrt(std::numbers::pi)) +
                         std::log(beta + 1.0) + g_num.log_abs -
                         std::log(std::abs(denom_poly)) - g_den.log_abs;
  const int sign = g_num.sign * g_den.sign * (denom_poly > 0.0 ? 1 : -1);
  const double lhs = sign * std::exp(log_lhs);
  return std::abs(lhs - std::tan(std::numbers::pi * beta));
}

double gibbs_tail_bound(Model model, double beta, double upper, int moment) {
  require_beta(beta, "gibbs_tail_bound");
  if (!(upper > 0.0) || moment < 0)
    throw DomainError("gibbs_tail_bound: upper must be positive, moment >= 0");
  // integral_U^inf E^j e^(-beta E) dE
  auto upper_moment = [&](int j) {
    double sum = 0.0;
    double coeff = 1.0;  // j!/i! built downward
    for (int i = j; i >= 0; --i) {
      sum += coeff * std::pow(upper, i) / std::pow(beta, j - i + 1);
      coeff *= i;
    }
    return std::exp(-beta * upper) * sum;
  };
  double bound = 0.0;
  switch (model) {
    case Model::kmb:
      bound = upper_moment(moment + 1) + 2.0 * kLn2 * upper_moment(moment);
      break;
    case Model::classical:
      bound = upper_moment(moment) / polarization_radius(upper);
      break;
    default: bound = upper_moment(moment); break;
  }
  return bound / partition(model, beta);
}

double quadrature_cutoff(double beta) {
  require_beta(beta, "quadrature_cutoff");
  return std::max(50.0, 50.0 / beta);
}

}  // namespace qtherm
