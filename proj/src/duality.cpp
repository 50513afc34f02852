#include "qtherm/duality.hpp"

#include <cmath>

#include "qtherm/error.hpp"
#include "qtherm/quadrature.hpp"
#include "qtherm/specfun.hpp"

namespace qtherm {
namespace {

double dual_shift(Model model) {
  switch (model) {
    case Model::complex: return 3.0;
    case Model::quaternionic: return 5.0;
    default: throw DomainError("dual density is defined for the complex and quaternionic families");
  }
}

void require_mean(double meanE) {
  if (!(meanE > 0.0) || !std::isfinite(meanE))
    throw DomainError("mean energy must be positive and finite");
}

}  // namespace

double dual_density(Model model, double meanE, double beta) {
  const double c = dual_shift(model);
  require_mean(meanE);
  if (!(beta > 0.0)) throw DomainError("dual_density: beta must be positive");
  const double log_value = std::log(0.5 * c) - beta * meanE +
                           0.5 * std::log(var_energy(model, beta)) +
                           log_partition(model, c / (2.0 * meanE)) -
                           log_partition(model, beta);
  return std::exp(log_value);
}

DualExperimentReport run_duality_experiment(Model model, double meanE) {
  dual_shift(model);
  require_mean(meanE);
  const double upper = 2000.0 / meanE;
  const RealFunction density = [&](double b) { return dual_density(model, meanE, b); };
  const RealFunction moment = [&](double b) { return b * dual_density(model, meanE, b); };
  const auto norm = integrate_interval(density, 0.0, upper, 1e-13, 1e-12);
  const auto first = integrate_interval(moment, 0.0, upper, 1e-13, 1e-12);

  DualExperimentReport report{model};
  report.target_meanE = meanE;
  report.normalizer = norm.value;
  report.mean_beta = first.value / norm.value;
  report.roundtrip_meanE = mean_energy(model, report.mean_beta);
  report.normalizer_error = norm.abs_error_estimate;
  report.first_moment_error = first.abs_error_estimate;
  return report;
}

double mean_beta_closed(double meanE) {
  require_mean(meanE);
  const double a = 1.5 / meanE;
  return 1.5 / (meanE * meanE) * (specfun::digamma(1.5 + a) - specfun::digamma(a));
}

double var_beta_closed(double meanE) {
  require_mean(meanE);
  const double a = 1.5 / meanE;
  const double e2 = meanE * meanE;
  const double bracket =
      4.0 * meanE * (specfun::digamma(1.5 + a) - specfun::digamma(a)) +
      3.0 * (specfun::trigamma(1.5 + a) - specfun::trigamma(a));
  return 0.75 / (e2 * e2) * bracket;
}

std::pair<double, double> prior_over_meanE(double meanE) {
  require_mean(meanE);
  const double spread = std::sqrt(var_beta_closed(meanE));
  const double weight = structure_function(Model::complex, meanE) /
                        partition(Model::complex, 1.5 / meanE);
  return {spread, weight};
}

}  // namespace qtherm
