#pragma once

#include <optional>
#include <utility>

#include "qtherm/models.hpp"

namespace qtherm {

/// Spin-1/2 magnetisation law tanh x (saturation 1).
double brillouin_tanh(double x);
/// coth x - 1/x, with its Taylor series near 0 (value 0 at x = 0).
double langevin(double x);
/// sinh(beta)/beta, 1 at beta = 0. d/dbeta ln of it is langevin(beta).
double langevin_partition(double beta);
/// tanh(1/tau), tau > 0.
double brosseau_polarization(double tau);

struct IntersectionReport {
  Model model;
  double beta_star = 0.0;
  /// mean_polarization(model, beta_star) - tanh(1/beta_star)
  double residual = 0.0;
};

/// Crossing of mean_polarization(model, beta) with tanh(1/beta) on (0.1, 10).
/// Power-law families only.
IntersectionReport intersect_brosseau(Model model);

/// artanh of the complex <r>.
double reduced_temperature(double beta);
/// 2/sqrt(pi beta) + (32 - 15 pi)/(12 pi^(3/2) beta^(3/2)).
double reduced_temperature_asymptotic(double beta);

struct LogLinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Least-squares line through (ln beta, ln reduced_temperature(beta)) on
/// `points` log-spaced betas in [beta_lo, beta_hi].
LogLinearFit fit_log_linear(double beta_lo, double beta_hi, int points);

/// lambda / (4 (2 ln 2 - 1)).
double critical_beta(double lambda_mf);
/// +-(1 - beta_c/beta)^(1/2); (0, 0) when beta <= beta_c.
std::pair<double, double> order_parameter(double beta, double lambda_mf);
/// Roots 2<r> - 1 = +-(1 - beta/beta_c)^(1/2) of the quadratic obtained from
/// <r> ~ 1 - (2 ln 2 - 1) beta under beta -> beta/(lambda <r>). Empty when
/// beta > beta_c (no real root).
std::optional<std::pair<double, double>> mean_field_order_parameter_quadratic(
    double beta, double lambda_mf);

struct GapMaximum {
  double beta = 0.0;
  double gap = 0.0;
};

/// Maximum over beta of mean_polarization(KMB) - mean_polarization(complex).
GapMaximum kmb_gap_maximum();

/// First E0 in [lo, hi] where integrated_density(KMB) - integrated_density(model)
/// changes sign, found on a 400-point log grid and refined to 1e-12 relative.
/// Empty when there is no sign change.
std::optional<double> kmb_density_crossing(Model model, double lo, double hi);

}  // namespace qtherm
