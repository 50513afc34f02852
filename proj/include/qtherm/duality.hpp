#pragma once

#include <utility>

#include "qtherm/models.hpp"

namespace qtherm {

struct DualExperimentReport {
  Model model;
  double target_meanE = 0.0;
  double normalizer = 0.0;
  double mean_beta = 0.0;
  /// mean_energy(model, mean_beta)
  double roundtrip_meanE = 0.0;
  /// Quadrature error estimates of the two beta integrals.
  double normalizer_error = 0.0;
  double first_moment_error = 0.0;
};

/// Approximate dual density over beta given a fixed mean energy:
/// (c/2) e^(-beta <E>) sqrt(var(beta)) Z(c/(2<E>)) / Z(beta), with c = 3 for the
/// complex family and 5 for the quaternionic one. Unnormalised.
double dual_density(Model model, double meanE, double beta);

/// Normalises the dual density over beta in [0, 2000/<E>], takes its mean
/// and maps it back through mean_energy.
DualExperimentReport run_duality_experiment(Model model, double meanE);

/// (3/(2E^2)) (psi(3/2 + a) - psi(a)), a = 3/(2E).
double mean_beta_closed(double meanE);
/// (3/(4E^4)) (4E (psi(3/2 + a) - psi(a)) + 3 (psi'(3/2 + a) - psi'(a))), a = 3/(2E).
double var_beta_closed(double meanE);

/// (sqrt(var_beta_closed(E)), Omega_complex(E) / Z_complex(3/(2E))).
std::pair<double, double> prior_over_meanE(double meanE);

}  // namespace qtherm
