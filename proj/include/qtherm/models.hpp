#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "qtherm/quadrature.hpp"

namespace qtherm {

/// The five Gibbs families over two-level density matrices. The four power-law
/// families carry a dimension parameter m; their structure function is
/// (1 - e^-E)^((m-1)/2).
enum class Model { real, complex, quaternionic, classical, kmb };

inline constexpr std::array<Model, 5> kAllModels = {
    Model::real, Model::complex, Model::quaternionic, Model::classical, Model::kmb};
inline constexpr std::array<Model, 4> kPowerLawModels = {
    Model::quaternionic, Model::complex, Model::real, Model::classical};

/// m = 1, 2, 4, 0 for real, complex, quaternionic, classical; empty for KMB.
constexpr std::optional<int> dimension(Model model) {
  switch (model) {
    case Model::real: return 1;
    case Model::complex: return 2;
    case Model::quaternionic: return 4;
    case Model::classical: return 0;
    case Model::kmb: return std::nullopt;
  }
  return std::nullopt;
}

/// (m - 1)/2 for the power-law families. Throws DomainError for KMB.
double structure_exponent(Model model);

std::string_view to_string(Model model);
/// Accepts real|complex|quat|quaternionic|class|classical|kmb.
std::optional<Model> parse_model(std::string_view name);

/// A (model, beta) pair; beta > 0 is checked on construction.
struct GibbsPoint {
  Model model;
  double beta;

  GibbsPoint(Model m, double b);
};

/// Omega(E). Classical returns +inf at E = 0. KMB is 2 artanh(sqrt(1 - e^-E)),
/// evaluated as E + 2 log1p(r) so it stays finite for large E.
double structure_function(Model model, double E);

/// r(E) = sqrt(1 - e^-E), the Bloch radius at energy E (positive branch).
double polarization_radius(double E);

double log_partition(Model model, double beta);
double partition(Model model, double beta);

/// Gibbs density e^(-beta E) Omega(E) / Z(beta).
double pdf(Model model, double beta, double E);

double mean_energy(Model model, double beta);
double var_energy(Model model, double beta);

/// <r> = <sqrt(1 - e^-E)>. beta = 0 is allowed (limit value 1). KMB goes through
/// a 3F2 series at unit argument.
double mean_polarization(Model model, double beta);

/// N(E0) = integral of Omega over [0, E0]. Closed forms except KMB, which is
/// integrated numerically to 1e-10.
double integrated_density(Model model, double E0);
/// KMB integrated density with its quadrature error estimate.
QuadratureResult integrated_density_kmb(double E0);

/// d/dE ln Omega(E): the modal estimate of beta given an observed E.
double modal_beta_estimate(Model model, double E);
/// -d^2/dE^2 ln Omega(E).
double modal_beta_curvature(Model model, double E);

/// Complex family: beta ~ 1/(<E> - 2 - ln 2) for small beta.
double approx_beta_small(double mean_E);
/// Complex family: beta ~ 3/(2 <E>) for large beta.
double approx_beta_large(double mean_E);

/// Inverse of mean_energy in beta (bracketed root solve).
double beta_for_mean_energy(Model model, double mean_E);

/// Partial sum (order terms, 1..5) of the large-beta expansion of the complex
/// mean energy: 3/(2b) - 3/(8b^2) + 1/(4b^3) - 9/(64b^4) + 1/(16b^5).
double mean_energy_asymptotic(double beta, int order);

/// Four-term large-beta expansion of the complex <r>.
double polarization_asymptotic(double beta);

/// |<r> 2 sqrt(pi) (b+1) Gamma(3/2-b) / ((4b^2-1) Gamma(-b)) - tan(pi b)| for
/// the complex family. Throws PoleError within 1e-3 of an integer or
/// half-integer.
double reflection_identity_residual(double beta);

/// Upper bound on integral_{upper}^inf E^k e^(-beta E) Omega(E) dE / Z(beta),
/// for use as SemiInfiniteOptions::tail_bound.
double gibbs_tail_bound(Model model, double beta, double upper, int moment);

/// E_up = max(50, 50/beta).
double quadrature_cutoff(double beta);

}  // namespace qtherm
