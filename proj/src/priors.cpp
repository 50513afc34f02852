#include "qtherm/priors.hpp"

#include <cmath>
#include <numbers>

#include "qtherm/error.hpp"
#include "qtherm/specfun.hpp"

namespace qtherm {
namespace {

using specfun::log_gamma;
constexpr double kPi = std::numbers::pi;

// Density with angles integrated out, per unit r and per unit angular measure.
// log_one_minus_r2 = ln(1 - r^2), passed separately so that E-space callers
// can supply -E exactly.
double radial_factor(const PriorKind& kind, double r, double log_one_minus_r2,
                     double kmb_log_ratio) {
  const double u = kind.u;
  const double weight = std::exp(-u * log_one_minus_r2);
  const double log_pi = std::log(kPi);
  switch (kind.family) {
    case PriorFamily::complex_q:
      return std::exp(log_gamma(2.5 - u) - 1.5 * log_pi - log_gamma(1.0 - u)) * r * r * weight;
    case PriorFamily::quat_q:
      return std::exp(log_gamma(3.5 - u) - 2.5 * log_pi - log_gamma(1.0 - u)) *
             std::pow(r, 4) * weight;
    case PriorFamily::real_q:
      return (1.0 - u) / kPi * r * weight;
    case PriorFamily::class_q:
      return 2.0 * std::exp(log_gamma(1.5 - u) - 0.5 * log_pi - log_gamma(1.0 - u)) * weight;
    case PriorFamily::kmb_q:
      return (1.0 - u) * std::exp(log_gamma(1.5 - u) - 1.5 * log_pi - log_gamma(1.0 - u)) /
             2.0 * r * kmb_log_ratio * weight;
  }
  return 0.0;
}

double angular_jacobian(PriorFamily family, std::span<const double> angles) {
  if (static_cast<int>(angles.size()) != angle_count(family))
    throw DomainError("prior_density: wrong number of angular coordinates");
  const int polar = family == PriorFamily::quat_q ? 3 : (angles.size() == 2 ? 1 : 0);
  for (int i = 0; i < polar; ++i)
    if (!(angles[i] >= 0.0 && angles[i] <= kPi))
      throw DomainError("prior_density: polar angle outside [0, pi]");
  if (!angles.empty() && !(angles.back() >= 0.0 && angles.back() < 2.0 * kPi))
    throw DomainError("prior_density: azimuth outside [0, 2 pi)");
  switch (family) {
    case PriorFamily::complex_q:
    case PriorFamily::kmb_q: return std::sin(angles[0]);
    case PriorFamily::quat_q:
      return std::pow(std::sin(angles[0]), 3) * std::pow(std::sin(angles[1]), 2) *
             std::sin(angles[2]);
    case PriorFamily::real_q:
    case PriorFamily::class_q: return 1.0;
  }
  return 0.0;
}

}  // namespace

PriorKind::PriorKind(PriorFamily f, double u_value) : family(f), u(u_value) {
  if (!(u_value < 1.0) || !std::isfinite(u_value))
    throw DomainError("PriorKind: u must be finite and below 1");
}

PriorKind PriorKind::for_gibbs(Model model, double beta) {
  if (!(beta > 0.0)) throw DomainError("PriorKind: beta must be positive");
  switch (model) {
    case Model::complex: return {PriorFamily::complex_q, 1.0 - beta};
    case Model::quaternionic: return {PriorFamily::quat_q, 1.0 - beta};
    case Model::real: return {PriorFamily::real_q, 1.0 - beta};
    case Model::classical: return {PriorFamily::class_q, 1.0 - beta};
    case Model::kmb: return {PriorFamily::kmb_q, 1.0 - beta};
  }
  throw DomainError("PriorKind: unknown model");
}

Model PriorKind::model() const {
  switch (family) {
    case PriorFamily::complex_q: return Model::complex;
    case PriorFamily::quat_q: return Model::quaternionic;
    case PriorFamily::real_q: return Model::real;
    case PriorFamily::class_q: return Model::classical;
    case PriorFamily::kmb_q: return Model::kmb;
  }
  return Model::complex;
}

int angle_count(PriorFamily family) {
  switch (family) {
    case PriorFamily::complex_q:
    case PriorFamily::kmb_q: return 2;
    case PriorFamily::quat_q: return 4;
    case PriorFamily::real_q: return 1;
    case PriorFamily::class_q: return 0;
  }
  return 0;
}

double angular_mass(PriorFamily family) {
  switch (family) {
    case PriorFamily::complex_q:
    case PriorFamily::kmb_q: return 4.0 * kPi;
    case PriorFamily::quat_q: return 8.0 * kPi * kPi / 3.0;
    case PriorFamily::real_q: return 2.0 * kPi;
    case PriorFamily::class_q: return 1.0;
  }
  return 0.0;
}

double prior_density(const PriorKind& kind, double r, std::span<const double> angles) {
  if (!(r >= 0.0 && r < 1.0)) throw DomainError("prior_density: r must lie in [0, 1)");
  const double jac = angular_jacobian(kind.family, angles);
  return radial_factor(kind, r, std::log1p(-r * r), 2.0 * std::atanh(r)) * jac;
}

double transform_to_gibbs(const PriorKind& kind, double E, double beta) {
  if (!(beta > 0.0)) throw DomainError("transform_to_gibbs: beta must be positive");
  if (std::abs(kind.u - (1.0 - beta)) > 1e-12 * std::max(1.0, std::abs(beta)))
    throw DomainError("transform_to_gibbs: beta does not match u = 1 - beta");
  if (!(E >= 0.0)) throw DomainError("transform_to_gibbs: E must be non-negative");
  const double r = polarization_radius(E);
  const double dr_dE = std::exp(-E) / (2.0 * r);
  const double kmb_log_ratio = E + 2.0 * std::log1p(r);
  return radial_factor(kind, r, -E, kmb_log_ratio) * angular_mass(kind.family) * dr_dE;
}

double complex_cartesian_density(double u, double x, double y, double z) {
  const PriorKind kind(PriorFamily::complex_q, u);
  const double r2 = x * x + y * y + z * z;
  if (!(r2 < 1.0)) throw DomainError("complex_cartesian_density: point outside the unit ball");
  return std::exp(log_gamma(2.5 - kind.u) - 1.5 * std::log(kPi) - log_gamma(1.0 - kind.u) -
                  kind.u * std::log1p(-r2));
}

double complex_dirichlet_density(double u, double X, double Y, double Z) {
  const PriorKind kind(PriorFamily::complex_q, u);
  const double rest = 1.0 - X - Y - Z;
  if (!(X > 0.0 && Y > 0.0 && Z > 0.0 && rest > 0.0))
    throw DomainError("complex_dirichlet_density: point outside the open simplex");
  const double log_norm = log_gamma(2.5 - kind.u) - 3.0 * log_gamma(0.5) - log_gamma(1.0 - kind.u);
  return std::exp(log_norm - 0.5 * (std::log(X) + std::log(Y) + std::log(Z)) -
                  kind.u * std::log(rest));
}

}  // namespace qtherm
