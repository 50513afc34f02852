#include "qtherm/magnetics.hpp"

#include <cmath>
#include <numbers>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "qtherm/error.hpp"

namespace qtherm {
namespace {

constexpr double kPi = std::numbers::pi;

double bracketed_root(const std::function<double(double)>& f, double lo, double hi) {
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, boost::math::tools::eps_tolerance<double>(53), iters);
  return std::abs(f(a)) <= std::abs(f(b)) ? a : b;
}

void require_lambda(double lambda_mf) {
  if (!(lambda_mf > 0.0) || !std::isfinite(lambda_mf))
    throw DomainError("mean-field coupling lambda must be positive");
}

}  // namespace

double brillouin_tanh(double x) { return std::tanh(x); }

double langevin(double x) {
  if (std::abs(x) < 1e-2) {
    const double x2 = x * x;
    return x * (1.0 / 3.0 - x2 * (1.0 / 45.0 - x2 * (2.0 / 945.0 - x2 / 4725.0)));
  }
  return 1.0 / std::tanh(x) - 1.0 / x;
}

double langevin_partition(double beta) {
  if (beta == 0.0) return 1.0;
  return std::sinh(beta) / beta;
}

double brosseau_polarization(double tau) {
  if (!(tau > 0.0)) throw DomainError("brosseau_polarization: tau must be positive");
  return std::tanh(1.0 / tau);
}

IntersectionReport intersect_brosseau(Model model) {
  if (model == Model::kmb) throw DomainError("intersect_brosseau: power-law families only");
  const auto f = [model](double b) {
    return mean_polarization(model, b) - brosseau_polarization(b);
  };
  constexpr double lo = 0.1, hi = 10.0;
  if (!(f(lo) < 0.0 && f(hi) > 0.0))
    throw ConvergenceError("intersect_brosseau: crossing not bracketed by (0.1, 10)", lo, f(lo));
  const double root = bracketed_root(f, lo, hi);
  return {model, root, f(root)};
}

double reduced_temperature(double beta) {
  if (!(beta > 0.0)) throw DomainError("reduced_temperature: beta must be positive");
  const double r = mean_polarization(Model::complex, beta);
  if (!(r < 1.0)) throw DomainError("reduced_temperature: <r> must be below 1");
  return std::atanh(r);
}

double reduced_temperature_asymptotic(double beta) {
  if (!(beta > 0.0)) throw DomainError("reduced_temperature_asymptotic: beta must be positive");
  return 2.0 / std::sqrt(kPi * beta) +
         (32.0 - 15.0 * kPi) / (12.0 * std::pow(kPi, 1.5) * std::pow(beta, 1.5));
}

LogLinearFit fit_log_linear(double beta_lo, double beta_hi, int points) {
  if (!(beta_lo > 0.0 && beta_hi > beta_lo) || points < 2)
    throw DomainError("fit_log_linear: need 0 < beta_lo < beta_hi and points >= 2");
  const double a = std::log(beta_lo), b = std::log(beta_hi);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < points; ++i) {
    const double x = a + (b - a) * i / (points - 1);
    const double y = std::log(reduced_temperature(std::exp(x)));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = points;
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {slope, (sy - slope * sx) / n};
}

double critical_beta(double lambda_mf) {
  require_lambda(lambda_mf);
  return lambda_mf / (4.0 * (2.0 * std::numbers::ln2 - 1.0));
}

std::pair<double, double> order_parameter(double beta, double lambda_mf) {
  if (!(beta > 0.0)) throw DomainError("order_parameter: beta must be positive");
  const double bc = critical_beta(lambda_mf);
  if (beta <= bc) return {0.0, 0.0};
  const double s = std::sqrt(1.0 - bc / beta);
  return {s, -s};
}

std::optional<std::pair<double, double>> mean_field_order_parameter_quadratic(
    double beta, double lambda_mf) {
  if (!(beta > 0.0)) throw DomainError("order parameter: beta must be positive");
  // r^2 - r + (2 ln 2 - 1) beta / lambda = 0
  const double c = (2.0 * std::numbers::ln2 - 1.0) * beta / lambda_mf;
  const double disc = 1.0 - 4.0 * c;
  if (disc < 0.0) return std::nullopt;
  const double s = std::sqrt(disc);
  return std::pair{s, -s};
}

GapMaximum kmb_gap_maximum() {
  const auto neg_gap = [](double b) {
    return mean_polarization(Model::complex, b) - mean_polarization(Model::kmb, b);
  };
  std::uintmax_t iters = 200;
  const auto [b, v] = boost::math::tools::brent_find_minima(neg_gap, 0.05, 3.0, 40, iters);
  return {b, -v};
}

std::optional<double> kmb_density_crossing(Model model, double lo, double hi) {
  if (!(lo > 0.0 && hi > lo)) throw DomainError("kmb_density_crossing: need 0 < lo < hi");
  if (model == Model::kmb) throw DomainError("kmb_density_crossing: compare against another family");
  const auto f = [model](double e) {
    return integrated_density(Model::kmb, e) - integrated_density(model, e);
  };
  constexpr int kGrid = 400;
  const double a = std::log(lo), b = std::log(hi);
  double prev_x = lo, prev = f(lo);
  for (int i = 1; i <= kGrid; ++i) {
    const double x = std::exp(a + (b - a) * i / kGrid);
    const double cur = f(x);
    if (prev == 0.0) return prev_x;
    if ((prev < 0.0) != (cur < 0.0)) return bracketed_root(f, prev_x, x);
    prev_x = x;
    prev = cur;
  }
  return std::nullopt;
}

}  // namespace qtherm
