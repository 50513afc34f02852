#include "qtherm/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/toms748_solve.hpp>

#include "qtherm/error.hpp"
#include "qtherm/models.hpp"
#include "qtherm/specfun.hpp"

namespace qtherm {
namespace {

using specfun::log_gamma;

std::optional<std::uint64_t> exact_multiplicity(int n, int d) {
  if (n > 60) return std::nullopt;
  unsigned __int128 binom = 1;
  for (int i = 1; i <= d; ++i) binom = binom * static_cast<unsigned>(n + 2 - i) / i;
  const unsigned __int128 a = static_cast<unsigned>(n - 2 * d + 1);
  return static_cast<std::uint64_t>(a * a * binom / static_cast<unsigned>(n + 1));
}

// artanh(Omega)/Omega at Omega = Omega_complex(E), with a series for small Omega.
double artanh_over_radius(double E) {
  const double r = polarization_radius(E);
  if (r < 0.1) {
    const double r2 = r * r;
    double sum = 1.0, power = 1.0;
    for (int k = 1; k < 40; ++k) {
      power *= r2;
      sum += power / (2 * k + 1);
    }
    return sum;
  }
  return (0.5 * E + std::log1p(r)) / r;
}

// beta as a function of E on the second stationarity condition
double stationary_beta_of_E(double E) {
  const double r = polarization_radius(E);
  return (2.0 - 2.0 * std::exp(-E) * artanh_over_radius(E)) / (4.0 * r * r);
}

int choose_radial_power(double beta) {
  for (int k = 1; k <= 16; ++k) {
    const double kb = k * beta;
    if (std::abs(kb - std::round(kb)) < 1e-12 && std::round(kb) >= 1.0) return k;
  }
  return 16;
}

Eigen::VectorXd sorted_eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace

SpectrumTable spectrum(int n, double beta) {
  if (n < 1) throw DomainError("spectrum: n must be >= 1");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("spectrum: beta must be positive");
  SpectrumTable table{n, beta, {}};
  const double half_n = 0.5 * n;
  const double common = -n * std::numbers::ln2 + log_gamma(1.5 + beta) -
                        log_gamma(1.5 + half_n + beta) - log_gamma(1.0 + half_n + beta) -
                        log_gamma(beta);
  for (int d = 0; d <= n / 2; ++d) {
    SpectrumEntry e;
    e.d = d;
    e.log_lambda = common + log_gamma(1.0 + n - d + beta) + log_gamma(d + beta);
    e.lambda = std::exp(e.log_lambda);
    e.log_multiplicity = 2.0 * std::log(n - 2.0 * d + 1.0) + log_gamma(n + 2.0) -
                         log_gamma(d + 1.0) - log_gamma(n - d + 2.0) - std::log(n + 1.0);
    e.exact_multiplicity = exact_multiplicity(n, d);
    e.multiplicity = e.exact_multiplicity ? static_cast<double>(*e.exact_multiplicity)
                                          : std::exp(e.log_multiplicity);
    table.entries.push_back(e);
  }
  return table;
}

void to_json(nlohmann::json& j, const SpectrumTable& table) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : table.entries) {
    nlohmann::json row{{"d", e.d}, {"lambda", e.lambda}};
    if (e.exact_multiplicity)
      row["multiplicity"] = *e.exact_multiplicity;
    else
      row["multiplicity"] = e.multiplicity;
    entries.push_back(row);
  }
  j = nlohmann::json{{"n", table.n}, {"beta", table.beta}, {"entries", entries}};
}

double spin_sum_polarization(int n, double beta) {
  const auto table = spectrum(n, beta);
  double sum = 0.0;
  for (const auto& e : table.entries) {
    const double weight = static_cast<double>(n - 2 * e.d) / n;
    sum += weight * std::exp(e.log_multiplicity + e.log_lambda);
  }
  return sum;
}

ZetaOracleResult zeta_matrix_oracle(int n, double beta, std::size_t nodes,
                                    kernels::Execution exec) {
  if (n < 1 || n > 3) throw DomainError("zeta_matrix_oracle: n must be in 1..3");
  if (!(beta > 0.0)) throw DomainError("zeta_matrix_oracle: beta must be positive");
  if (nodes < 48) throw DomainError("zeta_matrix_oracle: nodes must be >= 48");
  constexpr std::size_t kMaxNodes = 192;
  const int k = choose_radial_power(beta);

  ZetaOracleResult result;
  result.matrix = kernels::zeta_accumulate(n, beta, nodes, k, exec);
  result.eigenvalues = sorted_eigenvalues(result.matrix);
  result.nodes_used = nodes;
  while (true) {
    const std::size_t next = std::min(kMaxNodes, 2 * result.nodes_used);
    if (next == result.nodes_used) break;
    Eigen::MatrixXcd m = kernels::zeta_accumulate(n, beta, next, k, exec);
    Eigen::VectorXd ev = sorted_eigenvalues(m);
    result.eigen_change = (ev - result.eigenvalues).cwiseAbs().maxCoeff();
    result.matrix = std::move(m);
    result.eigenvalues = std::move(ev);
    result.nodes_used = next;
    if (result.eigen_change < 1e-9) break;
  }
  if (!(result.eigen_change < 1e-9))
    throw ConvergenceError("zeta_matrix_oracle: eigenvalues not stable at 192 nodes",
                           result.eigenvalues.maxCoeff(), result.eigen_change);
  result.matrix = 0.5 * (result.matrix + result.matrix.adjoint().eval());
  return result;
}

double relative_entropy_numeric(const DensityMatrix2& rho, int n, double beta) {
  const auto oracle = zeta_matrix_oracle(n, beta);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(oracle.matrix);
  const Eigen::VectorXd lambda = solver.eigenvalues();
  if (lambda.minCoeff() <= 0.0)
    throw DomainError("relative_entropy_numeric: zeta_n is singular");
  const Eigen::MatrixXcd log_zeta = solver.eigenvectors() *
                                    lambda.array().log().matrix().asDiagonal() *
                                    solver.eigenvectors().adjoint();
  Eigen::MatrixXcd power = rho.matrix();
  for (int k = 1; k < n; ++k) {
    Eigen::MatrixXcd next(power.rows() * 2, power.cols() * 2);
    for (Eigen::Index i = 0; i < power.rows(); ++i)
      for (Eigen::Index j = 0; j < power.cols(); ++j)
        next.block<2, 2>(2 * i, 2 * j) = power(i, j) * rho.matrix();
    power = std::move(next);
  }
  return -n * rho.entropy() - (power * log_zeta).trace().real();
}

double asymptotic_relent(double beta, double E, int n) {
  if (!(beta > 0.0) || !(E > 0.0) || n < 1)
    throw DomainError("asymptotic_relent: beta, E and n must be positive");
  return 1.5 * std::log(static_cast<double>(n)) - 0.5 - 1.5 * std::numbers::ln2 + beta * E -
         artanh_over_radius(E) + log_gamma(beta) - log_gamma(1.5 + beta);
}

StationaryPoint solve_stationary_point() {
  auto residual = [](double b, double e) {
    return Eigen::Vector2d(e - mean_energy(Model::complex, b), b - stationary_beta_of_E(e));
  };
  double beta = 0.5, E = 2.5;
  Eigen::Vector2d F = residual(beta, E);
  for (int iter = 1; iter <= 200; ++iter) {
    const double h = 1e-6 * std::max(1.0, E);
    const double dg = (stationary_beta_of_E(E + h) - stationary_beta_of_E(E - h)) / (2.0 * h);
    Eigen::Matrix2d J;
    J << -(specfun::trigamma(1.5 + beta) - specfun::trigamma(beta)), 1.0,
         1.0, -dg;
    const Eigen::Vector2d step = J.fullPivLu().solve(-F);
    double damping = 1.0;
    double nb = beta, nE = E;
    Eigen::Vector2d nF;
    for (int halving = 0; halving < 30; ++halving) {
      nb = beta + damping * step(0);
      nE = E + damping * step(1);
      if (nb > 0.0 && nE > 0.0) {
        nF = residual(nb, nE);
        if (nF.norm() < F.norm() || F.norm() < 1e-12) break;
      }
      damping *= 0.5;
    }
    beta = nb;
    E = nE;
    F = nF;
    if (F.cwiseAbs().maxCoeff() < 1e-10 && step.cwiseAbs().maxCoeff() < 1e-9)
      return {beta, E, F.cwiseAbs().maxCoeff(), iter};
  }
  throw ConvergenceError("solve_stationary_point: no convergence in 200 iterations", beta,
                         F.norm());
}

MaximinResult solve_maximin_beta(VarianceLaw law) {
  auto f = [law](double b) {
    const double var = law == VarianceLaw::exact ? var_energy(Model::complex, b) : 1.5 / (b * b);
    return 2.0 * b * b * b * var - 1.0;
  };
  constexpr double lo = 0.1, hi = 2.0;
  double prev = f(lo);
  for (int i = 1; i <= 64; ++i) {
    const double cur = f(lo + (hi - lo) * i / 64.0);
    if (!(cur > prev))
      throw ConvergenceError("solve_maximin_beta: 2 beta^3 var is not monotone on the bracket",
                             lo + (hi - lo) * i / 64.0, cur);
    prev = cur;
  }
  if (!(f(lo) < 0.0 && f(hi) > 0.0))
    throw ConvergenceError("solve_maximin_beta: root not bracketed by [0.1, 2]", lo, f(lo));
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(
      f, lo, hi, boost::math::tools::eps_tolerance<double>(53), iters);
  const double root = std::abs(f(a)) <= std::abs(f(b)) ? a : b;
  return {root, f(root)};
}

}  // namespace qtherm
