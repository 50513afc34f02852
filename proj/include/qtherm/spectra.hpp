#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "qtherm/kernels.hpp"
#include "qtherm/oracles.hpp"

namespace qtherm {

struct SpectrumEntry {
  int d = 0;
  double lambda = 0.0;
  double log_lambda = 0.0;
  double multiplicity = 0.0;
  double log_multiplicity = 0.0;
  /// Exact integer multiplicity while it fits in 64 bits (n <= 60).
  std::optional<std::uint64_t> exact_multiplicity;
};

/// Eigenvalues of the n-fold tensor power of rho averaged over the complex
/// prior with u = 1 - beta, grouped by d = 0 .. floor(n/2).
struct SpectrumTable {
  int n = 0;
  double beta = 0.0;
  std::vector<SpectrumEntry> entries;
};

/// lambda_{n,d} and multiplicity (n-2d+1)^2 C(n+1,d)/(n+1), all in log domain.
SpectrumTable spectrum(int n, double beta);

/// {n, beta, entries: [{d, lambda, multiplicity}]}
void to_json(nlohmann::json& j, const SpectrumTable& table);

/// sum_d ((n-2d)/n) m_{n,d} lambda_{n,d}; tends to the complex <r> as n grows.
double spin_sum_polarization(int n, double beta);

struct ZetaOracleResult {
  Eigen::MatrixXcd matrix;
  /// Ascending eigenvalues of matrix.
  Eigen::VectorXd eigenvalues;
  std::size_t nodes_used = 0;
  /// Largest eigenvalue change at the last node doubling.
  double eigen_change = 0.0;
};

/// Brute-force average of the n-fold tensor power (n <= 3) by tensor
/// Gauss-Legendre quadrature over the Bloch ball. Node count starts at `nodes`
/// (>= 48) and doubles until the eigenvalues move by less than 1e-9, at most
/// 192 per axis; throws ConvergenceError otherwise.
ZetaOracleResult zeta_matrix_oracle(int n, double beta, std::size_t nodes = 48,
                                    kernels::Execution exec = kernels::Execution::parallel);

/// -n S(rho) - Tr(rho^(x)n log zeta_n), natural log, zeta_n from the oracle.
double relative_entropy_numeric(const DensityMatrix2& rho, int n, double beta);

/// Large-n expansion of the relative entropy without its O(1/n) term:
/// (3/2) ln n - 1/2 - (3/2) ln 2 + beta E - artanh(Omega)/Omega + ln Gamma(beta)
/// - ln Gamma(3/2 + beta), Omega = Omega_complex(E).
double asymptotic_relent(double beta, double E, int n);

struct StationaryPoint {
  double beta = 0.0;
  double E = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Stationary point of asymptotic_relent: E = psi(3/2+beta) - psi(beta) and
/// beta = (2 + ln((1-Omega)/(1+Omega)) / (e^E Omega)) / (4 Omega^2), by damped
/// Newton from (0.5, 2.5). Residual < 1e-10 or ConvergenceError after 200 steps.
StationaryPoint solve_stationary_point();

enum class VarianceLaw { exact, large_beta };

struct MaximinResult {
  double beta = 0.0;
  double residual = 0.0;
};

/// Root of 2 beta^3 var(beta) = 1 on [0.1, 2], complex family. large_beta uses
/// var = 3/(2 beta^2), whose root is 1/3.
MaximinResult solve_maximin_beta(VarianceLaw law = VarianceLaw::exact);

}  // namespace qtherm
