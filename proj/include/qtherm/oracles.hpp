#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qtherm/models.hpp"
#include "qtherm/quadrature.hpp"

namespace qtherm {

/// 2x2 density matrix, Hermitian with unit trace and eigenvalues (1 +- r)/2.
class DensityMatrix2 {
 public:
  /// Maximally mixed state I/2.
  DensityMatrix2();

  /// rho = (I + x sx + y sy + z sz)/2 with (x, y, z) = r (sin t cos p, sin t sin p, cos t).
  static DensityMatrix2 from_bloch(double r, double theta, double phi);
  /// Validates Hermiticity, trace and positivity to tol; throws DomainError.
  static DensityMatrix2 from_matrix(const Eigen::Matrix2cd& m, double tol = 1e-10);

  const Eigen::Matrix2cd& matrix() const { return rho_; }
  Eigen::Vector3d bloch_vector() const;
  double radius() const;
  double theta() const;
  /// In [0, 2 pi).
  double phi() const;
  /// Ascending.
  Eigen::Vector2d eigenvalues() const;
  /// E = -ln(1 - r^2), computed as -ln(4 det rho). +inf for a pure state.
  double energy() const;
  /// Von Neumann entropy, natural log.
  double entropy() const;

 private:
  explicit DensityMatrix2(const Eigen::Matrix2cd& m) : rho_(m) {}
  Eigen::Matrix2cd rho_;
};

/// Tabulated CDF of a Gibbs law, for inverse-CDF sampling. Panels are uniform
/// in t = sqrt(E) up to sqrt(quadrature_cutoff(beta)), each integrated with
/// 10-point Gauss-Legendre, and the table is normalised by its own total so
/// that cdf(inf) = 1 exactly.
class CdfTable {
 public:
  explicit CdfTable(GibbsPoint point, std::size_t panels = 512);

  double cdf(double E) const;
  /// Smallest E with cdf(E) = p, to 1e-10 in sqrt(E). p in [0, 1].
  double quantile(double p) const;
  /// Unnormalised total mass of the table; 1 up to quadrature error.
  double total_mass() const { return total_; }
  const GibbsPoint& point() const { return point_; }

 private:
  // density of t = sqrt(E), unnormalised
  double t_density(double t) const;
  double panel_partial(std::size_t i, double t) const;

  GibbsPoint point_;
  double log_z_;
  double t_max_;
  double h_;
  std::vector<double> cumulative_;  // cumulative_[i] = mass in [0, i h)
  double total_;
};

/// Seed of the i-th chunk of a batch. Batches are generated chunk by chunk with
/// an independent mt19937_64 per chunk, so serial and parallel runs agree.
std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk);
inline constexpr std::size_t kBatchChunk = 4096;

/// Uniform on the open interval (0, 1).
double open_uniform(std::mt19937_64& engine);

/// i.i.d. draws from the Gibbs law at point, by inverting its CDF.
std::vector<double> sample_energy(const GibbsPoint& point, std::uint64_t seed,
                                  std::size_t count);

/// Reduced 2x2 state of a Haar-random pure state in C^2 (x) C^m, m >= 2.
DensityMatrix2 page_reduced_state(int m, std::uint64_t seed);
/// Same, drawing from an existing engine.
DensityMatrix2 page_reduced_state(int m, std::mt19937_64& engine);
/// Energies -ln(1 - r^2) of count independent reduced states.
std::vector<double> page_energies(int m, std::uint64_t seed, std::size_t count);

/// Two-sided Kolmogorov-Smirnov distance between the empirical law of samples
/// and cdf. samples need not be sorted.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

}  // namespace qtherm
