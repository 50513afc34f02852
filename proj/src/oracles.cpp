#include "qtherm/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "qtherm/error.hpp"
#include "qtherm/gauss_legendre.hpp"
#include "qtherm/kernels.hpp"

namespace qtherm {

using cd = std::complex<double>;

DensityMatrix2::DensityMatrix2() : rho_(Eigen::Matrix2cd::Identity() * 0.5) {}

DensityMatrix2 DensityMatrix2::from_bloch(double r, double theta, double phi) {
  if (!(r >= 0.0 && r <= 1.0)) throw DomainError("from_bloch: r must lie in [0, 1]");
  if (!(theta >= 0.0 && theta <= std::numbers::pi))
    throw DomainError("from_bloch: theta must lie in [0, pi]");
  if (!std::isfinite(phi)) throw DomainError("from_bloch: phi must be finite");
  const double x = r * std::sin(theta) * std::cos(phi);
  const double y = r * std::sin(theta) * std::sin(phi);
  const double z = r * std::cos(theta);
  Eigen::Matrix2cd m;
  m << cd(0.5 * (1.0 + z), 0.0), cd(0.5 * x, -0.5 * y),
       cd(0.5 * x, 0.5 * y), cd(0.5 * (1.0 - z), 0.0);
  return DensityMatrix2(m);
}

DensityMatrix2 DensityMatrix2::from_matrix(const Eigen::Matrix2cd& m, double tol) {
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw DomainError("density matrix is not Hermitian");
  if (std::abs(m.trace() - cd(1.0, 0.0)) > tol)
    throw DomainError("density matrix does not have unit trace");
  const Eigen::Matrix2cd h = 0.5 * (m + m.adjoint());
  const double det = (h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0)).real();
  if (det < -tol || h(0, 0).real() < -tol || h(1, 1).real() < -tol)
    throw DomainError("density matrix is not positive semidefinite");
  return DensityMatrix2(h);
}

Eigen::Vector3d DensityMatrix2::bloch_vector() const {
  return {2.0 * rho_(0, 1).real(), -2.0 * rho_(0, 1).imag(),
          (rho_(0, 0) - rho_(1, 1)).real()};
}

double DensityMatrix2::radius() const { return std::min(1.0, bloch_vector().norm()); }

double DensityMatrix2::theta() const {
  const Eigen::Vector3d v = bloch_vector();
  const double r = v.norm();
  if (r == 0.0) return 0.0;
  return std::acos(std::clamp(v.z() / r, -1.0, 1.0));
}

double DensityMatrix2::phi() const {
  const Eigen::Vector3d v = bloch_vector();
  double p = std::atan2(v.y(), v.x());
  if (p < 0.0) p += 2.0 * std::numbers::pi;
  if (p >= 2.0 * std::numbers::pi) p = 0.0;
  return p;
}

Eigen::Vector2d DensityMatrix2::eigenvalues() const {
  const double r = radius();
  return {0.5 * (1.0 - r), 0.5 * (1.0 + r)};
}

double DensityMatrix2::energy() const {
  const double four_det = 4.0 * (rho_(0, 0) * rho_(1, 1) - std::norm(rho_(0, 1))).real();
  if (four_det <= 0.0) return std::numeric_limits<double>::infinity();
  return -std::log(four_det);
}

double DensityMatrix2::entropy() const {
  double s = 0.0;
  for (double l : eigenvalues())
    if (l > 0.0) s -= l * std::log(l);
  return s;
}

CdfTable::CdfTable(GibbsPoint point, std::size_t panels)
    : point_(point),
      log_z_(log_partition(point.model, point.beta)),
      t_max_(std::sqrt(quadrature_cutoff(point.beta))) {
  if (panels < 1) throw DomainError("CdfTable: need at least one panel");
  h_ = t_max_ / static_cast<double>(panels);
  cumulative_.assign(panels + 1, 0.0);
  for (std::size_t i = 0; i < panels; ++i)
    cumulative_[i + 1] = cumulative_[i] + panel_partial(i, (i + 1) * h_);
  total_ = cumulative_.back();
}

double CdfTable::t_density(double t) const {
  const double E = t * t;
  if (point_.model == Model::classical) {
    // 2t / r(t^2) stays finite as t -> 0
    const double r = polarization_radius(E);
    const double ratio = r > 0.0 ? 2.0 * t / r : 2.0;
    return std::exp(-point_.beta * E - log_z_) * ratio;
  }
  return std::exp(-point_.beta * E - log_z_) * structure_function(point_.model, E) * 2.0 * t;
}

double CdfTable::panel_partial(std::size_t i, double t) const {
  const auto& rule = gauss_legendre(10);
  const double a = static_cast<double>(i) * h_;
  const double half = 0.5 * (t - a), mid = 0.5 * (t + a);
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k)
    sum += rule.weights[k] * t_density(mid + half * rule.nodes[k]);
  return sum * half;
}

double CdfTable::cdf(double E) const {
  if (!(E >= 0.0)) throw DomainError("CdfTable::cdf: E must be non-negative");
  const double t = std::sqrt(E);
  if (t >= t_max_) return 1.0;
  const std::size_t panels = cumulative_.size() - 1;
  const std::size_t i = std::min(panels - 1, static_cast<std::size_t>(t / h_));
  return std::min(1.0, (cumulative_[i] + panel_partial(i, t)) / total_);
}

double CdfTable::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("CdfTable::quantile: p must lie in [0, 1]");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return t_max_ * t_max_;
  const double target = p * total_;
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  const std::size_t panels = cumulative_.size() - 1;
  const std::size_t i = std::min<std::size_t>(
      panels - 1, static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - cumulative_.begin() - 1, 0)));
  double lo = static_cast<double>(i) * h_;
  double hi = lo + h_;
  const double need = target - cumulative_[i];
  const double width = cumulative_[i + 1] - cumulative_[i];
  double t = width > 0.0 ? lo + std::clamp(need / width, 0.0, 1.0) * h_ : lo;
  for (int iter = 0; iter < 200; ++iter) {
    const double f = panel_partial(i, t) - need;
    if (f > 0.0) hi = t; else lo = t;
    const double g = t_density(t);
    double next = g > 0.0 ? t - f / g : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - t);
    t = next;
    if (step < 1e-12 || hi - lo < 1e-12) break;
  }
  return t * t;
}

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (chunk + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double open_uniform(std::mt19937_64& engine) {
  return (static_cast<double>(engine() >> 11) + 0.5) * 0x1p-53;
}

std::vector<double> sample_energy(const GibbsPoint& point, std::uint64_t seed,
                                  std::size_t count) {
  if (count == 0) throw DomainError("sample_energy: count must be positive");
  const CdfTable table(point);
  return kernels::sample_batch(table, seed, count, kernels::Execution::parallel);
}

DensityMatrix2 page_reduced_state(int m, std::mt19937_64& engine) {
  if (m < 2) throw DomainError("page_reduced_state: m must be >= 2");
  std::normal_distribution<double> normal;
  Eigen::Matrix<cd, 2, Eigen::Dynamic> v(2, m);
  for (int a = 0; a < 2; ++a)
    for (int j = 0; j < m; ++j) {
      const double re = normal(engine);
      const double im = normal(engine);
      v(a, j) = cd(re, im);
    }
  v /= v.norm();
  const Eigen::Matrix2cd rho = v * v.adjoint();
  return DensityMatrix2::from_matrix(rho, 1e-12);
}

DensityMatrix2 page_reduced_state(int m, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  return page_reduced_state(m, engine);
}

std::vector<double> page_energies(int m, std::uint64_t seed, std::size_t count) {
  return kernels::page_energy_batch(m, seed, count, kernels::Execution::parallel);
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw DomainError("ks_statistic: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

}  // namespace qtherm
