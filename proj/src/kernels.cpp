#include "qtherm/kernels.hpp"

#include <cmath>
#include <complex>
#include <exception>
#include <limits>
#include <numbers>

#include <omp.h>

#include "qtherm/error.hpp"
#include "qtherm/gauss_legendre.hpp"
#include "qtherm/specfun.hpp"

namespace qtherm::kernels {
namespace {

using cd = std::complex<double>;

std::size_t chunk_count(std::size_t count) {
  return (count + kBatchChunk - 1) / kBatchChunk;
}

Eigen::MatrixXcd kron_power(const Eigen::Matrix2cd& rho, int n) {
  Eigen::MatrixXcd out = rho;
  for (int k = 1; k < n; ++k) {
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i)
      for (Eigen::Index j = 0; j < out.cols(); ++j)
        next.block<2, 2>(2 * i, 2 * j) = out(i, j) * rho;
    out = std::move(next);
  }
  return out;
}

}  // namespace

void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body,
                    Execution exec) {
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr first_error;
  std::size_t first_index = std::numeric_limits<std::size_t>::max();
  const auto total = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < total; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(qtherm_kernel_error)
      {
        if (static_cast<std::size_t>(i) < first_index) {
          first_index = static_cast<std::size_t>(i);
          first_error = std::current_exception();
        }
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<double> map_grid(const std::function<double(double)>& f,
                             std::span<const double> xs, Execution exec) {
  std::vector<double> out(xs.size());
  for_each_index(xs.size(), [&](std::size_t i) { out[i] = f(xs[i]); }, exec);
  return out;
}

Eigen::MatrixXcd zeta_accumulate(int n, double beta, std::size_t nodes, int radial_power,
                                 Execution exec) {
  if (n < 1 || n > 3) throw DomainError("zeta_accumulate: n must be in 1..3");
  if (!(beta > 0.0)) throw DomainError("zeta_accumulate: beta must be positive");
  if (radial_power < 1) throw DomainError("zeta_accumulate: radial_power must be >= 1");
  const auto& rule = gauss_legendre(nodes);
  const double pi = std::numbers::pi;
  const double k = radial_power;
  const double log_norm = specfun::log_gamma(1.5 + beta) - 1.5 * std::log(pi) -
                          specfun::log_gamma(beta);
  const auto dim = static_cast<Eigen::Index>(1) << n;

  std::vector<Eigen::MatrixXcd> partial(nodes, Eigen::MatrixXcd::Zero(dim, dim));
  for_each_index(
      nodes,
      [&](std::size_t i) {
        // v in (0, 1), r = 1 - v^k
        const double v = 0.5 * (rule.nodes[i] + 1.0);
        const double vk = std::pow(v, k);
        const double r = 1.0 - vk;
        const double log_radial = log_norm + 2.0 * std::log(r) +
                                  (beta - 1.0) * (k * std::log(v) + std::log(2.0 - vk)) +
                                  std::log(k) + (k - 1.0) * std::log(v);
        const double wr = 0.5 * rule.weights[i] * std::exp(log_radial);
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
        for (std::size_t a = 0; a < nodes; ++a) {
          const double theta = 0.5 * pi * (rule.nodes[a] + 1.0);
          const double wt = 0.5 * pi * rule.weights[a] * std::sin(theta);
          for (std::size_t b = 0; b < nodes; ++b) {
            const double phi = pi * (rule.nodes[b] + 1.0);
            const double wp = pi * rule.weights[b];
            const double x = r * std::sin(theta) * std::cos(phi);
            const double y = r * std::sin(theta) * std::sin(phi);
            const double z = r * std::cos(theta);
            Eigen::Matrix2cd rho;
            rho << cd(0.5 * (1.0 + z), 0.0), cd(0.5 * x, -0.5 * y),
                   cd(0.5 * x, 0.5 * y), cd(0.5 * (1.0 - z), 0.0);
            acc += (wt * wp) * kron_power(rho, n);
          }
        }
        partial[i] = wr * acc;
      },
      exec);

  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& p : partial) total += p;
  return total;
}

std::vector<double> sample_batch(const CdfTable& table, std::uint64_t seed,
                                 std::size_t count, Execution exec) {
  std::vector<double> out(count);
  for_each_index(
      chunk_count(count),
      [&](std::size_t c) {
        std::mt19937_64 engine(chunk_seed(seed, c));
        const std::size_t end = std::min(count, (c + 1) * kBatchChunk);
        for (std::size_t i = c * kBatchChunk; i < end; ++i)
          out[i] = table.quantile(open_uniform(engine));
      },
      exec);
  return out;
}

std::vector<double> page_energy_batch(int m, std::uint64_t seed, std::size_t count,
                                      Execution exec) {
  if (m < 2) throw DomainError("page_energy_batch: m must be >= 2");
  std::vector<double> out(count);
  for_each_index(
      chunk_count(count),
      [&](std::size_t c) {
        std::mt19937_64 engine(chunk_seed(seed, c));
        const std::size_t end = std::min(count, (c + 1) * kBatchChunk);
        for (std::size_t i = c * kBatchChunk; i < end; ++i)
          out[i] = page_reduced_state(m, engine).energy();
      },
      exec);
  return out;
}

}  // namespace qtherm::kernels
