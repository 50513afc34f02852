#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qtherm/oracles.hpp"

// Data-parallel kernels. Every kernel has a serial reference and an OpenMP
// version producing bit-identical output; tests hold them to that.
namespace qtherm::kernels {

enum class Execution { serial, parallel };

/// body(i) for i in [0, n). Exceptions thrown inside the parallel region are
/// captured and the one from the lowest index is rethrown after the loop.
void for_each_index(std::size_t n, const std::function<void(std::size_t)>& body,
                    Execution exec);

/// f applied to each x, results in index order.
std::vector<double> map_grid(const std::function<double(double)>& f,
                             std::span<const double> xs, Execution exec);

/// Integral of (x)^n rho(r, theta, phi) against the normalised complex prior
/// with u = 1 - beta, on a tensor Gauss-Legendre grid with `nodes` points per
/// axis. r is mapped as r = 1 - v^k (k = radial_power). Per-r partial sums are
/// added in index order.
Eigen::MatrixXcd zeta_accumulate(int n, double beta, std::size_t nodes, int radial_power,
                                 Execution exec);

std::vector<double> sample_batch(const CdfTable& table, std::uint64_t seed,
                                 std::size_t count, Execution exec);

std::vector<double> page_energy_batch(int m, std::uint64_t seed, std::size_t count,
                                      Execution exec);

}  // namespace qtherm::kernels
