#pragma once

#include <cstddef>
#include <vector>

namespace qtherm {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule, computed by Newton iteration on P_n. Results are cached per n,
/// the returned reference stays valid for the life of the program.
const GaussLegendreRule& gauss_legendre(std::size_t n);

}  // namespace qtherm
