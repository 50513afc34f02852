#include "qtherm/quadrature.hpp"

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>
#include <vector>

#include "qtherm/error.hpp"
#include "qtherm/gauss_legendre.hpp"

namespace qtherm {
namespace {

// Kronrod 15-point abscissae (positive half), with the embedded 7-point Gauss
// rule on the odd-indexed nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gk15(const RealFunction& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * pair;
    if (j % 2 == 1) gauss += kWg[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

std::vector<double> legendre_nodes(std::size_t n, std::vector<double>& weights) {
  std::vector<double> nodes(n);
  weights.assign(n, 0.0);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute the derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
  return nodes;
}

}  // namespace

const GaussLegendreRule& gauss_legendre(std::size_t n) {
  if (n == 0) throw DomainError("gauss_legendre: order must be positive");
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<GaussLegendreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) {
    auto rule = std::make_unique<GaussLegendreRule>();
    if (n == 1) {
      rule->nodes = {0.0};
      rule->weights = {2.0};
    } else {
      rule->nodes = legendre_nodes(n, rule->weights);
    }
    slot = std::move(rule);
  }
  return *slot;
}

QuadratureResult integrate_interval(const RealFunction& f, double a, double b,
                                    double abs_tol, double rel_tol,
                                    std::size_t max_subdivisions) {
  if (!(abs_tol > 0.0) && !(rel_tol > 0.0))
    throw DomainError("integrate_interval: a positive tolerance is required");
  if (!std::isfinite(a) || !std::isfinite(b))
    throw DomainError("integrate_interval: limits must be finite");
  if (a == b) return {0.0, 0.0, 0};

  std::priority_queue<Segment> heap;
  Segment first = gk15(f, a, b);
  double total = first.value;
  double total_err = first.error;
  std::size_t evaluations = 15;
  heap.push(first);

  std::size_t subdivisions = 0;
  while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (subdivisions >= max_subdivisions)
      throw ConvergenceError("integrate_interval: subdivision limit reached", total,
                             total_err);
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = gk15(f, worst.a, mid);
    const Segment right = gk15(f, mid, worst.b);
    evaluations += 30;
    ++subdivisions;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    if (total_err <= std::max(abs_tol, rel_tol * std::abs(total))) {
      // re-add from scratch to shed accumulated rounding in the running sums
      std::priority_queue<Segment> copy = heap;
      double v = 0.0, e = 0.0;
      while (!copy.empty()) {
        v += copy.top().value;
        e += copy.top().error;
        copy.pop();
      }
      total = v;
      total_err = e;
    }
  }
  return {total, total_err, evaluations};
}

QuadratureResult integrate_semiinfinite(const RealFunction& f, double tol,
                                        const SemiInfiniteOptions& opts) {
  if (!(tol > 0.0)) throw DomainError("integrate_semiinfinite: tol must be positive");
  if (!(opts.upper > 0.0) || !(opts.tail_bound >= 0.0))
    throw DomainError("integrate_semiinfinite: invalid options");
  const double budget = std::max(tol - opts.tail_bound, 0.5 * tol);
  QuadratureResult r;
  if (opts.sqrt_endpoint) {
    const RealFunction g = [&f](double t) { return 2.0 * t * f(t * t); };
    r = integrate_interval(g, 0.0, std::sqrt(opts.upper), budget, opts.rel_tol,
                           opts.max_subdivisions);
  } else {
    r = integrate_interval(f, 0.0, opts.upper, budget, opts.rel_tol,
                           opts.max_subdivisions);
  }
  r.abs_error_estimate += opts.tail_bound;
  return r;
}

}  // namespace qtherm
