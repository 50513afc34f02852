// One line per acceptance criterion. Exit status is non-zero if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include <fmt/core.h>

#include "qtherm/magnetics.hpp"
#include "qtherm/models.hpp"
#include "qtherm/duality.hpp"
#include "qtherm/oracles.hpp"
#include "qtherm/quadrature.hpp"
#include "qtherm/spectra.hpp"

using namespace qtherm;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void expect(bool ok, const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "MISS ") + what;
    pass = pass && ok;
  }
  void near(const std::string& name, double got, double want, double tol) {
    expect(std::abs(got - want) <= tol,
           fmt::format("{}={:.9g} (want {:.9g} +- {:.1e})", name, got, want, tol));
  }
  void rel(const std::string& name, double got, double want, double tol) {
    expect(std::abs(got - want) <= tol * std::abs(want),
           fmt::format("{}={:.9g} (want {:.9g} rel {:.0e})", name, got, want, tol));
  }
};

int failures = 0;

void criterion(int id, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < budget_s;
  const bool ok = o.pass && in_time;
  if (!ok) ++failures;
  fmt::print("AC{:<2} {}  [{:.3f}s / {:g}s{}]  {}\n", id, ok ? "PASS" : "FAIL", secs, budget_s,
             in_time ? "" : " OVER", o.detail);
  std::fflush(stdout);
}

double quad(Model m, double beta, const std::function<double(double)>& g, bool weighted_by_pdf) {
  SemiInfiniteOptions opts;
  opts.upper = quadrature_cutoff(beta);
  opts.rel_tol = 1e-13;
  opts.tail_bound = gibbs_tail_bound(m, beta, opts.upper, 2) *
                    (weighted_by_pdf ? 1.0 : partition(m, beta));
  const double lz = log_partition(m, beta);
  const RealFunction f = [&](double E) {
    const double w = std::exp(-beta * E) *
                     (m == Model::classical ? 1.0 / polarization_radius(E) : structure_function(m, E));
    return g(E) * (weighted_by_pdf ? w * std::exp(-lz) : w);
  };
  return integrate_semiinfinite(f, 1e-15, opts).value;
}

}  // namespace

int main() {
  criterion(1, 1.0, [] {
    Outcome o;
    const auto p = solve_stationary_point();
    o.near("beta", p.beta, 0.457407, 1e-4);
    o.near("E", p.E, 2.58527, 1e-4);
    return o;
  });

  criterion(2, 1.0, [] {
    Outcome o;
    o.near("beta", solve_maximin_beta().beta, 0.468733, 1e-5);
    const double third = solve_maximin_beta(VarianceLaw::large_beta).beta;
    o.expect(third == 1.0 / 3.0, fmt::format("large-beta root={:.17g} (want 1/3 exactly)", third));
    return o;
  });

  criterion(3, 10.0, [] {
    Outcome o;
    const auto c = run_duality_experiment(Model::complex, 16.3);
    o.near("complex normalizer", c.normalizer, 0.984296, 0.002);
    o.near("complex <beta>", c.mean_beta, 0.0636579, 5e-4);
    o.near("complex roundtrip", c.roundtrip_meanE, 16.2805, 0.02);
    const auto q = run_duality_experiment(Model::quaternionic, 16.3);
    o.near("quat normalizer", q.normalizer, 0.902062, 0.002);
    o.near("quat <beta>", q.mean_beta, 0.0664174, 5e-4);
    o.near("quat roundtrip", q.roundtrip_meanE, 16.2645, 0.02);
    return o;
  });

  criterion(4, 1.0, [] {
    Outcome o;
    o.near("quat", intersect_brosseau(Model::quaternionic).beta_star, 0.76007, 1e-3);
    o.near("complex", intersect_brosseau(Model::complex).beta_star, 1.04585, 1e-3);
    o.near("real", intersect_brosseau(Model::real).beta_star, 1.46249, 1e-3);
    o.near("classical", intersect_brosseau(Model::classical).beta_star, 3.1857, 1e-3);
    return o;
  });

  criterion(5, 5.0, [] {
    Outcome o;
    const std::pair<Model, double> want[] = {{Model::classical, 1.57565},
                                             {Model::real, 0.53341},
                                             {Model::complex, 0.000111286},
                                             {Model::quaternionic, 0.0000405489}};
    for (const auto& [m, e0] : want) {
      const auto x = kmb_density_crossing(m, 1e-6, 50.0);
      if (x)
        o.rel(std::string(to_string(m)), *x, e0, 0.01);
      else
        o.expect(false, fmt::format("{}: no sign change in [1e-6, 50] (want {:g})", to_string(m), e0));
    }
    o.near("N_complex - N_quat at 40",
           integrated_density(Model::complex, 40.0) - integrated_density(Model::quaternionic, 40.0),
           2.0 / 3.0, 1e-8);
    return o;
  });

  criterion(6, 1.0, [] {
    Outcome o;
    const auto fit = fit_log_linear(1e3, 1e5, 200);
    o.near("slope", fit.slope, -0.5, 0.002);
    o.near("intercept", fit.intercept, 0.120782, 0.002);
    return o;
  });

  criterion(7, 10.0, [] {
    Outcome o;
    const auto g = kmb_gap_maximum();
    o.near("gap", g.gap, 0.0526, 0.0005);
    o.near("argmax", g.beta, 0.49825, 0.01);
    return o;
  });

  criterion(8, 1.0, [] {
    Outcome o;
    const double bc = critical_beta(1.0);
    o.near("beta_c", bc, 0.647175, 1e-6);
    const double t1 = 1e-4, t2 = 1e-2;
    const double p1 = order_parameter(bc / (1 - t1), 1.0).first;
    const double p2 = order_parameter(bc / (1 - t2), 1.0).first;
    o.near("exponent", (std::log(p2) - std::log(p1)) / (std::log(t2) - std::log(t1)), 0.5, 1e-3);
    return o;
  });

  criterion(9, 300.0, [] {
    Outcome o;
    double worst = 0.0;
    std::string where;
    for (Model m : kAllModels)
      for (double b : {0.3, 1.0, 3.0, 10.0}) {
        const double mean = mean_energy(m, b);
        const double rels[] = {
            quad(m, b, [](double) { return 1.0; }, false) / partition(m, b) - 1.0,
            quad(m, b, [](double E) { return E; }, true) / mean - 1.0,
            quad(m, b, [mean](double E) { return (E - mean) * (E - mean); }, true) / var_energy(m, b) - 1.0,
            quad(m, b, polarization_radius, true) / mean_polarization(m, b) - 1.0};
        for (double r : rels)
          if (std::abs(r) > worst) {
            worst = std::abs(r);
            where = fmt::format("{} beta={}", to_string(m), b);
          }
      }
    o.expect(worst <= 1e-8, fmt::format("closed forms vs quadrature worst rel {:.2e} at {}", worst, where));

    double eig = 0.0;
    for (int n = 1; n <= 3; ++n)
      for (double b : {0.5, 1.0}) {
        const auto z = zeta_matrix_oracle(n, b);
        std::vector<double> want;
        for (const auto& e : spectrum(n, b).entries)
          for (std::uint64_t k = 0; k < *e.exact_multiplicity; ++k) want.push_back(e.lambda);
        std::sort(want.begin(), want.end());
        for (std::size_t i = 0; i < want.size(); ++i)
          eig = std::max(eig, std::abs(z.eigenvalues(static_cast<Eigen::Index>(i)) - want[i]));
      }
    o.expect(eig <= 1e-6, fmt::format("zeta eigenvalues max err {:.2e}", eig));

    for (double b : {0.5, 1.0, 2.0}) {
      const double t = mean_polarization(Model::complex, b);
      const double g1 = std::abs(spin_sum_polarization(100, b) - t);
      const double g2 = std::abs(spin_sum_polarization(200, b) - t);
      const double g4 = std::abs(spin_sum_polarization(400, b) - t);
      o.expect(std::abs(g1 / g2 - 2.0) <= 0.3 && std::abs(g2 / g4 - 2.0) <= 0.3,
               fmt::format("spin-sum gap ratios at beta={} {:.3f} {:.3f}", b, g1 / g2, g2 / g4));
    }

    for (int m : {2, 3}) {
      const auto es = page_energies(m, 7000 + m, 1000000);
      const CdfTable table(GibbsPoint(Model::complex, m - 1.0));
      const double d = ks_statistic(es, [&](double e) { return table.cdf(e); });
      o.expect(d < 0.002, fmt::format("Page KS m={} {:.5f}", m, d));
    }
    return o;
  });

  criterion(10, 1.0, [] {
    Outcome o;
    o.near("mean energy 5-term, beta=10", mean_energy_asymptotic(10.0, 5), mean_energy(Model::complex, 10.0), 1e-6);
    o.near("polarization 4-term, beta=25", polarization_asymptotic(25.0), mean_polarization(Model::complex, 25.0), 1e-5);
    return o;
  });

  fmt::print("{} of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
