#include <algorithm>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qtherm/error.hpp"
#include "qtherm/spectra.hpp"
#include "qtherm/specfun.hpp"

using namespace qtherm;

namespace {

// binomial by Pascal's triangle, independent of the log-gamma path
std::uint64_t choose(int n, int k) {
  std::vector<std::uint64_t> row(n + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j > 0; --j) row[j] += row[j - 1];
  return row[k];
}

std::vector<double> expanded_eigenvalues(const SpectrumTable& t) {
  std::vector<double> out;
  for (const auto& e : t.entries)
    for (std::uint64_t k = 0; k < *e.exact_multiplicity; ++k) out.push_back(e.lambda);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Spectrum, SmallCases) {
  const auto one = spectrum(1, 3.7);
  ASSERT_EQ(one.entries.size(), 1u);
  EXPECT_NEAR(one.entries[0].lambda, 0.5, 1e-15);
  EXPECT_EQ(*one.entries[0].exact_multiplicity, 2u);
  const auto two = spectrum(2, 1.0);
  ASSERT_EQ(two.entries.size(), 2u);
  EXPECT_NEAR(two.entries[0].lambda, 0.3, 1e-14);
  EXPECT_NEAR(two.entries[1].lambda, 0.1, 1e-14);
  EXPECT_EQ(*two.entries[0].exact_multiplicity, 3u);
  EXPECT_EQ(*two.entries[1].exact_multiplicity, 1u);
  for (double b : {0.2, 2.5}) {
    const auto t = spectrum(2, b);
    EXPECT_NEAR(t.entries[0].lambda, (2.0 + b) / (4.0 * (1.5 + b)), 1e-14);
    EXPECT_NEAR(t.entries[1].lambda, b / (4.0 * (1.5 + b)), 1e-14);
  }
  EXPECT_THROW(spectrum(0, 1.0), DomainError);
  EXPECT_THROW(spectrum(3, 0.0), DomainError);
}

TEST(Spectrum, TraceAndMultiplicities) {
  for (int n = 1; n <= 12; ++n)
    for (double b : {0.3, 1.0, 3.0}) {
      const auto t = spectrum(n, b);
      ASSERT_EQ(static_cast<int>(t.entries.size()), n / 2 + 1);
      double trace = 0.0;
      std::uint64_t count = 0;
      for (const auto& e : t.entries) {
        trace += e.multiplicity * e.lambda;
        const std::uint64_t num = (n - 2 * e.d + 1) * (n - 2 * e.d + 1) * choose(n + 1, e.d);
        ASSERT_EQ(num % (n + 1), 0u) << n << " " << e.d;
        EXPECT_EQ(*e.exact_multiplicity, num / (n + 1));
        EXPECT_EQ(e.multiplicity, static_cast<double>(num / (n + 1)));
        EXPECT_GT(e.lambda, 0.0);
        count += *e.exact_multiplicity;
      }
      EXPECT_NEAR(trace, 1.0, 1e-10) << n << " " << b;
      EXPECT_EQ(count, std::uint64_t{1} << n);
    }
  double trace = 0.0;
  for (const auto& e : spectrum(6, 0.7).entries) trace += e.multiplicity * e.lambda;
  EXPECT_NEAR(trace, 1.0, 1e-12);
}

TEST(Spectrum, LargeNStaysInLogDomain) {
  const auto t = spectrum(2000, 1.0);
  double log_trace = -INFINITY;
  for (const auto& e : t.entries) {
    EXPECT_TRUE(std::isfinite(e.log_lambda));
    const double term = e.log_multiplicity + e.log_lambda;
    log_trace = std::max(log_trace, term) + std::log1p(std::exp(-std::abs(log_trace - term)));
  }
  EXPECT_NEAR(log_trace, 0.0, 1e-9);
  EXPECT_FALSE(t.entries[0].exact_multiplicity.has_value());
}

TEST(Spectrum, JsonShape) {
  nlohmann::json j = spectrum(3, 0.5);
  EXPECT_EQ(j["n"], 3);
  EXPECT_DOUBLE_EQ(j["beta"].get<double>(), 0.5);
  ASSERT_EQ(j["entries"].size(), 2u);
  EXPECT_EQ(j["entries"][1]["d"], 1);
  EXPECT_TRUE(j["entries"][0].contains("lambda"));
  EXPECT_TRUE(j["entries"][0].contains("multiplicity"));
}

TEST(SpinSum, SmallCases) {
  EXPECT_NEAR(spin_sum_polarization(2, 1.0), 0.9, 1e-14);
  for (double b : {0.1, 1.0, 7.0}) EXPECT_NEAR(spin_sum_polarization(1, b), 1.0, 1e-14);
}

TEST(SpinSum, GapShrinksLikeOneOverN) {
  for (double b : {0.5, 1.0, 2.0}) {
    const double target = mean_polarization(Model::complex, b);
    const double g100 = std::abs(spin_sum_polarization(100, b) - target);
    const double g200 = std::abs(spin_sum_polarization(200, b) - target);
    const double g400 = std::abs(spin_sum_polarization(400, b) - target);
    EXPECT_LT(g200, g100);
    EXPECT_LT(g400, g200);
    EXPECT_NEAR(g100 / g200, 2.0, 0.3) << b;
    EXPECT_NEAR(g200 / g400, 2.0, 0.3) << b;
  }
  EXPECT_LT(std::abs(spin_sum_polarization(200, 1.0) - 0.75),
            std::abs(spin_sum_polarization(100, 1.0) - 0.75));
}

TEST(ZetaOracle, MatchesSpectrum) {
  for (int n = 1; n <= 3; ++n)
    for (double b : {0.5, 1.0}) {
      const auto z = zeta_matrix_oracle(n, b);
      const auto want = expanded_eigenvalues(spectrum(n, b));
      ASSERT_EQ(static_cast<std::size_t>(z.eigenvalues.size()), want.size());
      for (std::size_t i = 0; i < want.size(); ++i)
        EXPECT_NEAR(z.eigenvalues(i), want[i], 1e-6) << n << " " << b << " " << i;
      EXPECT_LT((z.matrix - z.matrix.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    }
  const auto one = zeta_matrix_oracle(1, 2.0);
  EXPECT_LT((one.matrix - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-10);
  const auto three = zeta_matrix_oracle(3, 0.5);
  EXPECT_NEAR(three.matrix.trace().real(), 1.0, 1e-8);
  EXPECT_GE(three.eigenvalues.minCoeff(), 0.0);
  EXPECT_THROW(zeta_matrix_oracle(4, 1.0), DomainError);
  EXPECT_THROW(zeta_matrix_oracle(2, 1.0, 16), DomainError);
}

TEST(RelativeEntropy, ClosedFormCases) {
  const DensityMatrix2 mixed;
  EXPECT_NEAR(relative_entropy_numeric(mixed, 2, 1.0),
              -2.0 * std::log(2.0) - 0.25 * (3.0 * std::log(0.3) + std::log(0.1)), 1e-8);
  EXPECT_NEAR(relative_entropy_numeric(mixed, 1, 3.0), 0.0, 1e-9);
  const auto pure = DensityMatrix2::from_bloch(1.0, 0.4, 1.0);
  for (int n = 1; n <= 3; ++n) EXPECT_GE(relative_entropy_numeric(pure, n, 0.8), 0.0);
  // for I/2 the trace term is the multiplicity-weighted mean log eigenvalue
  for (int n = 1; n <= 3; ++n) {
    double s = 0.0;
    for (const auto& e : spectrum(n, 0.5).entries) s += e.multiplicity * std::log(e.lambda);
    EXPECT_NEAR(relative_entropy_numeric(mixed, n, 0.5), -n * std::log(2.0) - s / std::ldexp(1.0, n), 1e-8);
  }
}

TEST(Asymptotics, BetaDerivativeVanishesOnMeanEnergy) {
  const double E = mean_energy(Model::complex, 1.0);
  EXPECT_NEAR(E, 8.0 / 3.0 - 2.0 * std::numbers::ln2, 1e-14);
  const double h = 1e-5;
  auto dbeta = [&](double e) {
    return (asymptotic_relent(1.0 + h, e, 100) - asymptotic_relent(1.0 - h, e, 100)) / (2 * h);
  };
  EXPECT_LT(std::abs(dbeta(E)), 1e-9);
  // the derivative is exactly E - <E>, so the decimal 1.2803694 (2.9e-6 below
  // the true mean energy) leaves a residual of that size
  EXPECT_NEAR(dbeta(1.2803694), 1.2803694 - E, 1e-9);
  EXPECT_GT(std::abs(dbeta(1.2803694)), 1e-6);
}

TEST(Asymptotics, SmallEnergyLimitOfLogTerm) {
  // the log term tends to -1; isolate it by subtracting the other pieces
  const double b = 1.0, E = 1e-12;
  const double rest = 1.5 * std::log(10.0) - 0.5 - 1.5 * std::log(2.0) + b * E +
                      specfun::log_gamma(b) - specfun::log_gamma(1.5 + b);
  EXPECT_NEAR(asymptotic_relent(b, E, 10) - rest, -1.0, 1e-9);
  EXPECT_THROW(asymptotic_relent(1.0, 0.0, 10), DomainError);
}

TEST(StationaryPoint, ReproducesQuotedPoint) {
  const auto p = solve_stationary_point();
  EXPECT_NEAR(p.beta, 0.457407, 1e-4);
  EXPECT_NEAR(p.E, 2.58527, 1e-4);
  EXPECT_LT(p.residual, 1e-10);
  EXPECT_NEAR(p.E, mean_energy(Model::complex, p.beta), 1e-8);
  EXPECT_GT(p.beta, 0.0);
  EXPECT_LE(p.beta, 0.5);
}

TEST(StationaryPoint, GradientVanishesForEveryN) {
  const auto p = solve_stationary_point();
  const double h = 1e-5;
  for (int n : {10, 1000, 1000000}) {
    const double gb = (asymptotic_relent(p.beta + h, p.E, n) - asymptotic_relent(p.beta - h, p.E, n)) / (2 * h);
    const double ge = (asymptotic_relent(p.beta, p.E + h, n) - asymptotic_relent(p.beta, p.E - h, n)) / (2 * h);
    EXPECT_LT(std::abs(gb), 1e-6) << n;
    EXPECT_LT(std::abs(ge), 1e-6) << n;
    EXPECT_TRUE(std::isfinite(asymptotic_relent(p.beta, p.E, n)));
  }
}

TEST(Maximin, RootAndLargeBetaLaw) {
  const auto r = solve_maximin_beta();
  EXPECT_NEAR(r.beta, 0.468733, 1e-5);
  EXPECT_LT(r.residual, 1e-12);
  EXPECT_NEAR(2.0 * std::pow(r.beta, 3) * var_energy(Model::complex, r.beta), 1.0, 1e-12);
  EXPECT_GT(r.beta, 0.0);
  EXPECT_LE(r.beta, 0.5);
  EXPECT_EQ(solve_maximin_beta(VarianceLaw::large_beta).beta, 1.0 / 3.0);
}
