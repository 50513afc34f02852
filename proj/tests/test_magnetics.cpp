#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qtherm/error.hpp"
#include "qtherm/magnetics.hpp"

using namespace qtherm;

TEST(Magnetics, Brillouin) {
  EXPECT_EQ(brillouin_tanh(0.0), 0.0);
  EXPECT_NEAR(brillouin_tanh(1.0), 0.7615942, 1e-7);
  EXPECT_NEAR(brillouin_tanh(20.0), 1.0 - 2.0 * std::exp(-40.0), 1e-12);
}

TEST(Magnetics, Langevin) {
  EXPECT_EQ(langevin(0.0), 0.0);
  EXPECT_NEAR(langevin(0.01), 0.00333331, 1e-8);
  for (double x : {-3.0, -0.02, 0.009, 0.011, 0.5, 4.0, 40.0}) {
    const double direct = 1.0 / std::tanh(x) - 1.0 / x;
    EXPECT_NEAR(langevin(x), direct, 1e-12 * std::max(1.0, std::abs(direct))) << x;
  }
  // series and direct branches meet smoothly
  EXPECT_NEAR(langevin(1e-2 - 1e-12), langevin(1e-2 + 1e-12), 1e-12);
  EXPECT_NEAR(langevin_partition(1.0), 1.1752012, 1e-7);
  EXPECT_EQ(langevin_partition(0.0), 1.0);
  const double h = 1e-5;
  const double fd = (std::log(langevin_partition(2.0 + h)) - std::log(langevin_partition(2.0 - h))) / (2 * h);
  EXPECT_LT(std::abs(fd - langevin(2.0)), 1e-6);
}

TEST(Magnetics, Brosseau) {
  EXPECT_NEAR(brosseau_polarization(1.0), 0.7615942, 1e-7);
  EXPECT_NEAR(brosseau_polarization(0.5), 0.9640276, 1e-7);
  EXPECT_LT(brosseau_polarization(1e12), 1e-11);
  EXPECT_THROW(brosseau_polarization(0.0), DomainError);
}

TEST(Magnetics, ArtanhChain) {
  for (double r = 0.0; r < 1.0; r += 0.0371) {
    EXPECT_NEAR(0.5 * std::log((1 + r) / (1 - r)), std::atanh(r), 1e-12);
    if (r > 0.0) {
      const double E = -std::log1p(-r * r);
      EXPECT_NEAR(structure_function(Model::kmb, E), 2.0 * std::atanh(r), 1e-12 * (1 + E)) << r;
    }
    // brosseau at tau = 1/artanh r gives back r
    if (r > 0.0) EXPECT_NEAR(brosseau_polarization(1.0 / std::atanh(r)), r, 1e-12);
  }
}

TEST(Magnetics, MaclaurinBound) {
  for (double r = 0.0; r <= 0.5; r += 0.01) {
    const double partial = r + r * r * r / 3 + std::pow(r, 5) / 5;
    EXPECT_LE(std::abs(std::atanh(r) - partial), std::pow(r, 7) / (7 * (1 - r * r)) + 1e-17) << r;
  }
}

TEST(Magnetics, FigureOneCrossings) {
  const double want[] = {0.76007, 1.04585, 1.46249, 3.1857};
  const Model models[] = {Model::quaternionic, Model::complex, Model::real, Model::classical};
  double prev = 0.0;
  for (int i = 0; i < 4; ++i) {
    const auto rep = intersect_brosseau(models[i]);
    EXPECT_NEAR(rep.beta_star, want[i], i < 2 ? 1e-4 : 1e-3) << to_string(models[i]);
    EXPECT_LE(std::abs(rep.residual), 1e-10);
    EXPECT_GT(rep.beta_star, prev);
    prev = rep.beta_star;
  }
  EXPECT_THROW(intersect_brosseau(Model::kmb), DomainError);
}

TEST(Magnetics, ReducedTemperature) {
  EXPECT_NEAR(reduced_temperature(1.0), std::atanh(0.75), 1e-12);
  EXPECT_NEAR(reduced_temperature(1.0), 0.9729551, 1e-7);
  double prev = INFINITY;
  for (double b = 0.01; b < 1e5; b *= 1.25) {
    const double x = reduced_temperature(b);
    EXPECT_LT(x, prev) << b;
    prev = x;
  }
  // the two-term asymptotic law misses by an O(beta^-5/2) term
  for (double b : {1e2, 1e3, 1e4}) {
    const double err = std::abs(reduced_temperature(b) - reduced_temperature_asymptotic(b));
    EXPECT_LT(err, 2.0 * std::pow(b, -2.5)) << b;
  }
  EXPECT_NEAR(std::log(reduced_temperature(std::exp(10.0))), 0.120782 - 5.0, 1e-3);
}

TEST(Magnetics, LogLinearTail) {
  const auto fit = fit_log_linear(1e3, 1e5, 200);
  EXPECT_NEAR(fit.slope, -0.5, 0.002);
  EXPECT_NEAR(fit.intercept, 0.120782, 0.002);
  EXPECT_NEAR(0.5 * std::log(4.0 / std::numbers::pi), 0.120782, 1e-6);
  EXPECT_THROW(fit_log_linear(10.0, 1.0, 20), DomainError);
}

TEST(Magnetics, CriticalPoint) {
  EXPECT_NEAR(critical_beta(1.0), 0.647175, 1e-6);
  EXPECT_NEAR(critical_beta(2.0), 1.294350, 1e-6);
  EXPECT_NEAR(4.0 * (2.0 * std::log(2.0) - 1.0) * critical_beta(1.0), 1.0, 1e-12);
  EXPECT_THROW(critical_beta(0.0), DomainError);
}

TEST(Magnetics, OrderParameter) {
  const double bc = critical_beta(1.0);
  const auto at = order_parameter(bc, 1.0);
  EXPECT_EQ(at.first, 0.0);
  EXPECT_EQ(at.second, 0.0);
  const auto twice = order_parameter(2.0 * bc, 1.0);
  EXPECT_NEAR(twice.first, std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(twice.second, -std::sqrt(0.5), 1e-12);
  // log-log slope against t = 1 - bc/beta
  const double t1 = 1e-4, t2 = 1e-2;
  const double p1 = order_parameter(bc / (1 - t1), 1.0).first;
  const double p2 = order_parameter(bc / (1 - t2), 1.0).first;
  EXPECT_NEAR((std::log(p2) - std::log(p1)) / (std::log(t2) - std::log(t1)), 0.5, 1e-3);
}

TEST(Magnetics, MeanFieldQuadraticDisagreesWithPrintedForm) {
  // The quadratic from <r> ~ 1 - (2 ln 2 - 1) beta under beta -> beta/(lambda <r>)
  // has real roots only for beta <= beta_c, with 2<r> - 1 = +-(1 - beta/beta_c)^(1/2),
  // whereas the printed order parameter uses (1 - beta_c/beta)^(1/2) for beta > beta_c.
  const double lam = 1.0, bc = critical_beta(lam);
  EXPECT_FALSE(mean_field_order_parameter_quadratic(1.5 * bc, lam).has_value());
  const auto q = mean_field_order_parameter_quadratic(0.5 * bc, lam);
  ASSERT_TRUE(q.has_value());
  EXPECT_NEAR(q->first, std::sqrt(0.5), 1e-12);
  // each root r satisfies r = 1 - (2 ln 2 - 1) beta / (lam r)
  for (double root : {q->first, q->second}) {
    const double r = 0.5 * (root + 1.0);
    EXPECT_NEAR(r, 1.0 - (2 * std::log(2.0) - 1) * 0.5 * bc / (lam * r), 1e-12);
  }
}

TEST(Magnetics, KmbGap) {
  const auto g = kmb_gap_maximum();
  EXPECT_NEAR(g.gap, 0.0526, 0.0005);
  EXPECT_NEAR(g.beta, 0.49825, 0.01);
  for (double b : {0.2, 0.4, 0.6, 1.0})
    EXPECT_LE(mean_polarization(Model::kmb, b) - mean_polarization(Model::complex, b), g.gap + 1e-12);
}

TEST(Magnetics, DensityCrossings) {
  const auto cl = kmb_density_crossing(Model::classical, 0.1, 50.0);
  ASSERT_TRUE(cl.has_value());
  EXPECT_NEAR(*cl, 1.57565, 1.57565e-2);
  const auto re = kmb_density_crossing(Model::real, 0.1, 50.0);
  ASSERT_TRUE(re.has_value());
  EXPECT_NEAR(*re, 0.53341, 0.53341e-2);
  EXPECT_NEAR(integrated_density(Model::complex, 40.0) - integrated_density(Model::quaternionic, 40.0),
              2.0 / 3.0, 1e-8);
}
