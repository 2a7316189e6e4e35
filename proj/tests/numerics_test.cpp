#include <gtest/gtest.h>

#include <cmath>

#include "graphex/errors.hpp"
#include "graphex/numerics.hpp"

using namespace graphex;

TEST(GammaFn, KnownValues) {
  EXPECT_DOUBLE_EQ(gamma_fn(1.0), 1.0);
  EXPECT_NEAR(gamma_fn(0.5), 1.7724538509055159, 1e-14);
  EXPECT_NEAR(gamma_fn(1.5), 0.88622692545275801, 1e-14);
  EXPECT_NEAR(gamma_fn(-0.5), -3.5449077018110318, 1e-13);
}

TEST(GammaFn, PolesThrow) {
  EXPECT_THROW(gamma_fn(0.0), DomainError);
  EXPECT_THROW(gamma_fn(-2.0), DomainError);
}

TEST(UpperIncompleteGamma, FrozenValues) {
  // Frozen from independent 30-digit quadrature.
  EXPECT_NEAR(upper_incomplete_gamma(0.5, 1.0), 0.278805585280661, 1e-12);
  EXPECT_NEAR(upper_incomplete_gamma(-0.5, 1.0), 0.178147711781938, 1e-12);
  EXPECT_NEAR(upper_incomplete_gamma(-0.5, 0.3), 1.15036704736, 1e-10);
  EXPECT_NEAR(upper_incomplete_gamma(0.0, 2.0), 0.0489005107080611, 1e-13);
  EXPECT_NEAR(upper_incomplete_gamma(-1.5, 0.7), 0.333334344097, 1e-10);
}

TEST(UpperIncompleteGamma, RecurrenceFromPositiveOrder) {
  for (double x : {0.05, 0.3, 1.0, 4.0, 20.0}) {
    double lhs = upper_incomplete_gamma(-0.5, x);
    double rhs = (upper_incomplete_gamma(0.5, x) - std::pow(x, -0.5) * std::exp(-x)) / -0.5;
    EXPECT_NEAR(lhs, rhs, 1e-11 * std::max(1.0, std::abs(rhs))) << "x = " << x;
  }
}

TEST(UpperIncompleteGamma, FarTailIsTiny) {
  double v = upper_incomplete_gamma(0.5, 50.0);
  EXPECT_GT(v, 0.0);
  EXPECT_LE(v, std::exp(-50.0));
}

TEST(UpperIncompleteGamma, RejectsBadArguments) {
  EXPECT_THROW(upper_incomplete_gamma(0.5, 0.0), DomainError);
  EXPECT_THROW(upper_incomplete_gamma(0.5, -1.0), DomainError);
}

TEST(Integrate, Polynomial) {
  EXPECT_NEAR(integrate([](double x) { return x * x; }, 0.0, 3.0), 9.0, 1e-12);
}

TEST(Integrate, EndpointSingularity) {
  EXPECT_NEAR(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0), 2.0, 1e-8);
}

TEST(Integrate, NonFiniteIntegrandThrows) {
  EXPECT_THROW(integrate([](double) { return NAN; }, 0.0, 1.0), ConvergenceError);
}

TEST(IntegrateSemiInfinite, Exponential) {
  EXPECT_NEAR(integrate_semi_infinite([](double x) { return std::exp(-x); }, 0.0), 1.0, 1e-10);
}

TEST(IntegrateSemiInfinite, InverseSquare) {
  EXPECT_NEAR(integrate_semi_infinite([](double x) { return 1.0 / ((x + 1) * (x + 1)); }, 0.0),
              1.0, 1e-9);
}

TEST(IntegrateSemiInfiniteLog, LogarithmicTail) {
  auto f = [](double x) {
    double l = 1.0 + std::log1p(x);
    return 1.0 / ((x + 1.0) * l * l);
  };
  EXPECT_NEAR(integrate_semi_infinite_log(f, 0.0), 1.0, 1e-8);
}

TEST(IntegratePositiveAxis, PowerSingularityAtZero) {
  // w^{-1/2} e^{-w} integrates to sqrt(pi).
  auto f = [](double w) { return std::exp(-w) / std::sqrt(w); };
  EXPECT_NEAR(integrate_positive_axis(f), std::sqrt(M_PI), 1e-9);
}

TEST(InvertMonotone, AnalyticInverses) {
  EXPECT_NEAR(invert_monotone([](double x) { return std::exp(-x); }, std::exp(-2.0), 100.0),
              2.0, 1e-12);
  EXPECT_NEAR(
      invert_monotone([](double x) { return 1.0 / ((x + 1) * (x + 1)); }, 0.25, 100.0), 1.0,
      1e-12);
}

TEST(InvertMonotone, UnbracketedTargetThrows) {
  EXPECT_THROW(invert_monotone([](double x) { return std::exp(-x); }, 2.0, 10.0), BracketError);
  EXPECT_THROW(invert_monotone([](double x) { return std::exp(-x); }, 1e-9, 10.0), BracketError);
}

TEST(QuadratureSpec, Validation) {
  QuadratureSpec bad;
  bad.rel_tol = -1.0;
  EXPECT_THROW(bad.validate(), ValidationError);
  QuadratureSpec none;
  none.max_subdivisions = 0;
  EXPECT_THROW(none.validate(), ValidationError);
}
