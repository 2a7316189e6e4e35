#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "graphex/asymptotics.hpp"
#include "graphex/errors.hpp"

using namespace graphex;

namespace {

GraphonModel model(ModelKind kind, std::optional<double> sigma = {}) {
  ModelConfig c;
  c.kind = kind;
  c.sigma = sigma;
  return make_model(c);
}

GraphonModel ggp(double sigma0, double tau0) {
  ModelConfig c;
  c.kind = ModelKind::GGP;
  c.sigma0 = sigma0;
  c.tau0 = tau0;
  return make_model(c);
}

std::vector<GraphonModel> plain_models() {
  return {model(ModelKind::DenseCompact),       model(ModelKind::Exponential),
          model(ModelKind::SeparablePower, 0.5), model(ModelKind::SeparablePower, 0.2),
          model(ModelKind::NonSeparablePower, 0.5), model(ModelKind::ExtremeSparse),
          ggp(0.5, 1.0)};
}

double relative(double a, double b) { return std::abs(a / b - 1.0); }

}  // namespace

TEST(ExpectedEdges, Examples) {
  EXPECT_NEAR(expected_edges_exact(model(ModelKind::DenseCompact), 10), 12.5 + 10.0 / 3.0, 1e-9);
  EXPECT_NEAR(expected_edges_exact(model(ModelKind::Exponential), 10), 55.0, 1e-9);
  EXPECT_NEAR(expected_edges_exact(model(ModelKind::DenseCompact), 100), 1283.3333333, 1e-6);
  for (const auto& m : plain_models()) EXPECT_LT(expected_edges_exact(m, 1e-9), 1e-6);
  EXPECT_THROW(expected_edges_exact(model(ModelKind::Exponential), -1.0), ValidationError);
}

TEST(ExpectedNodes, FrozenQuadrature) {
  // Independent high-precision quadrature values.
  EXPECT_LT(relative(expected_nodes_exact(model(ModelKind::DenseCompact), 100), 98.0016), 1e-6);
  EXPECT_LT(relative(expected_nodes_exact(model(ModelKind::DenseCompact), 400), 398.0001), 1e-6);
  EXPECT_LT(relative(expected_nodes_exact(model(ModelKind::Exponential), 50), 224.48193), 1e-6);
  EXPECT_LT(relative(expected_nodes_exact(model(ModelKind::Exponential), 400), 2627.4746), 1e-6);
  EXPECT_LT(relative(expected_nodes_exact(model(ModelKind::SeparablePower, 0.5), 30), 261.32479),
            1e-6);
  EXPECT_LT(
      relative(expected_nodes_exact(model(ModelKind::SeparablePower, 0.5), 1000), 55049.926), 1e-6);
  EXPECT_LT(relative(expected_nodes_exact(model(ModelKind::ExtremeSparse), 50), 1055.7666), 1e-6);
  EXPECT_LT(relative(expected_nodes_exact(model(ModelKind::ExtremeSparse), 400), 44351.075), 1e-6);
  EXPECT_LT(relative(expected_edges_exact(model(ModelKind::ExtremeSparse), 50), 1261.6971), 1e-6);
  EXPECT_LT(relative(expected_edges_exact(model(ModelKind::ExtremeSparse), 400), 80093.577), 1e-6);
}

TEST(ExpectedNodes, DenseCompactNearAlpha) {
  double n = expected_nodes_exact(model(ModelKind::DenseCompact), 100);
  EXPECT_LT(n, 100.0);
  EXPECT_LT(relative(n, 100.0), 0.1);
}

TEST(ExpectedNodes, SeparablePowerAsymptote) {
  const double alpha = 1e4;
  auto m = model(ModelKind::SeparablePower, 0.5);
  double root_pi = std::sqrt(std::numbers::pi);
  EXPECT_NEAR(asymptotic_node_count(m, alpha), root_pi * std::pow(alpha, 1.5), 1e-6 * alpha);
  EXPECT_LT(relative(expected_nodes_exact(m, alpha), root_pi * std::pow(alpha, 1.5)), 0.03);
}

TEST(ExpectedNodes, TrendTowardAsymptote) {
  for (const auto& m : {model(ModelKind::SeparablePower, 0.5),
                        model(ModelKind::NonSeparablePower, 0.5)}) {
    double prev = INFINITY;
    for (double alpha : {1e2, 1e3, 1e4}) {
      double gap = relative(expected_nodes_exact(m, alpha), asymptotic_node_count(m, alpha));
      EXPECT_LT(gap, prev) << to_string(m.kind()) << " alpha " << alpha;
      prev = gap;
    }
    EXPECT_LT(prev, 0.1) << to_string(m.kind());
  }
}

TEST(ExpectedDegreeCount, FrozenFractions) {
  auto sp = model(ModelKind::SeparablePower, 0.5);
  for (auto [alpha, f1, f2] : {std::tuple{30.0, 0.55709, 0.139195},
                               std::tuple{1000.0, 0.509082, 0.127271}}) {
    double n = expected_nodes_exact(sp, alpha);
    EXPECT_NEAR(expected_degree_count_exact(sp, alpha, 1) / n, f1, 1e-5);
    EXPECT_NEAR(expected_degree_count_exact(sp, alpha, 2) / n, f2, 1e-5);
  }
  auto es = model(ModelKind::ExtremeSparse);
  EXPECT_NEAR(expected_degree_count_exact(es, 50, 1) / expected_nodes_exact(es, 50), 0.778632, 1e-5);
  EXPECT_NEAR(expected_degree_count_exact(es, 400, 1) / expected_nodes_exact(es, 400), 0.817805,
              1e-5);
}

TEST(ExpectedDegreeCount, LimitingFractions) {
  auto sp = model(ModelKind::SeparablePower, 0.5);
  double n = expected_nodes_exact(sp, 1000);
  EXPECT_LT(relative(expected_degree_count_exact(sp, 1000, 1) / n, 0.5), 0.05);
  EXPECT_LT(relative(expected_degree_count_exact(sp, 1000, 2) / n, 0.125), 0.10);
}

TEST(ExpectedDegreeCount, SumBoundedByNodes) {
  for (const auto& m : plain_models()) {
    const double alpha = 100;
    double total = 0.0;
    for (std::uint64_t j = 1; j <= 50; ++j) {
      double c = expected_degree_count_exact(m, alpha, j);
      ASSERT_GE(c, 0.0);
      ASSERT_TRUE(std::isfinite(c));
      total += c;
    }
    EXPECT_LE(total, expected_nodes_exact(m, alpha) * (1.0 + 1e-6)) << to_string(m.kind());
  }
}

TEST(ExpectedDegreeCount, LargeDegreeStaysFinite) {
  double c = expected_degree_count_exact(model(ModelKind::Exponential), 500, 400);
  EXPECT_TRUE(std::isfinite(c));
  EXPECT_GE(c, 0.0);
  EXPECT_THROW(expected_degree_count_exact(model(ModelKind::Exponential), 5, 0), ValidationError);
}

TEST(ComputeOracles, Layout) {
  auto o = compute_oracles(model(ModelKind::DenseCompact), 10, 4);
  EXPECT_EQ(o.alpha, 10.0);
  EXPECT_NEAR(o.edges, 15.833333333, 1e-8);
  ASSERT_EQ(o.degree_counts.size(), 4u);
  EXPECT_NEAR(o.degree_counts[2],
              expected_degree_count_exact(model(ModelKind::DenseCompact), 10, 3), 1e-12);
}

TEST(AsymptoticDegreeFraction, Examples) {
  EXPECT_NEAR(asymptotic_degree_fraction(0.5, 1), 0.5, 1e-14);
  EXPECT_NEAR(asymptotic_degree_fraction(0.5, 3), 0.0625, 1e-14);
  EXPECT_NEAR(asymptotic_degree_fraction(0.5, 2), 0.125, 1e-14);
  EXPECT_THROW(asymptotic_degree_fraction(1.0, 1), DomainError);
  EXPECT_THROW(asymptotic_degree_fraction(0.5, 0), ValidationError);
}

TEST(AsymptoticDegreeFraction, PartialSums) {
  for (double sigma : {0.1, 0.5, 0.8}) {
    double sum = 0.0;
    for (std::uint64_t j = 1; j <= 50; ++j) {
      double f = asymptotic_degree_fraction(sigma, j);
      ASSERT_GT(f, 0.0);
      sum += f;
    }
    EXPECT_LE(sum, 1.0);
  }
}

TEST(AsymptoticDegreeFraction, PowerLawTail) {
  for (double sigma : {0.2, 0.5, 0.8}) {
    double tail = asymptotic_degree_fraction(sigma, 100) * std::pow(100.0, 1.0 + sigma) *
                  std::tgamma(1.0 - sigma) / sigma;
    EXPECT_LT(relative(tail, 1.0), 0.05) << sigma;
  }
}

TEST(EdgesFromNodes, ClosedForms) {
  const double n = 5000.0;
  EXPECT_NEAR(edges_from_nodes_prediction(model(ModelKind::DenseCompact), n), n * n / 8, 1e-6 * n * n);
  EXPECT_LT(relative(edges_from_nodes_prediction(model(ModelKind::Exponential), n),
                     0.5 * n * n / std::pow(std::log(n), 2)),
            1e-12);
  EXPECT_LT(relative(edges_from_nodes_prediction(model(ModelKind::ExtremeSparse), n),
                     0.25 * n * std::log(n)),
            1e-12);
  EXPECT_THROW(edges_from_nodes_prediction(model(ModelKind::Exponential), 1.0), ValidationError);
}

TEST(TauberianRatio, PerModelTolerances) {
  auto sp = model(ModelKind::SeparablePower, 0.5);
  EXPECT_NEAR(tauberian_ratio(sp, 1e6), 0.999436, 1e-5);
  EXPECT_LT(relative(tauberian_ratio(sp, 1e6), 1.0), 0.02);
  double ex = tauberian_ratio(model(ModelKind::Exponential), 1e6);
  EXPECT_NEAR(ex, (std::log(1e6) + std::numbers::egamma) / std::log(1e6), 1e-4);
  EXPECT_LT(relative(ex, 1.0), 0.05);
  EXPECT_NEAR(tauberian_ratio(model(ModelKind::NonSeparablePower, 0.5), 1e6), 0.999202, 1e-5);
  EXPECT_NEAR(tauberian_ratio(model(ModelKind::DenseCompact), 1e6), 1.0, 1e-5);
}

TEST(TauberianRatio, ExtremeSparseConvergesSlowly) {
  auto es = model(ModelKind::ExtremeSparse);
  EXPECT_NEAR(tauberian_ratio(es, 1e8), 1.35301, 1e-4);
  double prev = INFINITY;
  for (double t : {1e6, 1e12, 1e20, 1e40}) {
    double r = tauberian_ratio(es, t);
    EXPECT_LT(r, prev);
    EXPECT_GT(r, 1.0);
    prev = r;
  }
  EXPECT_LT(prev, 1.1);
}

TEST(Nu, SeparableIdentity) {
  for (const auto& m : {model(ModelKind::Exponential), model(ModelKind::SeparablePower, 0.5),
                        model(ModelKind::DenseCompact)}) {
    for (auto [x, y] : {std::pair{0.1, 0.3}, std::pair{0.5, 0.9}, std::pair{0.05, 0.05}}) {
      double expected =
          m.mean_degree(x) * m.mean_degree(y) * m.diagonal_mass() / m.total_mass();
      EXPECT_LT(relative(nu(m, x, y), expected), 1e-6) << to_string(m.kind());
    }
  }
}

TEST(Nu, CauchySchwarz) {
  std::vector<double> grid{0.0, 0.1, 0.5, 1.0, 3.0, 10.0, 50.0};
  for (const auto& m : plain_models()) {
    for (double x : grid) {
      for (double y : grid) {
        EXPECT_LE(nu(m, x, y), std::sqrt(m.mean_degree(x) * m.mean_degree(y)) * (1 + 1e-9))
            << to_string(m.kind()) << " " << x << " " << y;
      }
    }
  }
}

TEST(Assumption2, NonSeparablePowerMargin) {
  auto m = model(ModelKind::NonSeparablePower, 0.5);
  std::vector<double> grid;
  for (double x = 0.0; x <= 200.0; x = x * 1.5 + 0.25) grid.push_back(x);
  auto r = assumption2_margin(m, 0.75, std::pow(2.0, 1.5), grid);
  EXPECT_GT(r.max_ratio, 0.0);
  EXPECT_LE(r.max_ratio, std::pow(2.0, 1.5));
  EXPECT_TRUE(r.satisfied);
  EXPECT_FALSE(assumption2_margin(m, 0.75, 1e-3, grid).satisfied);
}
