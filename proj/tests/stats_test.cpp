#include <gtest/gtest.h>

#include <cmath>

#include "graphex/commands.hpp"
#include "graphex/errors.hpp"
#include "graphex/stats.hpp"

using namespace graphex;

namespace {

SampledGraph graph_with(std::size_t nodes, std::vector<Edge> edges) {
  SampledGraph g;
  g.alpha = 1.0;
  for (std::size_t k = 0; k < nodes; ++k) {
    Node n;
    n.id = static_cast<std::uint32_t>(k);
    g.nodes.push_back(n);
  }
  g.edges = std::move(edges);
  return g;
}

SweepRow row(double alpha, std::uint64_t nodes, std::uint64_t edges, std::uint64_t deg1) {
  SweepRow r;
  r.alpha = alpha;
  r.n_nodes = nodes;
  r.n_edges = edges;
  r.degree_counts.assign(kSweepDegreeColumns, 0);
  r.degree_counts[0] = deg1;
  if (nodes >= 2 && edges >= 2) r.sigma_hat = sigma_hat(nodes, edges);
  return r;
}

Regime classify_sampled(ModelKind kind, std::optional<double> sigma,
                        std::vector<double> alphas) {
  SweepRequest req;
  req.model.kind = kind;
  req.model.sigma = sigma;
  req.alphas = std::move(alphas);
  req.reps = 10;
  req.master_seed = 21;
  req.fast = true;
  return classify_regime(run_sweep(req)).regime;
}

}  // namespace

TEST(Summarize, EmptyGraph) {
  auto s = summarize(graph_with(0, {}));
  EXPECT_EQ(s.n_nodes, 0u);
  EXPECT_EQ(s.n_edges, 0u);
  EXPECT_EQ(s.n_self_loops, 0u);
  EXPECT_TRUE(s.degree_hist.empty());
  EXPECT_FALSE(s.sigma_hat.has_value());
}

TEST(Summarize, Triangle) {
  auto s = summarize(graph_with(3, {{0, 1}, {0, 2}, {1, 2}}));
  EXPECT_EQ(s.n_nodes, 3u);
  EXPECT_EQ(s.n_edges, 3u);
  EXPECT_EQ(s.degree_hist, (std::map<std::uint64_t, std::uint64_t>{{2, 3}}));
  EXPECT_DOUBLE_EQ(degree_fraction(s, 2), 1.0);
  EXPECT_DOUBLE_EQ(degree_fraction(s, 1), 0.0);
  ASSERT_TRUE(s.sigma_hat.has_value());
  EXPECT_NEAR(*s.sigma_hat, 2.0 * std::log(3.0) / std::log(3.0) - 1.0, 1e-15);
}

TEST(Summarize, SelfLoopCountsOnce) {
  auto s = summarize(graph_with(1, {{0, 0}}));
  EXPECT_EQ(s.n_nodes, 1u);
  EXPECT_EQ(s.n_edges, 1u);
  EXPECT_EQ(s.n_self_loops, 1u);
  EXPECT_EQ(s.degree_hist, (std::map<std::uint64_t, std::uint64_t>{{1, 1}}));
  EXPECT_FALSE(s.sigma_hat.has_value());
}

TEST(Summarize, RejectsForeignNode) {
  EXPECT_THROW(summarize(graph_with(2, {{0, 5}})), ValidationError);
}

TEST(SigmaHat, Examples) {
  EXPECT_NEAR(sigma_hat(9000, 45000), 2.0 * std::log(9000.0) / std::log(45000.0) - 1.0, 1e-15);
  EXPECT_NEAR(sigma_hat(9000, 45000), 0.699575292, 1e-9);
  EXPECT_DOUBLE_EQ(sigma_hat(500, 500), 1.0);
  EXPECT_NEAR(sigma_hat(100, 10000), 0.0, 1e-15);
  EXPECT_THROW(sigma_hat(1, 5), UndefinedEstimatorError);
  EXPECT_THROW(sigma_hat(5, 1), UndefinedEstimatorError);
}

TEST(SigmaHat, DependsOnlyOnCounts) {
  auto a = summarize(graph_with(4, {{0, 1}, {2, 3}, {1, 2}}));
  auto b = summarize(graph_with(4, {{0, 1}, {0, 2}, {0, 3}}));
  EXPECT_EQ(sigma_hat(a), sigma_hat(b));
}

TEST(DegreeFraction, NeedsNodes) {
  EXPECT_THROW(degree_fraction(summarize(graph_with(0, {})), 1), InsufficientDataError);
}

TEST(SweepRow, FromStats) {
  auto s = summarize(graph_with(4, {{0, 1}, {1, 2}, {1, 3}, {3, 3}}));
  auto r = make_sweep_row(7.0, 2, 99, 12.0, s);
  EXPECT_EQ(r.n_nodes, 4u);
  EXPECT_EQ(r.n_edges, 4u);
  EXPECT_EQ(r.n_self_loops, 1u);
  ASSERT_EQ(r.degree_counts.size(), kSweepDegreeColumns);
  EXPECT_EQ(r.degree_counts[0], 2u);
  EXPECT_EQ(r.degree_counts[1], 1u);
  EXPECT_EQ(r.degree_counts[2], 1u);
}

TEST(ClassifyRegime, SyntheticTrends) {
  SweepResult dense;
  for (double a : {50.0, 100.0, 200.0, 400.0}) {
    dense.rows.push_back(row(a, static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(a * a / 8), 0));
  }
  EXPECT_EQ(classify_regime(dense).regime, Regime::Dense);

  SweepResult extreme;
  extreme.rows.push_back(row(100, 1000, 1500, 700));
  extreme.rows.push_back(row(200, 3000, 5000, 2200));
  extreme.rows.push_back(row(400, 9000, 16000, 6800));
  EXPECT_EQ(classify_regime(extreme).regime, Regime::AlmostExtremelySparse);

  SweepResult power;
  power.rows.push_back(row(30, 260, 580, 145));
  power.rows.push_back(row(300, 7500, 57000, 3900));
  power.rows.push_back(row(1000, 55000, 700000, 28000));
  EXPECT_EQ(classify_regime(power).regime, Regime::SparsePowerLaw);

  SweepResult flat;
  flat.rows.push_back(row(100, 1000, 20000, 10));
  flat.rows.push_back(row(200, 2200, 80000, 30));
  EXPECT_EQ(classify_regime(flat).regime, Regime::AlmostDense);
}

TEST(ClassifyRegime, NeedsTwoAlphas) {
  SweepResult one;
  one.rows.push_back(row(10, 5, 5, 1));
  one.rows.push_back(row(10, 6, 7, 1));
  EXPECT_THROW(classify_regime(one), InsufficientDataError);
}

TEST(ClassifyRegime, SampledSweeps) {
  EXPECT_EQ(classify_sampled(ModelKind::DenseCompact, {}, {50, 100, 200, 400}), Regime::Dense);
  EXPECT_EQ(classify_sampled(ModelKind::SeparablePower, 0.5, {30, 100, 300, 1000}),
            Regime::SparsePowerLaw);
  EXPECT_EQ(classify_sampled(ModelKind::ExtremeSparse, {}, {50, 100, 200, 400}),
            Regime::AlmostExtremelySparse);
}
