#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphex/graphon.hpp"
#include "graphex/sampler.hpp"

namespace graphex {

struct GraphStats {
  std::uint64_t n_nodes = 0;
  std::uint64_t n_edges = 0;  // self-loops included, each counted once
  std::uint64_t n_self_loops = 0;
  std::map<std::uint64_t, std::uint64_t> degree_hist;  // degree -> node count
  std::optional<double> sigma_hat;
};

/// A self-loop adds one to the degree of its node.
GraphStats summarize(const SampledGraph& graph);
GraphStats summarize_edges(std::uint64_t n_nodes, const std::vector<Edge>& edges);

/// 2 ln N / ln N_e - 1; needs N >= 2 and N_e >= 2.
double sigma_hat(double n_nodes, double n_edges);
double sigma_hat(const GraphStats& stats);

/// N_j / N.
double degree_fraction(const GraphStats& stats, std::uint64_t j);

inline constexpr std::size_t kSweepDegreeColumns = 10;

struct SweepRow {
  double alpha = 0.0;
  std::uint32_t replicate = 0;
  std::uint64_t seed = 0;
  double n_latent = 0.0;
  std::uint64_t n_nodes = 0;
  std::uint64_t n_edges = 0;
  std::uint64_t n_self_loops = 0;
  std::vector<std::uint64_t> degree_counts;  // degrees 1..kSweepDegreeColumns
  std::optional<double> sigma_hat;
};

struct SweepMetadata {
  std::string model_digest;
  double delta = 0.0;
  std::uint64_t master_seed = 0;
  std::string timestamp;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // ordered by (alpha index, replicate)
  SweepMetadata metadata;
};

SweepRow make_sweep_row(double alpha, std::uint32_t replicate, std::uint64_t seed,
                        double n_latent, const GraphStats& stats);

/// Per-alpha replicate means, in increasing alpha.
struct AlphaSummary {
  double alpha = 0.0;
  std::size_t replicates = 0;
  double mean_nodes = 0.0;
  double mean_edges = 0.0;
  double edge_density = 0.0;  // mean of N_e / N^2
  double degree1_fraction = 0.0;
  double mean_sigma_hat = 0.0;  // NaN when no replicate had it defined
};

std::vector<AlphaSummary> summarize_by_alpha(const SweepResult& sweep);

struct ClassifierOptions {
  double density_floor = 1e-3;
  double density_stability = 0.10;
  double extreme_degree1 = 0.7;
  double fraction_stability = 0.05;
  double sigma_low = 0.05;
  double sigma_high = 0.95;
};

struct RegimeClassification {
  Regime regime = Regime::AlmostDense;
  std::vector<AlphaSummary> by_alpha;
};

/// Needs replicates at two or more alpha values.
RegimeClassification classify_regime(const SweepResult& sweep,
                                     const ClassifierOptions& options = {});

}  // namespace graphex
