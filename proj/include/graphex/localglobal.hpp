#pragma once

#include <cstdint>
#include <vector>

#include "graphex/graphon.hpp"
#include "graphex/sampler.hpp"

namespace graphex {

/// Block model with sparse local structure:
///   W((u, v), (u', v')) = B[k(v)][k(v')] * eta(u, u'),
/// with v uniform on [0, 1] and k(v) the partition cell holding v.
class SparseSbmModel {
 public:
  const std::vector<double>& partition() const { return partition_; }
  const std::vector<std::vector<double>>& block_matrix() const { return b_; }
  const GraphonModel& eta() const { return eta_; }
  const ModelConfig& config() const { return config_; }

  std::size_t blocks() const { return b_.size(); }
  double block_width(std::size_t k) const { return partition_[k + 1] - partition_[k]; }
  /// Zero-based block index of v in [0, 1].
  std::size_t block_of(double v) const;
  /// Sum over l of |A_l| B[k][l].
  double block_mean_degree(std::size_t k) const { return block_mean_[k]; }
  double max_block_mean_degree() const;
  double max_link() const { return max_link_; }

  double evaluate(double u, double v, double u2, double v2) const;
  double mean_degree(double u, double v) const;
  double total_mass() const;
  double diagonal_mass() const;
  /// Sum over k of |A_k| (block mean degree)^sigma, sigma from eta.
  double node_count_factor() const;

 private:
  friend SparseSbmModel make_sbm_model(const ModelConfig& config);
  explicit SparseSbmModel(GraphonModel eta) : eta_(std::move(eta)) {}

  ModelConfig config_;
  std::vector<double> partition_;
  std::vector<std::vector<double>> b_;
  GraphonModel eta_;
  std::vector<double> block_mean_;
  double max_link_ = 0.0;
};

SparseSbmModel make_sbm_model(const ModelConfig& config);

struct LgSampledGraph {
  SampledGraph graph;
  std::vector<double> v;   // per node
  std::vector<int> block;  // per node, 1-based
};

/// alpha^2 max_k mu_omega(k) tail_eta(v) <= delta alpha^2 W̄ / 2.
double lg_truncation_level(const SparseSbmModel& model, double alpha, double delta);
double lg_truncation_level_log1p(const SparseSbmModel& model, double alpha, double delta);

enum class LgMethod { Cells, Naive };

LgSampledGraph sample_lg_graph(const SparseSbmModel& model, double alpha,
                               std::uint64_t seed, double delta,
                               const SamplerOptions& options = {},
                               LgMethod method = LgMethod::Cells);

struct LgNodeExpectation {
  double exact = 0.0;
  double asymptotic = 0.0;
};

LgNodeExpectation lg_expected_nodes(const SparseSbmModel& model, double alpha);
double lg_expected_edges(const SparseSbmModel& model, double alpha);
double lg_expected_degree_count(const SparseSbmModel& model, double alpha,
                                std::uint64_t j);

/// Exposure behind block_link_matrix. Expected uses the mean of the summed
/// eta over all latent pairs, alpha^2 |A_k| |A_l| W̄_eta on the truncated
/// range. RetainedPairs sums eta over retained nodes only; it misses the
/// unretained latent points and converges slowly.
enum class Exposure { Expected, RetainedPairs };

/// Observed non-loop edges between blocks k and l divided by the exposure;
/// zero where the exposure is zero. Throws when the graph has no edges.
std::vector<std::vector<double>> block_link_matrix(const LgSampledGraph& graph,
                                                   const SparseSbmModel& model,
                                                   Exposure exposure = Exposure::Expected);

}  // namespace graphex
