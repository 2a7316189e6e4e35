#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "graphex/graphon.hpp"

namespace graphex {

/// Reads GRAPHEX_MAX_POINTS, falling back to 1e8.
std::uint64_t default_max_points();

struct SamplerOptions {
  std::uint64_t max_points = default_max_points();
  unsigned threads = 1;
};

struct LatentPoints {
  double alpha = 0.0;
  double v_max = 0.0;
  std::vector<double> theta;
  std::vector<double> vartheta;
};

struct Node {
  std::uint32_t id = 0;
  double theta = 0.0;
  double vartheta = 0.0;  // +inf when beyond double range
  double log1p_vartheta = 0.0;
};

/// Undirected edge with i <= j; i == j is a self-loop.
struct Edge {
  std::uint32_t i = 0;
  std::uint32_t j = 0;
  auto operator<=>(const Edge&) const = default;
};

/// Retained (degree >= 1) nodes, ids assigned in increasing vartheta.
struct SampledGraph {
  double alpha = 0.0;
  std::uint64_t seed = 0;
  double delta = 0.0;
  double v_max = 0.0;
  double log1p_v_max = 0.0;
  double n_latent = 0.0;
  std::vector<Node> nodes;
  std::vector<Edge> edges;
};

/// Cut-off v with tail_mass(v) <= delta * W̄ / 2, clamped to the support end.
/// May be +inf; truncation_level_log1p gives log(1 + v) without overflow.
double truncation_level(const GraphonModel& model, double alpha, double delta);
double truncation_level_log1p(const GraphonModel& model, double alpha, double delta);

LatentPoints sample_point_process(double alpha, double v_max, std::uint64_t seed,
                                  const SamplerOptions& options = {});

/// Direct construction: every latent pair gets its own Bernoulli draw.
SampledGraph sample_graph_naive(const GraphonModel& model, double alpha,
                                std::uint64_t seed, double delta,
                                const SamplerOptions& options = {});

/// Poisson-thinning sampler over lazily materialized cells; needs a model
/// with a separable envelope.
SampledGraph sample_graph_separable(const GraphonModel& model, double alpha,
                                    std::uint64_t seed, double delta,
                                    const SamplerOptions& options = {});

void validate_sampling_args(double alpha, double delta);

}  // namespace graphex
