#pragma once

#include <cstdint>
#include <vector>

#include "graphex/graphon.hpp"
#include "graphex/numerics.hpp"

namespace graphex {

/// E[N_e] = alpha^2 W̄ / 2 + alpha * integral of W(x, x).
double expected_edges_exact(const GraphonModel& model, double alpha);

/// E[N] = alpha * integral of 1 - (1 - W(x, x)) exp(-alpha mu(x)).
double expected_nodes_exact(const GraphonModel& model, double alpha,
                            const QuadratureSpec& spec = {});

/// E[N_j], expected number of nodes of degree j >= 1.
double expected_degree_count_exact(const GraphonModel& model, double alpha,
                                   std::uint64_t j, const QuadratureSpec& spec = {});

struct OracleValues {
  double alpha = 0.0;
  double edges = 0.0;
  double nodes = 0.0;
  std::vector<double> degree_counts;  // index j - 1
};

OracleValues compute_oracles(const GraphonModel& model, double alpha,
                             std::uint64_t j_max = 10);

/// alpha^{1+sigma} Gamma(1 - sigma) ell(alpha), or alpha^2 ell1(alpha) when
/// sigma = 1.
double asymptotic_node_count(const GraphonModel& model, double alpha);

/// Limit of N_j / N: sigma Gamma(j - sigma) / (j! Gamma(1 - sigma)) for
/// sigma in [0, 1). Throws DomainError at sigma = 1, where degree-1 nodes
/// take the whole mass.
double asymptotic_degree_fraction(double sigma, std::uint64_t j);

/// (W̄ / 2) N^{2 / (1 + sigma)} ell_star(N).
double edges_from_nodes_prediction(const GraphonModel& model, double n_nodes);

/// Integral of 1 - exp(-t mu) divided by its regular-variation prediction.
double tauberian_ratio(const GraphonModel& model, double t);

/// nu(x, y) = integral over z of W(x, z) W(y, z).
double nu(const GraphonModel& model, double x, double y);

struct Assumption2Report {
  double max_ratio = 0.0;
  double argmax_x = 0.0;
  double argmax_y = 0.0;
  bool satisfied = false;
};

/// Scans sup nu(x, y) / (mu(x)^a mu(y)^a) over the grid (pairs x <= y).
Assumption2Report assumption2_margin(const GraphonModel& model, double a, double c1,
                                     const std::vector<double>& grid);

}  // namespace graphex
