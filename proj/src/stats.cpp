#include "graphex/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "graphex/errors.hpp"

namespace graphex {

GraphStats summarize_edges(std::uint64_t n_nodes, const std::vector<Edge>& edges) {
  GraphStats s;
  s.n_nodes = n_nodes;
  s.n_edges = edges.size();
  std::vector<std::uint64_t> degree(n_nodes, 0);
  for (const auto& e : edges) {
    if (e.i >= n_nodes || e.j >= n_nodes) {
      throw ValidationError("edge refers to a node outside the node list");
    }
    if (e.i == e.j) {
      ++s.n_self_loops;
      ++degree[e.i];
    } else {
      ++degree[e.i];
      ++degree[e.j];
    }
  }
  for (auto d : degree) ++s.degree_hist[d];
  if (n_nodes >= 2 && s.n_edges >= 2) {
    s.sigma_hat = sigma_hat(static_cast<double>(n_nodes), static_cast<double>(s.n_edges));
  }
  return s;
}

GraphStats summarize(const SampledGraph& graph) {
  return summarize_edges(graph.nodes.size(), graph.edges);
}

double sigma_hat(double n_nodes, double n_edges) {
  if (!(n_nodes >= 2.0) || !(n_edges >= 2.0)) {
    throw UndefinedEstimatorError("sigma_hat needs at least 2 nodes and 2 edges");
  }
  return 2.0 * std::log(n_nodes) / std::log(n_edges) - 1.0;
}

double sigma_hat(const GraphStats& stats) {
  return sigma_hat(static_cast<double>(stats.n_nodes), static_cast<double>(stats.n_edges));
}

double degree_fraction(const GraphStats& stats, std::uint64_t j) {
  if (stats.n_nodes == 0) throw InsufficientDataError("graph has no nodes");
  auto it = stats.degree_hist.find(j);
  double count = it == stats.degree_hist.end() ? 0.0 : static_cast<double>(it->second);
  return count / static_cast<double>(stats.n_nodes);
}

SweepRow make_sweep_row(double alpha, std::uint32_t replicate, std::uint64_t seed,
                        double n_latent, const GraphStats& stats) {
  SweepRow row;
  row.alpha = alpha;
  row.replicate = replicate;
  row.seed = seed;
  row.n_latent = n_latent;
  row.n_nodes = stats.n_nodes;
  row.n_edges = stats.n_edges;
  row.n_self_loops = stats.n_self_loops;
  row.degree_counts.assign(kSweepDegreeColumns, 0);
  for (std::size_t j = 1; j <= kSweepDegreeColumns; ++j) {
    auto it = stats.degree_hist.find(j);
    if (it != stats.degree_hist.end()) row.degree_counts[j - 1] = it->second;
  }
  row.sigma_hat = stats.sigma_hat;
  return row;
}

std::vector<AlphaSummary> summarize_by_alpha(const SweepResult& sweep) {
  std::map<double, std::vector<const SweepRow*>> groups;
  for (const auto& row : sweep.rows) groups[row.alpha].push_back(&row);
  std::vector<AlphaSummary> out;
  for (const auto& [alpha, rows] : groups) {
    AlphaSummary s;
    s.alpha = alpha;
    s.replicates = rows.size();
    double density = 0.0, deg1 = 0.0, sig = 0.0;
    std::size_t deg1_n = 0, sig_n = 0;
    for (const SweepRow* r : rows) {
      double n = static_cast<double>(r->n_nodes);
      s.mean_nodes += n;
      s.mean_edges += static_cast<double>(r->n_edges);
      if (r->n_nodes > 0) {
        density += static_cast<double>(r->n_edges) / (n * n);
        deg1 += r->degree_counts.empty() ? 0.0 : static_cast<double>(r->degree_counts[0]) / n;
        ++deg1_n;
      }
      if (r->sigma_hat) {
        sig += *r->sigma_hat;
        ++sig_n;
      }
    }
    s.mean_nodes /= rows.size();
    s.mean_edges /= rows.size();
    s.edge_density = deg1_n ? density / deg1_n : 0.0;
    s.degree1_fraction = deg1_n ? deg1 / deg1_n : 0.0;
    s.mean_sigma_hat = sig_n ? sig / sig_n : std::numeric_limits<double>::quiet_NaN();
    out.push_back(s);
  }
  return out;
}

RegimeClassification classify_regime(const SweepResult& sweep,
                                     const ClassifierOptions& options) {
  RegimeClassification result;
  result.by_alpha = summarize_by_alpha(sweep);
  const auto& a = result.by_alpha;
  if (a.size() < 2) {
    throw InsufficientDataError("regime classification needs at least two alpha values");
  }
  const AlphaSummary& last = a.back();
  const AlphaSummary& prev = a[a.size() - 2];

  auto relative_change = [](double from, double to) {
    return from == 0.0 ? std::numeric_limits<double>::infinity()
                       : std::abs(to / from - 1.0);
  };

  if (prev.edge_density >= options.density_floor &&
      last.edge_density >= options.density_floor &&
      relative_change(prev.edge_density, last.edge_density) < options.density_stability) {
    result.regime = Regime::Dense;
    return result;
  }

  bool deg1_increasing = true;
  bool sigma_decreasing = true;
  for (std::size_t k = 1; k < a.size(); ++k) {
    if (!(a[k].degree1_fraction > a[k - 1].degree1_fraction)) deg1_increasing = false;
    if (!(a[k].mean_sigma_hat < a[k - 1].mean_sigma_hat)) sigma_decreasing = false;
  }
  if (deg1_increasing && last.degree1_fraction >= options.extreme_degree1) {
    result.regime = Regime::AlmostExtremelySparse;
    return result;
  }
  if (sigma_decreasing && last.mean_sigma_hat > options.sigma_low &&
      last.mean_sigma_hat < options.sigma_high && last.degree1_fraction > 0.0 &&
      relative_change(prev.degree1_fraction, last.degree1_fraction) <
          options.fraction_stability) {
    result.regime = Regime::SparsePowerLaw;
    return result;
  }
  result.regime = Regime::AlmostDense;
  return result;
}

}  // namespace graphex
