#include "graphex/localglobal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "graphex/asymptotics.hpp"
#include "graphex/detail/engine.hpp"
#include "graphex/errors.hpp"

namespace graphex {

namespace {

bool exact_separable(ModelKind kind) {
  return kind == ModelKind::DenseCompact || kind == ModelKind::UnitBox ||
         kind == ModelKind::Exponential || kind == ModelKind::SeparablePower ||
         kind == ModelKind::ExtremeSparse;
}

class SbmKernel {
 public:
  explicit SbmKernel(const SparseSbmModel& model)
      : model_(model),
        log_g_(model.eta().separable_envelope()->log_g_s) {}

  double log_envelope(double s) const { return log_g_(s); }
  double scale() const { return model_.max_link(); }
  bool has_mark() const { return true; }
  double edge(const detail::Atom& a, const detail::Atom& b) const {
    return model_.evaluate(a.x, a.mark, b.x, b.mark);
  }
  double self(const detail::Atom& a) const {
    return model_.evaluate(a.x, a.mark, a.x, a.mark);
  }
  double log_edge(const detail::Atom& a, const detail::Atom& b) const {
    return log_link(a, b) + a.log_g + b.log_g;
  }
  double log_self(const detail::Atom& a) const { return log_link(a, a) + 2.0 * a.log_g; }

 private:
  double log_link(const detail::Atom& a, const detail::Atom& b) const {
    const auto& b_ = model_.block_matrix();
    return std::log(b_[model_.block_of(a.mark)][model_.block_of(b.mark)]);
  }

  const SparseSbmModel& model_;
  std::function<double(double)> log_g_;
};

std::function<double(double)> eta_log_g(const SparseSbmModel& model) {
  return model.eta().separable_envelope()->log_g_s;
}

}  // namespace

SparseSbmModel make_sbm_model(const ModelConfig& config) {
  if (config.kind != ModelKind::LocalGlobal) {
    throw ValidationError("block model config needs kind LocalGlobal");
  }
  if (config.sigma || config.sigma0 || config.tau0) {
    throw ValidationError("LocalGlobal takes partition, B and eta only");
  }
  if (!config.eta) throw ValidationError("LocalGlobal needs eta");
  if (!exact_separable(config.eta->kind)) {
    throw ValidationError("eta must be a separable kind, got " +
                          std::string(to_string(config.eta->kind)));
  }
  SparseSbmModel m(make_model(*config.eta));
  m.config_ = config;

  const auto& p = config.partition;
  if (p.size() < 2) throw ValidationError("partition needs at least two breakpoints");
  if (p.front() != 0.0 || p.back() != 1.0) {
    throw ValidationError("partition must start at 0 and end at 1");
  }
  for (std::size_t k = 1; k < p.size(); ++k) {
    if (!(p[k] > p[k - 1])) throw ValidationError("partition must be strictly increasing");
  }
  const std::size_t n = p.size() - 1;
  const auto& b = config.block_matrix;
  if (b.size() != n) {
    throw ValidationError("B must be " + std::to_string(n) + " x " + std::to_string(n));
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (b[k].size() != n) {
      throw ValidationError("B must be " + std::to_string(n) + " x " + std::to_string(n));
    }
    for (std::size_t l = 0; l < n; ++l) {
      if (!(b[k][l] >= 0.0 && b[k][l] <= 1.0)) {
        throw ValidationError("B entries must lie in [0, 1]");
      }
      if (b[k][l] != b[l][k]) throw ValidationError("B must be symmetric");
    }
  }
  m.partition_ = p;
  m.b_ = b;
  m.block_mean_.assign(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      m.block_mean_[k] += m.block_width(l) * b[k][l];
      m.max_link_ = std::max(m.max_link_, b[k][l]);
    }
  }
  return m;
}

std::size_t SparseSbmModel::block_of(double v) const {
  if (!(v >= 0.0 && v <= 1.0)) throw DomainError("block coordinate must lie in [0, 1]");
  auto it = std::upper_bound(partition_.begin() + 1, partition_.end() - 1, v);
  return static_cast<std::size_t>(it - partition_.begin()) - 1;
}

double SparseSbmModel::max_block_mean_degree() const {
  return *std::max_element(block_mean_.begin(), block_mean_.end());
}

double SparseSbmModel::evaluate(double u, double v, double u2, double v2) const {
  return b_[block_of(v)][block_of(v2)] * eta_.evaluate(u, u2);
}

double SparseSbmModel::mean_degree(double u, double v) const {
  return eta_.mean_degree(u) * block_mean_[block_of(v)];
}

double SparseSbmModel::total_mass() const {
  double s = 0.0;
  for (std::size_t k = 0; k < blocks(); ++k) s += block_width(k) * block_mean_[k];
  return eta_.total_mass() * s;
}

double SparseSbmModel::diagonal_mass() const {
  double s = 0.0;
  for (std::size_t k = 0; k < blocks(); ++k) s += block_width(k) * b_[k][k];
  return eta_.diagonal_mass() * s;
}

double SparseSbmModel::node_count_factor() const {
  double sigma = eta_.tail_profile().sigma;
  double s = 0.0;
  for (std::size_t k = 0; k < blocks(); ++k) {
    if (block_mean_[k] > 0.0) s += block_width(k) * std::pow(block_mean_[k], sigma);
  }
  return s;
}

double lg_truncation_level(const SparseSbmModel& model, double alpha, double delta) {
  validate_sampling_args(alpha, delta);
  const GraphonModel& eta = model.eta();
  double end = eta.support_end();
  if (std::isfinite(end)) return model.max_link() == 0.0 ? 0.0 : end;
  return std::expm1(lg_truncation_level_log1p(model, alpha, delta));
}

double lg_truncation_level_log1p(const SparseSbmModel& model, double alpha, double delta) {
  validate_sampling_args(alpha, delta);
  const GraphonModel& eta = model.eta();
  double end = eta.support_end();
  if (model.max_link() == 0.0) return 0.0;
  if (std::isfinite(end)) return std::log1p(end);
  double target = 0.5 * delta * model.total_mass() / model.max_block_mean_degree();
  double s = eta.tail_mass_inverse_log1p(target);
  return s > 0.0 ? s : std::log(2.0);
}

LgSampledGraph sample_lg_graph(const SparseSbmModel& model, double alpha,
                               std::uint64_t seed, double delta,
                               const SamplerOptions& options, LgMethod method) {
  double s_max = lg_truncation_level_log1p(model, alpha, delta);
  double v_max = std::expm1(s_max);
  SbmKernel kernel(model);
  detail::RawGraph raw = method == LgMethod::Cells
                             ? detail::sample_cells(kernel, alpha, s_max, seed, options)
                             : detail::sample_naive(kernel, alpha, v_max, seed, options);
  LgSampledGraph out;
  SampledGraph& g = out.graph;
  g.alpha = alpha;
  g.seed = seed;
  g.delta = delta;
  g.v_max = v_max;
  g.log1p_v_max = s_max;
  g.n_latent = raw.n_latent;
  g.nodes.reserve(raw.atoms.size());
  for (std::uint32_t k = 0; k < raw.atoms.size(); ++k) {
    const auto& a = raw.atoms[k];
    g.nodes.push_back({k, a.theta, a.x, a.s});
    out.v.push_back(a.mark);
    out.block.push_back(static_cast<int>(model.block_of(a.mark)) + 1);
  }
  g.edges = std::move(raw.edges);
  return out;
}

LgNodeExpectation lg_expected_nodes(const SparseSbmModel& model, double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ValidationError("alpha must be positive and finite");
  }
  LgNodeExpectation e;
  const GraphonModel& eta = model.eta();
  for (std::size_t k = 0; k < model.blocks(); ++k) {
    double scale = model.block_mean_degree(k);
    double self = model.block_matrix()[k][k];
    double part = eta.integrate_marginal([&](double mu, double d) {
      double m = alpha * scale * mu;
      return -std::expm1(-m) + self * d * std::exp(-m);
    });
    e.exact += alpha * model.block_width(k) * part;
  }
  TailProfile p = eta.tail_profile();
  double base = p.sigma == 1.0
                    ? alpha * alpha * p.ell1(alpha)
                    : std::pow(alpha, 1.0 + p.sigma) * std::tgamma(1.0 - p.sigma) * p.ell(alpha);
  e.asymptotic = base * model.node_count_factor();
  return e;
}

double lg_expected_edges(const SparseSbmModel& model, double alpha) {
  return 0.5 * alpha * alpha * model.total_mass() + alpha * model.diagonal_mass();
}

double lg_expected_degree_count(const SparseSbmModel& model, double alpha,
                                std::uint64_t j) {
  if (j == 0) throw ValidationError("degree must be at least 1");
  const double jd = static_cast<double>(j);
  const double log_alpha = std::log(alpha);
  const double c_off = (jd + 1.0) * log_alpha - std::lgamma(jd + 1.0);
  const double c_self = jd * log_alpha - std::lgamma(jd);
  double total = 0.0;
  for (std::size_t k = 0; k < model.blocks(); ++k) {
    double scale = model.block_mean_degree(k);
    double link = model.block_matrix()[k][k];
    double part = model.eta().integrate_marginal([&](double mu_eta, double d_eta) {
      double mu = scale * mu_eta;
      double d = link * d_eta;
      double value = 0.0;
      if (mu > 0.0) {
        double log_mu = std::log(mu);
        value += std::exp(c_off + jd * log_mu - alpha * mu) * (1.0 - d);
        if (d > 0.0) value += std::exp(c_self + (jd - 1.0) * log_mu - alpha * mu) * d;
      } else if (j == 1 && d > 0.0) {
        value += std::exp(c_self) * d;
      }
      return value;
    });
    total += model.block_width(k) * part;
  }
  return total;
}

std::vector<std::vector<double>> block_link_matrix(const LgSampledGraph& graph,
                                                   const SparseSbmModel& model,
                                                   Exposure exposure) {
  const std::size_t p = model.blocks();
  const auto& nodes = graph.graph.nodes;
  if (graph.block.size() != nodes.size()) {
    throw ValidationError("block labels do not match the node list");
  }
  if (graph.graph.edges.empty()) throw InsufficientDataError("graph has no edges");
  std::vector<std::vector<double>> count(p, std::vector<double>(p, 0.0));
  for (const auto& e : graph.graph.edges) {
    if (e.i == e.j) continue;
    auto k = static_cast<std::size_t>(graph.block[e.i] - 1);
    auto l = static_cast<std::size_t>(graph.block[e.j] - 1);
    count[k][l] += 1.0;
    if (k != l) count[l][k] += 1.0;
  }
  // eta(u, u') = g(u) g(u'), so exposures factor into per-block sums.
  std::vector<double> sum(p, 0.0), sum_sq(p, 0.0);
  if (exposure == Exposure::Expected) {
    const GraphonModel& eta = model.eta();
    double tail = eta.tail_mass(std::min(graph.graph.v_max, eta.support_end()));
    double g_mass = (eta.total_mass() - tail) / std::sqrt(eta.total_mass());
    for (std::size_t k = 0; k < p; ++k) {
      sum[k] = graph.graph.alpha * model.block_width(k) * g_mass;
    }
  } else {
    auto log_g = eta_log_g(model);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      double gi = std::exp(log_g(nodes[i].log1p_vartheta));
      auto k = static_cast<std::size_t>(graph.block[i] - 1);
      sum[k] += gi;
      sum_sq[k] += gi * gi;
    }
  }
  std::vector<std::vector<double>> out(p, std::vector<double>(p, 0.0));
  for (std::size_t k = 0; k < p; ++k) {
    for (std::size_t l = 0; l < p; ++l) {
      double e = k == l ? 0.5 * (sum[k] * sum[k] - sum_sq[k]) : sum[k] * sum[l];
      out[k][l] = e > 0.0 ? count[k][l] / e : 0.0;
    }
  }
  return out;
}

}  // namespace graphex
