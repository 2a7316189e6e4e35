#include "graphex/sampler.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "graphex/detail/engine.hpp"
#include "graphex/errors.hpp"

namespace graphex {

namespace {

class GraphonKernel {
 public:
  GraphonKernel(const GraphonModel& model, SeparableEnvelope envelope)
      : model_(model), envelope_(std::move(envelope)) {}
  explicit GraphonKernel(const GraphonModel& model)
      : model_(model), ggp_(model.kind() == ModelKind::GGP) {}

  double log_envelope(double s) const { return envelope_.log_g_s(s); }
  double scale() const { return 1.0; }
  bool has_mark() const { return false; }
  // GGP atoms keep log of the inverted Levy tail so pairs skip the root find.
  void prepare(detail::Atom& a) const {
    if (ggp_) a.log_g = std::log(model_.levy_tail_inverse(a.x));
  }
  double edge(const detail::Atom& a, const detail::Atom& b) const {
    if (ggp_) return -std::expm1(-2.0 * std::exp(a.log_g + b.log_g));
    return model_.evaluate(a.x, b.x);
  }
  double self(const detail::Atom& a) const {
    if (ggp_) return -std::expm1(-std::exp(2.0 * a.log_g));
    return model_.diagonal(a.x);
  }
  double log_edge(const detail::Atom& a, const detail::Atom& b) const {
    if (envelope_.exact) return a.log_g + b.log_g;
    return std::log(model_.evaluate(std::expm1(a.s), std::expm1(b.s)));
  }
  double log_self(const detail::Atom& a) const {
    if (envelope_.exact) return 2.0 * a.log_g;
    return std::log(model_.diagonal(std::expm1(a.s)));
  }

 private:
  const GraphonModel& model_;
  SeparableEnvelope envelope_;
  bool ggp_ = false;
};

SampledGraph to_graph(detail::RawGraph raw, double alpha, std::uint64_t seed,
                      double delta, double s_max) {
  SampledGraph g;
  g.alpha = alpha;
  g.seed = seed;
  g.delta = delta;
  g.v_max = std::expm1(s_max);
  g.log1p_v_max = s_max;
  g.n_latent = raw.n_latent;
  g.nodes.reserve(raw.atoms.size());
  for (std::uint32_t k = 0; k < raw.atoms.size(); ++k) {
    const auto& a = raw.atoms[k];
    g.nodes.push_back({k, a.theta, a.x, a.s});
  }
  g.edges = std::move(raw.edges);
  return g;
}

}  // namespace

std::uint64_t default_max_points() {
  if (const char* env = std::getenv("GRAPHEX_MAX_POINTS")) {
    char* end = nullptr;
    double value = std::strtod(env, &end);
    if (end != env && value >= 1.0 && std::isfinite(value)) {
      return static_cast<std::uint64_t>(value);
    }
  }
  return 100000000ULL;
}

void validate_sampling_args(double alpha, double delta) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ValidationError("alpha must be positive and finite");
  }
  if (!(delta > 0.0 && delta < 1.0)) {
    throw ValidationError("delta must lie in (0, 1)");
  }
}

double truncation_level(const GraphonModel& model, double alpha, double delta) {
  validate_sampling_args(alpha, delta);
  double end = model.support_end();
  if (std::isfinite(end)) return end;
  return std::expm1(truncation_level_log1p(model, alpha, delta));
}

double truncation_level_log1p(const GraphonModel& model, double alpha, double delta) {
  validate_sampling_args(alpha, delta);
  double end = model.support_end();
  if (std::isfinite(end)) return std::log1p(end);
  double s = model.tail_mass_inverse_log1p(0.5 * delta * model.total_mass());
  return s > 0.0 ? s : std::log(2.0);
}

LatentPoints sample_point_process(double alpha, double v_max, std::uint64_t seed,
                                  const SamplerOptions& options) {
  if (!(alpha > 0.0) || !(v_max > 0.0) || !std::isfinite(alpha * v_max)) {
    throw ValidationError("point process needs positive finite alpha and v_max");
  }
  CounterStream s(seed, {detail::kLatent});
  double count = s.poisson(alpha * v_max);
  detail::check_capacity(count, options, "point process");
  LatentPoints pts;
  pts.alpha = alpha;
  pts.v_max = v_max;
  auto n = static_cast<std::size_t>(count);
  pts.theta.resize(n);
  pts.vartheta.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    pts.theta[k] = alpha * s.uniform();
    pts.vartheta[k] = v_max * s.uniform();
  }
  return pts;
}

SampledGraph sample_graph_naive(const GraphonModel& model, double alpha,
                                std::uint64_t seed, double delta,
                                const SamplerOptions& options) {
  double s_max = truncation_level_log1p(model, alpha, delta);
  GraphonKernel kernel(model);
  auto raw = detail::sample_naive(kernel, alpha, std::expm1(s_max), seed, options);
  return to_graph(std::move(raw), alpha, seed, delta, s_max);
}

SampledGraph sample_graph_separable(const GraphonModel& model, double alpha,
                                    std::uint64_t seed, double delta,
                                    const SamplerOptions& options) {
  auto envelope = model.separable_envelope();
  if (!envelope) {
    throw ValidationError(std::string("the fast sampler needs a separable envelope; ") +
                          std::string(to_string(model.kind())) + " has none");
  }
  double s_max = truncation_level_log1p(model, alpha, delta);
  GraphonKernel kernel(model, *envelope);
  auto raw = detail::sample_cells(kernel, alpha, s_max, seed, options);
  return to_graph(std::move(raw), alpha, seed, delta, s_max);
}

}  // namespace graphex
