#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "graphex/numerics.hpp"

namespace graphex {

enum class ModelKind {
  DenseCompact,
  UnitBox,
  Exponential,
  SeparablePower,
  NonSeparablePower,
  ExtremeSparse,
  GGP,
  LocalGlobal,
};

std::string_view to_string(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view name);

enum class Regime { Dense, AlmostDense, SparsePowerLaw, AlmostExtremelySparse };

std::string_view to_string(Regime regime);

/// Parsed model description. Only the fields relevant to `kind` are set.
struct ModelConfig {
  ModelKind kind = ModelKind::Exponential;
  std::optional<double> sigma;
  std::optional<double> sigma0;
  std::optional<double> tau0;
  // LocalGlobal only.
  std::vector<double> partition;
  std::vector<std::vector<double>> block_matrix;
  std::shared_ptr<const ModelConfig> eta;
};

/// Tail behaviour of the mean-degree inverse: mu^{-1}(x) ~ x^{-sigma} ell(1/x).
struct TailProfile {
  double sigma = 0.0;
  std::function<double(double)> ell;
  std::function<double(double)> ell1;  // set only when sigma == 1
  std::function<double(double)> ell_star;
  Regime regime = Regime::Dense;
};

/// g with W(x, y) <= g(x) g(y); `exact` when equality holds.
struct SeparableEnvelope {
  std::function<double(double)> g;
  /// log g(expm1(s)), usable where x overflows.
  std::function<double(double)> log_g_s;
  bool exact = false;
};

/// Integrand of a marginal integral, as a function of mu(x) and W(x, x).
/// Must vanish when both arguments are zero.
using MarginalIntegrand = std::function<double(double mu, double diag)>;

class GraphonModel {
 public:
  ModelKind kind() const { return kind_; }
  const ModelConfig& config() const { return config_; }
  double sigma() const { return sigma_; }
  double sigma0() const { return sigma0_; }
  double tau0() const { return tau0_; }

  double evaluate(double x, double y) const;
  double diagonal(double x) const { return evaluate(x, x); }
  double mean_degree(double x) const;
  double mean_degree_inverse(double u) const;
  double mean_degree_at_zero() const;
  double total_mass() const { return total_mass_; }
  double diagonal_mass() const { return diagonal_mass_; }

  /// End of the support of mu, +inf when unbounded.
  double support_end() const;
  /// Integral of mu over (v, inf).
  double tail_mass(double v) const;
  /// Smallest v with tail_mass(v) <= target, capped at the support end.
  double tail_mass_inverse(double target) const;
  /// log1p(tail_mass_inverse(target)), finite even when the level overflows.
  double tail_mass_inverse_log1p(double target) const;

  TailProfile tail_profile() const;
  std::optional<SeparableEnvelope> separable_envelope() const;

  /// Integral over x in (0, inf) of F(mu(x), W(x, x)).
  double integrate_marginal(const MarginalIntegrand& F,
                            const QuadratureSpec& spec = {}) const;

  // Generalized gamma process pieces (kind GGP only).
  double levy_tail(double w) const;
  double levy_tail_inverse(double x) const;
  double laplace_exponent(double t) const;
  double laplace_exponent_inverse(double u) const;
  double levy_density(double w) const;

 private:
  friend GraphonModel make_model(const ModelConfig& config);
  GraphonModel() = default;

  ModelKind kind_ = ModelKind::Exponential;
  ModelConfig config_;
  double sigma_ = 0.0;
  double sigma0_ = 0.0;
  double tau0_ = 1.0;
  double total_mass_ = 0.0;
  double diagonal_mass_ = 0.0;
  // GGP constants: Gamma(1 - sigma0), tau0^sigma0, levy tail at zero.
  double ggp_gamma_ = 1.0;
  double ggp_tau_pow_ = 1.0;
  double ggp_tail_at_zero_ = 0.0;
};

/// Validates parameters and builds a model. LocalGlobal configs are rejected
/// here; see make_sbm_model.
GraphonModel make_model(const ModelConfig& config);

/// True when the fast sampler applies to this kind.
bool has_separable_envelope(ModelKind kind);

}  // namespace graphex
