#include "graphex/asymptotics.hpp"

#include <cmath>

#include "graphex/errors.hpp"

namespace graphex {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw ValidationError("alpha must be positive and finite");
  }
}

}  // namespace

double expected_edges_exact(const GraphonModel& model, double alpha) {
  check_alpha(alpha);
  return 0.5 * alpha * alpha * model.total_mass() + alpha * model.diagonal_mass();
}

double expected_nodes_exact(const GraphonModel& model, double alpha,
                            const QuadratureSpec& spec) {
  check_alpha(alpha);
  return alpha * model.integrate_marginal(
                     [alpha](double mu, double d) {
                       double e = std::exp(-alpha * mu);
                       return -std::expm1(-alpha * mu) + d * e;
                     },
                     spec);
}

double expected_degree_count_exact(const GraphonModel& model, double alpha,
                                   std::uint64_t j, const QuadratureSpec& spec) {
  check_alpha(alpha);
  if (j == 0) throw ValidationError("degree must be at least 1");
  const double jd = static_cast<double>(j);
  const double log_alpha = std::log(alpha);
  const double c_off = (jd + 1.0) * log_alpha - std::lgamma(jd + 1.0);
  const double c_self = jd * log_alpha - std::lgamma(jd);
  return model.integrate_marginal(
      [=](double mu, double d) {
        double value = 0.0;
        if (mu > 0.0) {
          double log_mu = std::log(mu);
          value += std::exp(c_off + jd * log_mu - alpha * mu) * (1.0 - d);
          if (d > 0.0) value += std::exp(c_self + (jd - 1.0) * log_mu - alpha * mu) * d;
        } else if (j == 1 && d > 0.0) {
          value += std::exp(c_self) * d;
        }
        return value;
      },
      spec);
}

OracleValues compute_oracles(const GraphonModel& model, double alpha,
                             std::uint64_t j_max) {
  OracleValues o;
  o.alpha = alpha;
  o.edges = expected_edges_exact(model, alpha);
  o.nodes = expected_nodes_exact(model, alpha);
  for (std::uint64_t j = 1; j <= j_max; ++j) {
    o.degree_counts.push_back(expected_degree_count_exact(model, alpha, j));
  }
  return o;
}

double asymptotic_node_count(const GraphonModel& model, double alpha) {
  check_alpha(alpha);
  TailProfile p = model.tail_profile();
  if (p.sigma == 1.0) return alpha * alpha * p.ell1(alpha);
  return std::pow(alpha, 1.0 + p.sigma) * std::tgamma(1.0 - p.sigma) * p.ell(alpha);
}

double asymptotic_degree_fraction(double sigma, std::uint64_t j) {
  if (j == 0) throw ValidationError("degree must be at least 1");
  if (sigma == 1.0) {
    throw DomainError(
        "at sigma = 1 degree-1 nodes take all the mass; the limit is (1, 0, 0, ...)");
  }
  if (!(sigma >= 0.0 && sigma < 1.0)) throw DomainError("sigma must lie in [0, 1]");
  if (sigma == 0.0) return 0.0;
  double jd = static_cast<double>(j);
  return std::exp(std::log(sigma) + std::lgamma(jd - sigma) - std::lgamma(jd + 1.0) -
                  std::lgamma(1.0 - sigma));
}

double edges_from_nodes_prediction(const GraphonModel& model, double n_nodes) {
  if (!(n_nodes > 1.0)) throw ValidationError("node count must exceed 1");
  TailProfile p = model.tail_profile();
  return 0.5 * model.total_mass() * std::pow(n_nodes, 2.0 / (1.0 + p.sigma)) *
         p.ell_star(n_nodes);
}

double tauberian_ratio(const GraphonModel& model, double t) {
  if (!(t > 1.0)) throw ValidationError("t must exceed 1");
  double g0 = model.integrate_marginal(
      [t](double mu, double) { return -std::expm1(-t * mu); });
  TailProfile p = model.tail_profile();
  double predicted = p.sigma == 1.0
                         ? t * p.ell1(t)
                         : std::tgamma(1.0 - p.sigma) * std::pow(t, p.sigma) * p.ell(t);
  return g0 / predicted;
}

double nu(const GraphonModel& model, double x, double y) {
  if (model.kind() == ModelKind::GGP) {
    double fx = model.levy_tail_inverse(x);
    double fy = model.levy_tail_inverse(y);
    if (fx == 0.0 || fy == 0.0) return 0.0;
    const double log_gamma = std::lgamma(1.0 - model.sigma0());
    return integrate_positive_axis([&](double w) {
      if (!(w > 0.0)) return 0.0;
      return std::exp(std::log(-std::expm1(-2.0 * fx * w)) +
                      std::log(-std::expm1(-2.0 * fy * w)) -
                      (1.0 + model.sigma0()) * std::log(w) - model.tau0() * w - log_gamma);
    });
  }
  auto f = [&](double z) { return model.evaluate(x, z) * model.evaluate(y, z); };
  double end = model.support_end();
  if (std::isfinite(end)) return integrate(f, 0.0, end);
  return integrate_semi_infinite_log(f, 0.0);
}

Assumption2Report assumption2_margin(const GraphonModel& model, double a, double c1,
                                     const std::vector<double>& grid) {
  Assumption2Report r;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    double mx = model.mean_degree(grid[p]);
    if (!(mx > 0.0)) continue;
    for (std::size_t q = p; q < grid.size(); ++q) {
      double my = model.mean_degree(grid[q]);
      if (!(my > 0.0)) continue;
      double ratio = nu(model, grid[p], grid[q]) / (std::pow(mx, a) * std::pow(my, a));
      if (ratio > r.max_ratio) {
        r.max_ratio = ratio;
        r.argmax_x = grid[p];
        r.argmax_y = grid[q];
      }
    }
  }
  r.satisfied = r.max_ratio <= c1;
  return r;
}

}  // namespace graphex
