#include "graphex/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/special_functions/expint.hpp>

#include "graphex/errors.hpp"

namespace graphex {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct KindName {
  ModelKind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {ModelKind::DenseCompact, "DenseCompact"},
    {ModelKind::UnitBox, "UnitBox"},
    {ModelKind::Exponential, "Exponential"},
    {ModelKind::SeparablePower, "SeparablePower"},
    {ModelKind::NonSeparablePower, "NonSeparablePower"},
    {ModelKind::ExtremeSparse, "ExtremeSparse"},
    {ModelKind::GGP, "GGP"},
    {ModelKind::LocalGlobal, "LocalGlobal"},
};

double extreme_sparse_mu(double x) {
  double s = std::log1p(x);
  return 1.0 / ((1.0 + x) * (1.0 + s) * (1.0 + s));
}

double require(const std::optional<double>& value, const char* name,
               ModelKind kind) {
  if (!value) {
    throw ValidationError(std::string(to_string(kind)) + " needs parameter " +
                          name);
  }
  if (!std::isfinite(*value)) {
    throw ValidationError(std::string(name) + " must be finite");
  }
  return *value;
}

void forbid(bool present, const char* name, ModelKind kind) {
  if (present) {
    throw ValidationError(std::string(to_string(kind)) +
                          " does not take parameter " + name);
  }
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  for (const auto& entry : kKindNames) {
    if (entry.kind == kind) return entry.name;
  }
  return "unknown";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
  for (const auto& entry : kKindNames) {
    if (entry.name == name) return entry.kind;
  }
  return std::nullopt;
}

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::Dense: return "Dense";
    case Regime::AlmostDense: return "AlmostDense";
    case Regime::SparsePowerLaw: return "SparsePowerLaw";
    case Regime::AlmostExtremelySparse: return "AlmostExtremelySparse";
  }
  return "unknown";
}

bool has_separable_envelope(ModelKind kind) {
  return kind != ModelKind::GGP && kind != ModelKind::LocalGlobal;
}

GraphonModel make_model(const ModelConfig& config) {
  GraphonModel m;
  m.kind_ = config.kind;
  m.config_ = config;
  const ModelKind kind = config.kind;
  bool lg_fields = !config.partition.empty() || !config.block_matrix.empty() ||
                   config.eta != nullptr;

  if (kind == ModelKind::LocalGlobal) {
    throw ValidationError("LocalGlobal configs are built with make_sbm_model");
  }
  forbid(lg_fields, "partition/B/eta", kind);

  switch (kind) {
    case ModelKind::SeparablePower:
    case ModelKind::NonSeparablePower: {
      forbid(config.sigma0.has_value(), "sigma0", kind);
      forbid(config.tau0.has_value(), "tau0", kind);
      double s = require(config.sigma, "sigma", kind);
      if (!(s > 0.0 && s < 1.0)) {
        throw ValidationError("sigma must lie in (0, 1), got " + std::to_string(s));
      }
      m.sigma_ = s;
      if (kind == ModelKind::SeparablePower) {
        m.total_mass_ = s * s / ((1.0 - s) * (1.0 - s));
        m.diagonal_mass_ = s / (2.0 - s);
      } else {
        m.total_mass_ = s * s / (1.0 - s);
        m.diagonal_mass_ = s / 2.0;
      }
      break;
    }
    case ModelKind::GGP: {
      forbid(config.sigma.has_value(), "sigma", kind);
      double s0 = require(config.sigma0, "sigma0", kind);
      double t0 = require(config.tau0, "tau0", kind);
      if (!(s0 > -1.0 && s0 < 1.0)) {
        throw ValidationError("sigma0 must lie in (-1, 1), got " + std::to_string(s0));
      }
      if (!(t0 > 0.0)) throw ValidationError("tau0 must be positive");
      m.sigma0_ = s0;
      m.tau0_ = t0;
      m.sigma_ = std::max(s0, 0.0);
      m.ggp_gamma_ = gamma_fn(1.0 - s0);
      m.ggp_tau_pow_ = std::pow(t0, s0);
      m.ggp_tail_at_zero_ = s0 < 0.0 ? m.ggp_tau_pow_ / (-s0) : kInf;
      m.total_mass_ = m.integrate_marginal([](double mu, double) { return mu; });
      m.diagonal_mass_ = m.integrate_marginal([](double, double d) { return d; });
      break;
    }
    default: {
      forbid(config.sigma.has_value(), "sigma", kind);
      forbid(config.sigma0.has_value(), "sigma0", kind);
      forbid(config.tau0.has_value(), "tau0", kind);
      if (kind == ModelKind::DenseCompact) {
        m.total_mass_ = 0.25;
        m.diagonal_mass_ = 1.0 / 3.0;
      } else if (kind == ModelKind::UnitBox) {
        m.total_mass_ = 1.0;
        m.diagonal_mass_ = 1.0;
      } else if (kind == ModelKind::Exponential) {
        m.total_mass_ = 1.0;
        m.diagonal_mass_ = 0.5;
      } else {
        // Integral of e^{-s} (1 + s)^{-4} over s > 0 equals e E_4(1).
        m.total_mass_ = 1.0;
        m.diagonal_mass_ = std::exp(1.0) * boost::math::expint(4, 1.0);
      }
      break;
    }
  }
  return m;
}

double GraphonModel::evaluate(double x, double y) const {
  if (!(x >= 0.0) || !(y >= 0.0)) {
    throw DomainError("graphon arguments must be non-negative");
  }
  switch (kind_) {
    case ModelKind::DenseCompact:
      return (x < 1.0 && y < 1.0) ? (1.0 - x) * (1.0 - y) : 0.0;
    case ModelKind::UnitBox:
      return (x <= 1.0 && y <= 1.0) ? 1.0 : 0.0;
    case ModelKind::Exponential:
      return std::exp(-x - y);
    case ModelKind::SeparablePower:
      return std::pow((x + 1.0) * (y + 1.0), -1.0 / sigma_);
    case ModelKind::NonSeparablePower:
      return std::pow(x + y + 1.0, -1.0 / sigma_ - 1.0);
    case ModelKind::ExtremeSparse:
      return extreme_sparse_mu(x) * extreme_sparse_mu(y);
    case ModelKind::GGP: {
      double fx = levy_tail_inverse(x);
      double fy = x == y ? fx : levy_tail_inverse(y);
      if (fx == 0.0 || fy == 0.0) return 0.0;
      return x == y ? -std::expm1(-fx * fx) : -std::expm1(-2.0 * fx * fy);
    }
    case ModelKind::LocalGlobal:
      break;
  }
  throw ValidationError("evaluate is not defined for this kind");
}

double GraphonModel::mean_degree(double x) const {
  if (!(x >= 0.0)) throw DomainError("mean degree needs x >= 0");
  switch (kind_) {
    case ModelKind::DenseCompact:
      return x < 1.0 ? 0.5 * (1.0 - x) : 0.0;
    case ModelKind::UnitBox:
      return x <= 1.0 ? 1.0 : 0.0;
    case ModelKind::Exponential:
      return std::exp(-x);
    case ModelKind::SeparablePower:
      return sigma_ / (1.0 - sigma_) * std::pow(x + 1.0, -1.0 / sigma_);
    case ModelKind::NonSeparablePower:
      return sigma_ * std::pow(x + 1.0, -1.0 / sigma_);
    case ModelKind::ExtremeSparse:
      return extreme_sparse_mu(x);
    case ModelKind::GGP:
      return laplace_exponent(2.0 * levy_tail_inverse(x));
    case ModelKind::LocalGlobal:
      break;
  }
  throw ValidationError("mean degree is not defined for this kind");
}

double GraphonModel::mean_degree_at_zero() const {
  if (kind_ == ModelKind::GGP) {
    return sigma0_ < 0.0 ? ggp_tau_pow_ / (-sigma0_) : kInf;
  }
  return mean_degree(0.0);
}

double GraphonModel::mean_degree_inverse(double u) const {
  if (!(u > 0.0 && u < mean_degree_at_zero())) {
    throw DomainError("mean degree inverse needs 0 < u < mu(0), got u = " +
                      std::to_string(u));
  }
  switch (kind_) {
    case ModelKind::DenseCompact:
      return 1.0 - 2.0 * u;
    case ModelKind::UnitBox:
      return 1.0;
    case ModelKind::Exponential:
      return -std::log(u);
    case ModelKind::SeparablePower:
      return std::pow(u * (1.0 / sigma_ - 1.0), -sigma_) - 1.0;
    case ModelKind::NonSeparablePower:
      return std::pow(u / sigma_, -sigma_) - 1.0;
    case ModelKind::ExtremeSparse: {
      // mu = e^{-s} (1 + s)^{-2} with s = log(1 + x); solve in s.
      double target = -std::log(u);
      double s = 0.0;
      for (int i = 0; i < 200; ++i) {
        double h = s + 2.0 * std::log1p(s) - target;
        double step = h / (1.0 + 2.0 / (1.0 + s));
        s -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, s)) break;
      }
      return std::expm1(s);
    }
    case ModelKind::GGP:
      return levy_tail(0.5 * laplace_exponent_inverse(u));
    case ModelKind::LocalGlobal:
      break;
  }
  throw ValidationError("mean degree inverse is not defined for this kind");
}

double GraphonModel::support_end() const {
  switch (kind_) {
    case ModelKind::DenseCompact:
    case ModelKind::UnitBox:
      return 1.0;
    case ModelKind::GGP:
      return ggp_tail_at_zero_;
    default:
      return kInf;
  }
}

double GraphonModel::tail_mass(double v) const {
  if (!(v >= 0.0)) throw DomainError("tail mass needs v >= 0");
  if (v >= support_end()) return 0.0;
  const double s = sigma_;
  switch (kind_) {
    case ModelKind::DenseCompact:
      return 0.25 * (1.0 - v) * (1.0 - v);
    case ModelKind::UnitBox:
      return 1.0 - v;
    case ModelKind::Exponential:
      return std::exp(-v);
    case ModelKind::SeparablePower:
      return s * s / ((1.0 - s) * (1.0 - s)) * std::pow(1.0 + v, 1.0 - 1.0 / s);
    case ModelKind::NonSeparablePower:
      return s * s / (1.0 - s) * std::pow(1.0 + v, 1.0 - 1.0 / s);
    case ModelKind::ExtremeSparse:
      return 1.0 / (1.0 + std::log1p(v));
    case ModelKind::GGP: {
      // Points beyond v carry jumps below w_v = levy_tail_inverse(v).
      double wv = levy_tail_inverse(v);
      if (wv == 0.0) return 0.0;
      const double log_wv = std::log(wv);
      auto part = [&](double z) {
        double w = wv * std::exp(-z);
        if (w == 0.0) return 0.0;
        double log_w = log_wv - z;
        return laplace_exponent(2.0 * w) * std::exp(-sigma0_ * log_w - tau0_ * w) / ggp_gamma_;
      };
      return integrate_semi_infinite(part, 0.0);
    }
    case ModelKind::LocalGlobal:
      break;
  }
  throw ValidationError("tail mass is not defined for this kind");
}

double GraphonModel::tail_mass_inverse(double target) const {
  if (!(target > 0.0)) throw DomainError("tail mass target must be positive");
  double end = support_end();
  if (std::isfinite(end)) return end;
  if (target >= total_mass_) return 0.0;
  const double s = sigma_;
  switch (kind_) {
    case ModelKind::Exponential:
      return -std::log(target);
    case ModelKind::SeparablePower: {
      double c = s * s / ((1.0 - s) * (1.0 - s));
      return std::pow(target / c, -s / (1.0 - s)) - 1.0;
    }
    case ModelKind::NonSeparablePower: {
      double c = s * s / (1.0 - s);
      return std::pow(target / c, -s / (1.0 - s)) - 1.0;
    }
    case ModelKind::ExtremeSparse:
      return std::expm1(1.0 / target - 1.0);
    case ModelKind::GGP: {
      // Bisection in log(1 + v); tail_mass is non-increasing.
      double lo = 0.0;
      double hi = 1.0;
      while (tail_mass(std::expm1(hi)) > target) {
        lo = hi;
        hi *= 2.0;
        if (hi > 700.0) return kInf;
      }
      for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
        double mid = 0.5 * (lo + hi);
        if (tail_mass(std::expm1(mid)) > target) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return std::expm1(hi);
    }
    default:
      break;
  }
  throw ValidationError("tail mass inverse is not defined for this kind");
}

TailProfile GraphonModel::tail_profile() const {
  TailProfile p;
  auto constant_ell = [&p](double ell) {
    p.ell = [ell](double) { return ell; };
    double ls = ell * std::tgamma(1.0 - p.sigma);
    double star = std::pow(ls, -2.0 / (1.0 + p.sigma));
    p.ell_star = [star](double) { return star; };
  };
  auto log_ell = [&p]() {
    p.ell = [](double t) { return std::log(t); };
    p.ell_star = [](double t) { return 1.0 / (std::log(t) * std::log(t)); };
  };
  switch (kind_) {
    case ModelKind::DenseCompact:
      p.sigma = 0.0;
      p.regime = Regime::Dense;
      constant_ell(1.0);
      p.ell = [](double t) { return t > 2.0 ? 1.0 - 2.0 / t : 0.0; };
      break;
    case ModelKind::UnitBox:
      p.sigma = 0.0;
      p.regime = Regime::Dense;
      constant_ell(1.0);
      break;
    case ModelKind::Exponential:
      p.sigma = 0.0;
      p.regime = Regime::AlmostDense;
      log_ell();
      break;
    case ModelKind::SeparablePower:
      p.sigma = sigma_;
      p.regime = Regime::SparsePowerLaw;
      constant_ell(std::pow(1.0 / sigma_ - 1.0, -sigma_));
      break;
    case ModelKind::NonSeparablePower:
      p.sigma = sigma_;
      p.regime = Regime::SparsePowerLaw;
      constant_ell(std::pow(sigma_, sigma_));
      break;
    case ModelKind::ExtremeSparse:
      p.sigma = 1.0;
      p.regime = Regime::AlmostExtremelySparse;
      p.ell = [](double t) { return 1.0 / (std::log(t) * std::log(t)); };
      p.ell1 = [](double t) { return 1.0 / std::log(t); };
      p.ell_star = [](double t) { return 0.5 * std::log(t); };
      break;
    case ModelKind::GGP:
      if (sigma0_ > 0.0) {
        p.sigma = sigma0_;
        p.regime = Regime::SparsePowerLaw;
        double mean_jump = std::pow(tau0_, sigma0_ - 1.0);
        constant_ell(std::pow(2.0 * mean_jump, sigma0_) / (sigma0_ * ggp_gamma_));
      } else if (sigma0_ == 0.0) {
        p.sigma = 0.0;
        p.regime = Regime::AlmostDense;
        log_ell();
      } else {
        p.sigma = 0.0;
        p.regime = Regime::Dense;
        constant_ell(ggp_tail_at_zero_);
      }
      break;
    case ModelKind::LocalGlobal:
      throw ValidationError("tail profile is not defined for this kind");
  }
  return p;
}

std::optional<SeparableEnvelope> GraphonModel::separable_envelope() const {
  const double s = sigma_;
  switch (kind_) {
    case ModelKind::DenseCompact:
      return SeparableEnvelope{[](double x) { return x < 1.0 ? 1.0 - x : 0.0; },
                               [](double t) {
                                 double g = 1.0 - std::expm1(t);
                                 return g > 0.0 ? std::log(g) : -kInf;
                               },
                               true};
    case ModelKind::UnitBox:
      return SeparableEnvelope{[](double x) { return x <= 1.0 ? 1.0 : 0.0; },
                               [](double t) { return std::expm1(t) <= 1.0 ? 0.0 : -kInf; },
                               true};
    case ModelKind::Exponential:
      return SeparableEnvelope{[](double x) { return std::exp(-x); },
                               [](double t) { return -std::expm1(t); }, true};
    case ModelKind::SeparablePower:
      return SeparableEnvelope{[s](double x) { return std::pow(x + 1.0, -1.0 / s); },
                               [s](double t) { return -t / s; }, true};
    case ModelKind::ExtremeSparse:
      return SeparableEnvelope{extreme_sparse_mu,
                               [](double t) { return -t - 2.0 * std::log1p(t); }, true};
    case ModelKind::NonSeparablePower: {
      // x + y + 1 >= sqrt((x + 1)(y + 1)), so W <= h(x) h(y).
      double e = -(1.0 + s) / (2.0 * s);
      return SeparableEnvelope{[e](double x) { return std::pow(x + 1.0, e); },
                               [e](double t) { return e * t; }, false};
    }
    default:
      return std::nullopt;
  }
}

double GraphonModel::integrate_marginal(const MarginalIntegrand& F,
                                        const QuadratureSpec& spec) const {
  switch (kind_) {
    case ModelKind::DenseCompact:
    case ModelKind::UnitBox:
      return integrate([&](double x) { return F(mean_degree(x), diagonal(x)); },
                       0.0, 1.0, spec);
    case ModelKind::GGP: {
      // x -> levy_tail_inverse(x) pushes Lebesgue measure onto the Levy measure.
      // Below w = 1 substitute w = e^{-z}; the density is taken in logs since
      // w^{-1 - sigma0} overflows long before the integrand vanishes.
      auto value = [&](double w, double log_w) {
        double f = F(laplace_exponent(2.0 * w), -std::expm1(-w * w));
        if (f == 0.0) return 0.0;
        return f * std::exp(-sigma0_ * log_w - tau0_ * w) / ggp_gamma_;
      };
      double upper = integrate_semi_infinite_log(
          [&](double w) {
            double log_w = std::log(w);
            return value(w, log_w) / w;
          },
          1.0, spec);
      double lower = integrate_semi_infinite(
          [&](double z) {
            double w = std::exp(-z);
            return w == 0.0 ? 0.0 : value(w, -z);
          },
          0.0, spec);
      return upper + lower;
    }
    case ModelKind::ExtremeSparse: {
      // In s = log(1 + x) the measure is e^s ds and mu = e^{-s} (1 + s)^{-2}.
      // Past kLogCut the integrand is F'(0) mu e^s, whose tail is 1 / (1 + S).
      constexpr double kLogCut = 600.0;
      auto in_s = [&](double t) {
        double mu = std::exp(-t) / ((1.0 + t) * (1.0 + t));
        double v = F(mu, mu * mu);
        return v == 0.0 ? 0.0 : v * std::exp(t);
      };
      double body = integrate(in_s, 0.0, kLogCut, spec);
      double mu_cut = std::exp(-kLogCut) / ((1.0 + kLogCut) * (1.0 + kLogCut));
      double slope = F(mu_cut, mu_cut * mu_cut) / mu_cut;
      return body + slope / (1.0 + kLogCut);
    }
    case ModelKind::LocalGlobal:
      throw ValidationError("marginal integrals are not defined for this kind");
    default:
      return integrate_semi_infinite_log(
          [&](double x) { return F(mean_degree(x), diagonal(x)); }, 0.0, spec);
  }
}

double GraphonModel::tail_mass_inverse_log1p(double target) const {
  if (kind_ == ModelKind::ExtremeSparse) {
    if (!(target > 0.0)) throw DomainError("tail mass target must be positive");
    return target >= total_mass_ ? 0.0 : 1.0 / target - 1.0;
  }
  return std::log1p(tail_mass_inverse(target));
}

double GraphonModel::levy_tail(double w) const {
  if (kind_ != ModelKind::GGP) throw ValidationError("levy_tail needs a GGP model");
  if (!(w >= 0.0)) throw DomainError("levy tail needs w >= 0");
  if (w == 0.0) return ggp_tail_at_zero_;
  return ggp_tau_pow_ * upper_incomplete_gamma(-sigma0_, tau0_ * w) / ggp_gamma_;
}

double GraphonModel::levy_density(double w) const {
  if (!(w > 0.0)) return 0.0;
  return std::exp(-(1.0 + sigma0_) * std::log(w) - tau0_ * w) / ggp_gamma_;
}

double GraphonModel::levy_tail_inverse(double x) const {
  if (kind_ != ModelKind::GGP) {
    throw ValidationError("levy_tail_inverse needs a GGP model");
  }
  if (!(x >= 0.0)) throw DomainError("levy tail inverse needs x >= 0");
  if (x >= ggp_tail_at_zero_) return 0.0;
  if (x == 0.0) return kInf;
  if (std::isinf(x)) return 0.0;

  const double log_x = std::log(x);
  // F(z) = log levy_tail(e^z) - log x is strictly decreasing in z.
  auto F = [&](double z) { return std::log(levy_tail(std::exp(z))) - log_x; };

  double lo = 0.0;
  double hi = 0.0;
  if (F(0.0) > 0.0) {
    double step = 1.0;
    hi = step;
    while (F(hi) > 0.0) {
      lo = hi;
      step *= 2.0;
      hi += step;
      if (hi > 1e3) return std::exp(lo);
    }
  } else {
    double step = 1.0;
    lo = -step;
    while (F(lo) <= 0.0) {
      hi = lo;
      step *= 2.0;
      lo -= step;
      if (std::exp(lo) == 0.0) return 0.0;
    }
  }
  // Safeguarded Newton on [lo, hi] with F(lo) > 0 >= F(hi).
  double z = 0.5 * (lo + hi);
  for (int i = 0; i < 200; ++i) {
    double w = std::exp(z);
    double tail = levy_tail(w);
    double f = std::log(tail) - log_x;
    if (f > 0.0) {
      lo = z;
    } else {
      hi = z;
    }
    double slope = -w * levy_density(w) / tail;
    double next = z - f / slope;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    if (std::abs(next - z) <= 1e-15 * std::max(1.0, std::abs(z)) || hi - lo <= 1e-15) {
      z = next;
      break;
    }
    z = next;
  }
  return std::exp(z);
}

double GraphonModel::laplace_exponent(double t) const {
  if (!(t >= 0.0)) throw DomainError("Laplace exponent needs t >= 0");
  if (std::isinf(t)) return mean_degree_at_zero();
  if (sigma0_ == 0.0) return std::log1p(t / tau0_);
  return ggp_tau_pow_ * std::expm1(sigma0_ * std::log1p(t / tau0_)) / sigma0_;
}

double GraphonModel::laplace_exponent_inverse(double u) const {
  if (!(u >= 0.0)) throw DomainError("Laplace exponent inverse needs u >= 0");
  if (sigma0_ == 0.0) return tau0_ * std::expm1(u);
  double arg = sigma0_ * u / ggp_tau_pow_;
  if (!(arg > -1.0)) return kInf;
  return tau0_ * std::expm1(std::log1p(arg) / sigma0_);
}

}  // namespace graphex
