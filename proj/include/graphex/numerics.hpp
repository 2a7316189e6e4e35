#pragma once

#include <functional>

namespace graphex {

using Integrand = std::function<double(double)>;

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 4000;

  void validate() const;
};

/// Gamma function; throws DomainError at the poles 0, -1, -2, ...
double gamma_fn(double x);

/// Upper incomplete gamma Gamma(a, x) for real a and x > 0, including a <= 0.
double upper_incomplete_gamma(double a, double x);

/// Adaptive Gauss-Kronrod (7/15) over a finite interval.
double integrate(const Integrand& f, double a, double b,
                 const QuadratureSpec& spec = {});

/// Integral over [lower, inf) with the map x = lower + u / (1 - u).
double integrate_semi_infinite(const Integrand& f, double lower,
                               const QuadratureSpec& spec = {});

/// Integral over [lower, inf) with x = lower + expm1(t), then t = u / (1 - u).
/// Suited to integrands with slowly decaying (power or log) tails.
double integrate_semi_infinite_log(const Integrand& f, double lower,
                                   const QuadratureSpec& spec = {});

/// Integral over (0, inf) for integrands that may have an integrable power
/// singularity at zero as well as a heavy tail.
double integrate_positive_axis(const Integrand& f,
                               const QuadratureSpec& spec = {});

/// For a non-increasing f on [0, hi_bracket] with f(hi_bracket) <= target <=
/// f(0), returns inf{ y : f(y) <= target }.
double invert_monotone(const Integrand& f, double target, double hi_bracket);

}  // namespace graphex
