#include "graphex/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "graphex/errors.hpp"

namespace graphex {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;

  bool operator<(const Segment& other) const { return error < other.error; }
};

double checked(const Integrand& f, double x) {
  double y = f(x);
  if (!std::isfinite(y)) {
    throw ConvergenceError("integrand is not finite at x = " +
                           std::to_string(x));
  }
  return y;
}

Segment kronrod(const Integrand& f, double a, double b) {
  double center = 0.5 * (a + b);
  double half = 0.5 * (b - a);
  double fc = checked(f, center);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int k = 0; k < 7; ++k) {
    double dx = half * kXgk[k];
    double sum = checked(f, center - dx) + checked(f, center + dx);
    kron += kWgk[k] * sum;
    if (k % 2 == 1) gauss += kWg[k / 2] * sum;
  }
  kron *= half;
  gauss *= half;
  return {a, b, kron, std::abs(kron - gauss)};
}

double upper_gamma_continued_fraction(double a, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-16;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) {
      return std::exp(a * std::log(x) - x) * h;
    }
  }
  throw ConvergenceError("incomplete gamma continued fraction did not converge");
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol >= 0.0) || max_subdivisions < 1) {
    throw ValidationError("quadrature tolerances must be positive");
  }
}

double gamma_fn(double x) {
  if (std::isnan(x)) throw DomainError("gamma of NaN");
  if (x <= 0.0 && x == std::floor(x)) {
    throw DomainError("gamma has a pole at " + std::to_string(x));
  }
  return std::tgamma(x);
}

double upper_incomplete_gamma(double a, double x) {
  if (!(x > 0.0) || std::isnan(a)) {
    throw DomainError("upper incomplete gamma needs x > 0");
  }
  if (std::isinf(x)) return 0.0;
  if (a > 0.0) return boost::math::tgamma(a, x);
  if (x >= 1.0) return upper_gamma_continued_fraction(a, x);
  if (a == 0.0) return boost::math::expint(1, x);
  // Walk up to a >= 0 with Gamma(a, x) = (Gamma(a + 1, x) - x^a e^-x) / a.
  int steps = static_cast<int>(std::ceil(-a));
  double base_a = a + steps;
  double value = base_a == 0.0 ? static_cast<double>(boost::math::expint(1, x))
                               : boost::math::tgamma(base_a, x);
  for (int k = steps - 1; k >= 0; --k) {
    double ak = a + k;
    value = (value - std::exp(ak * std::log(x) - x)) / ak;
  }
  return value;
}

double integrate(const Integrand& f, double a, double b,
                 const QuadratureSpec& spec) {
  spec.validate();
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw ValidationError("integrate needs finite bounds");
  }
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, spec);

  std::priority_queue<Segment> heap;
  Segment first = kronrod(f, a, b);
  double total = first.value;
  double error = first.error;
  heap.push(first);
  double frozen_error = 0.0;
  int segments = 1;

  while (error + frozen_error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    if (heap.empty()) break;
    if (segments >= spec.max_subdivisions) {
      throw ConvergenceError("quadrature did not converge within " +
                             std::to_string(spec.max_subdivisions) +
                             " subdivisions");
    }
    Segment worst = heap.top();
    heap.pop();
    double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        worst.b - worst.a < 64 * std::numeric_limits<double>::epsilon() *
                                 std::max(std::abs(worst.a), std::abs(worst.b))) {
      // Cannot split further; keep its estimate.
      error -= worst.error;
      frozen_error += worst.error;
      continue;
    }
    Segment left = kronrod(f, worst.a, mid);
    Segment right = kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++segments;
  }
  if (frozen_error > std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
    throw ConvergenceError("quadrature hit the floating point resolution limit");
  }
  return total;
}

double integrate_semi_infinite(const Integrand& f, double lower,
                               const QuadratureSpec& spec) {
  auto mapped = [&](double u) {
    double one_minus = 1.0 - u;
    double x = lower + u / one_minus;
    double fx = f(x);
    if (fx == 0.0) return 0.0;
    return fx / (one_minus * one_minus);
  };
  return integrate(mapped, 0.0, 1.0, spec);
}

double integrate_semi_infinite_log(const Integrand& f, double lower,
                                   const QuadratureSpec& spec) {
  auto mapped = [&](double t) {
    double grow = std::expm1(t);
    double x = lower + grow;
    if (!std::isfinite(x)) return 0.0;
    double fx = f(x);
    if (fx == 0.0) return 0.0;
    double value = fx * (grow + 1.0);
    return std::isfinite(value) ? value : 0.0;
  };
  return integrate_semi_infinite(mapped, 0.0, spec);
}

double integrate_positive_axis(const Integrand& f, const QuadratureSpec& spec) {
  // Upper half: heavy tails; lower half: w = e^{-z} resolves power singularities.
  double upper = integrate_semi_infinite_log(f, 1.0, spec);
  auto lower_part = [&](double z) {
    double w = std::exp(-z);
    if (w == 0.0) return 0.0;
    double fw = f(w);
    if (fw == 0.0) return 0.0;
    return fw * w;
  };
  double lower = integrate_semi_infinite(lower_part, 0.0, spec);
  return upper + lower;
}

double invert_monotone(const Integrand& f, double target, double hi_bracket) {
  if (!(hi_bracket > 0.0) || !std::isfinite(hi_bracket)) {
    throw BracketError("bracket must be positive and finite");
  }
  double f_lo = f(0.0);
  double f_hi = f(hi_bracket);
  if (!(f_hi <= target && target <= f_lo)) {
    throw BracketError("target " + std::to_string(target) +
                       " is not bracketed by [f(hi), f(0)] = [" +
                       std::to_string(f_hi) + ", " + std::to_string(f_lo) + "]");
  }
  double lo = 0.0;
  double hi = hi_bracket;
  for (int i = 0; i < 2000 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f(mid) <= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace graphex
