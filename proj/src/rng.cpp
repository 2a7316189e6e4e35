#include "graphex/rng.hpp"

#include <algorithm>
#include <cmath>

#include "graphex/errors.hpp"

namespace graphex {

namespace {

__extension__ using u128 = unsigned __int128;

}  // namespace

std::uint64_t CounterStream::below(std::uint64_t n) {
  if (n <= 1) return 0;
  // Lemire's multiply-shift with rejection.
  u128 m = static_cast<u128>(next_u64()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      m = static_cast<u128>(next_u64()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double CounterStream::normal() {
  double u1 = uniform();
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double CounterStream::exponential() { return -std::log(uniform()); }

double CounterStream::poisson(double mean) {
  if (!(mean >= 0.0) || std::isinf(mean)) {
    throw ValidationError("Poisson mean must be finite and non-negative");
  }
  if (mean == 0.0) return 0.0;
  if (mean < 10.0) {
    // Sequential inversion.
    double u = uniform();
    double p = std::exp(-mean);
    double cdf = p;
    double k = 0.0;
    while (u > cdf && k < 1000.0) {
      k += 1.0;
      p *= mean / k;
      cdf += p;
      if (p == 0.0) break;
    }
    return k;
  }
  if (mean > 1e15) {
    return std::max(0.0, std::round(mean + std::sqrt(mean) * normal()));
  }
  // PTRS, Hoermann (1993).
  double slam = std::sqrt(mean);
  double loglam = std::log(mean);
  double b = 0.931 + 2.53 * slam;
  double a = -0.059 + 0.02483 * b;
  double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    double u = uniform() - 0.5;
    double v = uniform();
    double us = 0.5 - std::abs(u);
    double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return k;
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - std::lgamma(k + 1.0)) {
      return k;
    }
  }
}

}  // namespace graphex
