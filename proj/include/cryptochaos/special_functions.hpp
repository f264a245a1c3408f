#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "cryptochaos/error.hpp"

namespace cryptochaos::special {

// Series and continued fraction are iterated to 1e-15, well inside the 1e-12
// relative accuracy the p-values need.
inline constexpr double kIterationEps = 1e-15;

namespace detail {

inline constexpr int kMaxIterations = 100000;

inline double log_prefactor(double a, double x) { return -x + a * std::log(x) - std::lgamma(a); }

// Lower regularized gamma P(a, x) by its power series; converges fast for x < a + 1.
inline double gamma_p_series(double a, double x) {
  double ap = a;
  double del = 1.0 / a;
  double sum = del;
  for (int n = 0; n < kMaxIterations; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * kIterationEps) break;
  }
  return sum * std::exp(log_prefactor(a, x));
}

// Upper regularized gamma Q(a, x) by modified Lentz continued fraction; for x >= a + 1.
inline double gamma_q_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIterations; ++i) {
    double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kIterationEps) break;
  }
  return std::exp(log_prefactor(a, x)) * h;
}

}  // namespace detail

/// Upper regularized incomplete gamma function Q(a, x) = Gamma(a, x) / Gamma(a).
inline double igamc(double a, double x) {
  require(a > 0.0, "igamc requires a > 0");
  require(x >= 0.0, "igamc requires x >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  double q = x < a + 1.0 ? 1.0 - detail::gamma_p_series(a, x) : detail::gamma_q_fraction(a, x);
  return std::clamp(q, 0.0, 1.0);
}

/// Lower regularized incomplete gamma function P(a, x).
inline double igam(double a, double x) { return 1.0 - igamc(a, x); }

inline double erfc(double x) { return std::erfc(x); }

}  // namespace cryptochaos::special
