#pragma once

// Orthogonal polynomials and factorial helpers evaluated by three-term
// recurrences with power-of-two rescaling. Valid to degree ~1000.

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "orbitwave/log_scaled.hpp"

namespace orbitwave::specfun {

namespace detail {

inline constexpr int kLogFactorialTableSize = 1024;

inline const std::array<double, kLogFactorialTableSize>& log_factorial_table() {
  static const auto table = [] {
    std::array<double, kLogFactorialTableSize> t{};
    long double acc = 0.0L;
    t[0] = 0.0;
    for (int k = 1; k < kLogFactorialTableSize; ++k) {
      acc += std::log(static_cast<long double>(k));
      t[k] = static_cast<double>(acc);
    }
    return t;
  }();
  return table;
}

}  // namespace detail

/// ln(k!). Table lookup below 1024, Stirling series above.
inline double log_factorial(int k) {
  if (k < 0) throw std::domain_error("log_factorial: negative argument");
  if (k < detail::kLogFactorialTableSize) return detail::log_factorial_table()[k];
  const double x = static_cast<double>(k) + 1.0;
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double series = inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)));
  return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

/// Generalized Laguerre polynomial L_k^alpha(x) by ascending recurrence.
inline double laguerre(int k, double alpha, double x) {
  if (k < 0) throw std::domain_error("laguerre: negative degree");
  if (k == 0) return 1.0;
  double prev = 1.0;
  double curr = 1.0 + alpha - x;
  for (int j = 1; j < k; ++j) {
    const double next = ((2.0 * j + 1.0 + alpha - x) * curr - (j + alpha) * prev) / (j + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

/// Same recurrence as laguerre() carried with a shared binary exponent, so it
/// never overflows. Agrees bit-for-bit with laguerre() while that is finite.
inline LogScaledValue laguerre_log(int k, double alpha, double x) {
  if (k < 0) throw std::domain_error("laguerre_log: negative degree");
  if (k == 0) return LogScaledValue::from_real(1.0);
  orbitwave::detail::ScaledPair s{1.0, 1.0 + alpha - x, 0};
  for (int j = 1; j < k; ++j) {
    const double next = ((2.0 * j + 1.0 + alpha - x) * s.curr - (j + alpha) * s.prev) / (j + 1.0);
    s.prev = s.curr;
    s.curr = next;
    s.renormalize();
  }
  return s.value();
}

/// Fully normalized associated Legendre function
///   sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!) P_l^m(x)
/// with the Condon-Shortley phase, in scaled form. The diagonal seed
/// (1-x^2)^(m/2) lives in the exponent, so high orders near the poles do not
/// underflow before the l-recurrence has a chance to grow them.
inline LogScaledValue assoc_legendre_normalized_log(int l, int m, double x) {
  if (m < 0 || m > l) throw std::domain_error("assoc_legendre_normalized: need 0 <= m <= l");
  if (!(std::abs(x) <= 1.0)) throw std::domain_error("assoc_legendre_normalized: |x| > 1");

  // prod_{i=1..m} (2i-1)/(2i) ~ 1/sqrt(pi m): no under/overflow for any sane m.
  double prod = 1.0;
  for (int i = 1; i <= m; ++i) prod *= (2.0 * i - 1.0) / (2.0 * i);
  const double amp = std::sqrt((2.0 * m + 1.0) / (4.0 * std::numbers::pi) * prod);

  LogScaledValue seed = LogScaledValue::from_real(m % 2 == 0 ? amp : -amp);
  if (m > 0) {
    const double one_minus_x2 = (1.0 - x) * (1.0 + x);
    if (one_minus_x2 == 0.0) return LogScaledValue::zero();
    seed *= LogScaledValue::from_log(1, 0.5 * m * std::log(one_minus_x2));
  }
  if (l == m) return seed;

  orbitwave::detail::ScaledPair s{seed.mantissa(), 0.0, seed.exponent()};
  double prev_factor = std::sqrt(2.0 * m + 3.0);
  s.curr = x * prev_factor * s.prev;
  for (int ll = m + 2; ll <= l; ++ll) {
    const double factor =
        std::sqrt((4.0 * ll * ll - 1.0) / (static_cast<double>(ll) * ll - static_cast<double>(m) * m));
    const double next = (x * s.curr - s.prev / prev_factor) * factor;
    prev_factor = factor;
    s.prev = s.curr;
    s.curr = next;
    s.renormalize();
  }
  return s.value();
}

inline double assoc_legendre_normalized(int l, int m, double x) {
  return assoc_legendre_normalized_log(l, m, x).to_real();
}

/// Physicists' Hermite polynomial H_n(x) in scaled form.
inline LogScaledValue hermite_log(int n, double x) {
  if (n < 0) throw std::domain_error("hermite_log: negative degree");
  if (n == 0) return LogScaledValue::from_real(1.0);
  orbitwave::detail::ScaledPair s{1.0, 2.0 * x, 0};
  for (int j = 1; j < n; ++j) {
    const double next = 2.0 * x * s.curr - 2.0 * j * s.prev;
    s.prev = s.curr;
    s.curr = next;
    s.renormalize();
  }
  return s.value();
}

}  // namespace orbitwave::specfun
