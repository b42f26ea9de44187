#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace orbitwave {

/// Overflow-free real number: sign, a mantissa in [0.5, 1) and an unbounded
/// binary exponent. The natural-log magnitude is derived on demand, so
/// from_real/to_real round-trips are exact for every finite double.
class LogScaledValue {
 public:
  constexpr LogScaledValue() = default;

  static LogScaledValue zero() { return {}; }

  static LogScaledValue from_real(double x) {
    if (!std::isfinite(x)) throw std::domain_error("LogScaledValue: non-finite input");
    LogScaledValue v;
    if (x == 0.0) return v;
    int e = 0;
    v.mant_ = std::frexp(x, &e);
    v.exp2_ = e;
    return v;
  }

  /// Builds sign * exp(log_abs). sign = 0 yields zero regardless of log_abs.
  static LogScaledValue from_log(int sign, double log_abs) {
    LogScaledValue v;
    if (sign == 0) return v;
    if (!std::isfinite(log_abs)) {
      if (log_abs < 0) return v;
      throw std::domain_error("LogScaledValue: infinite magnitude");
    }
    const double k = std::floor(log_abs / std::numbers::ln2);
    const double rem = log_abs - k * std::numbers::ln2;
    int e = 0;
    const double m = std::frexp(std::exp(rem), &e);
    v.mant_ = sign > 0 ? m : -m;
    v.exp2_ = static_cast<std::int64_t>(k) + e;
    return v;
  }

  /// mantissa * 2^exponent; used by scaled recurrences.
  static LogScaledValue from_scaled(double mantissa, std::int64_t exponent) {
    LogScaledValue v = from_real(mantissa);
    if (v.mant_ != 0.0) v.exp2_ += exponent;
    return v;
  }

  int sign() const { return (mant_ > 0) - (mant_ < 0); }

  double log_abs() const {
    if (mant_ == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(mant_)) + static_cast<double>(exp2_) * std::numbers::ln2;
  }

  double mantissa() const { return mant_; }
  std::int64_t exponent() const { return exp2_; }

  /// Converts back to a double; overflows to +-inf, underflows to 0.
  double to_real() const {
    if (mant_ == 0.0) return 0.0;
    constexpr std::int64_t lim = 4000;
    if (exp2_ > lim) return mant_ > 0 ? HUGE_VAL : -HUGE_VAL;
    if (exp2_ < -lim) return 0.0;
    return std::ldexp(mant_, static_cast<int>(exp2_));
  }

  LogScaledValue& operator*=(const LogScaledValue& o) {
    if (mant_ == 0.0 || o.mant_ == 0.0) return *this = zero();
    int e = 0;
    mant_ = std::frexp(mant_ * o.mant_, &e);
    exp2_ += o.exp2_ + e;
    return *this;
  }

  LogScaledValue& operator/=(const LogScaledValue& o) {
    if (o.mant_ == 0.0) throw std::domain_error("LogScaledValue: division by zero");
    if (mant_ == 0.0) return *this;
    int e = 0;
    mant_ = std::frexp(mant_ / o.mant_, &e);
    exp2_ += e - o.exp2_;
    return *this;
  }

  friend LogScaledValue operator*(LogScaledValue a, const LogScaledValue& b) { return a *= b; }
  friend LogScaledValue operator/(LogScaledValue a, const LogScaledValue& b) { return a /= b; }

  LogScaledValue abs() const {
    LogScaledValue v = *this;
    v.mant_ = std::abs(v.mant_);
    return v;
  }

  LogScaledValue squared() const { return *this * *this; }

  bool is_zero() const { return mant_ == 0.0; }

 private:
  double mant_ = 0.0;
  std::int64_t exp2_ = 0;
};

namespace detail {

/// Two consecutive terms of a three-term recurrence sharing one binary
/// exponent. Rescaling by powers of two keeps the arithmetic identical to the
/// unscaled recurrence whenever the latter does not overflow.
struct ScaledPair {
  double prev = 0.0;
  double curr = 0.0;
  std::int64_t exp2 = 0;

  void renormalize() {
    const double big = std::max(std::abs(prev), std::abs(curr));
    if (big == 0.0 || !std::isfinite(big)) return;
    int e = 0;
    std::frexp(big, &e);
    if (e > 512 || e < -512) {
      prev = std::ldexp(prev, -e);
      curr = std::ldexp(curr, -e);
      exp2 += e;
    }
  }

  LogScaledValue value() const { return LogScaledValue::from_scaled(curr, exp2); }
};

}  // namespace detail
}  // namespace orbitwave
