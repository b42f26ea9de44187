#include <cmath>
#include <limits>
#include <random>

#include <gtest/gtest.h>

#include "orbitwave/log_scaled.hpp"

using orbitwave::LogScaledValue;

TEST(LogScaled, ZeroHasSignZero) {
  const auto z = LogScaledValue::zero();
  EXPECT_EQ(z.sign(), 0);
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.to_real(), 0.0);
  EXPECT_EQ(LogScaledValue::from_real(0.0).sign(), 0);
  EXPECT_EQ(LogScaledValue::from_real(-0.0).sign(), 0);
}

TEST(LogScaled, RejectsNonFinite) {
  EXPECT_THROW(LogScaledValue::from_real(std::numeric_limits<double>::infinity()), std::domain_error);
  EXPECT_THROW(LogScaledValue::from_real(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
}

TEST(LogScaled, RoundTripIsExactAcrossTheDoubleRange) {
  std::mt19937_64 eng(7);
  std::uniform_real_distribution<double> mant(0.5, 1.0);
  std::uniform_int_distribution<int> ex(-1070, 1023);
  for (int i = 0; i < 100000; ++i) {
    const double x = (eng() & 1 ? -1.0 : 1.0) * std::ldexp(mant(eng), ex(eng));
    const auto v = LogScaledValue::from_real(x);
    ASSERT_EQ(v.to_real(), x) << x;
    ASSERT_EQ(v.sign(), x > 0 ? 1 : -1);
  }
  const double denorm = std::numeric_limits<double>::denorm_min();
  EXPECT_EQ(LogScaledValue::from_real(denorm).to_real(), denorm);
  EXPECT_EQ(LogScaledValue::from_real(std::numeric_limits<double>::max()).to_real(),
            std::numeric_limits<double>::max());
}

TEST(LogScaled, FromLogMatchesExp) {
  for (double L : {-700.0, -3.5, 0.0, 1e-3, 2.0, 700.0}) {
    const auto v = LogScaledValue::from_log(-1, L);
    EXPECT_EQ(v.sign(), -1);
    EXPECT_NEAR(v.log_abs(), L, 1e-13 * std::max(1.0, std::abs(L)));
    EXPECT_NEAR(v.to_real() / -std::exp(L), 1.0, 1e-13);
  }
}

TEST(LogScaled, ProductsFarOutsideDoubleRange) {
  auto big = LogScaledValue::from_log(1, 5000.0);
  auto tiny = LogScaledValue::from_log(-1, -5000.0);
  auto prod = big * tiny;
  EXPECT_EQ(prod.sign(), -1);
  EXPECT_NEAR(prod.to_real(), -1.0, 1e-12);
  EXPECT_EQ(big.to_real(), HUGE_VAL);
  EXPECT_EQ(tiny.to_real(), -0.0);
  EXPECT_NEAR((big / big).to_real(), 1.0, 1e-15);
  EXPECT_THROW(big / LogScaledValue::zero(), std::domain_error);
}

TEST(LogScaled, MultiplicationMatchesDoubleProperty) {
  std::mt19937_64 eng(11);
  std::uniform_real_distribution<double> d(-1e6, 1e6);
  for (int i = 0; i < 10000; ++i) {
    const double a = d(eng), b = d(eng);
    const double got = (LogScaledValue::from_real(a) * LogScaledValue::from_real(b)).to_real();
    ASSERT_NEAR(got, a * b, 4e-16 * std::abs(a * b));
    const double q = (LogScaledValue::from_real(a) / LogScaledValue::from_real(b)).to_real();
    ASSERT_NEAR(q, a / b, 4e-16 * std::abs(a / b));
  }
}

TEST(LogScaled, AbsAndSquared) {
  const auto v = LogScaledValue::from_real(-3.0);
  EXPECT_EQ(v.abs().to_real(), 3.0);
  EXPECT_EQ(v.squared().to_real(), 9.0);
  EXPECT_EQ(v.squared().sign(), 1);
}

TEST(ScaledPair, RenormalizationKeepsTheValue) {
  orbitwave::detail::ScaledPair s{1e200, 1e250, 0};
  s.renormalize();
  EXPECT_NEAR(s.value().to_real() / 1e250, 1.0, 1e-15);
  EXPECT_LT(std::abs(std::log2(std::abs(s.curr))), 600.0);
}
