#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "orbitwave/analysis.hpp"

namespace ow = orbitwave;
namespace an = orbitwave::analysis;
namespace cl = orbitwave::classical;

namespace {


ow::DensityCurve radial_q(int n, int l, int points = ow::kDefaultGridPoints) {
  return an::quantum_radial_curve({n, l, 0}, ow::uniform_grid(0.0, ow::default_radial_extent(n), points));
}

}  // namespace

TEST(DensityCurve, Validation) {
  EXPECT_THROW(ow::DensityCurve({0.0, 1.0}, {1.0}, ow::CurveKind::quantum, {}), std::invalid_argument);
  EXPECT_THROW(ow::DensityCurve({0.0}, {1.0}, ow::CurveKind::quantum, {}), std::invalid_argument);
  EXPECT_THROW(ow::DensityCurve({0.0, 0.0}, {1.0, 1.0}, ow::CurveKind::quantum, {}), std::invalid_argument);
  EXPECT_THROW(ow::DensityCurve({0.0, 1.0}, {1.0, -1e-3}, ow::CurveKind::quantum, {}), std::invalid_argument);
  EXPECT_THROW(ow::DensityCurve({0.0, 1.0}, {1.0, NAN}, ow::CurveKind::quantum, {}), std::invalid_argument);
  const ow::DensityCurve ok({0.0, 1.0, 2.0}, {0.5, 0.5, 0.5}, ow::CurveKind::quantum, {});
  EXPECT_DOUBLE_EQ(ok.integral(), 1.0);
  EXPECT_FALSE(ok.normalization_flagged());
  EXPECT_DOUBLE_EQ(ok.at(0.5), 0.5);
  EXPECT_EQ(ok.at(-1.0), 0.0);
  const ow::DensityCurve drift({0.0, 1.0}, {1.1, 1.1}, ow::CurveKind::quantum, {});
  EXPECT_TRUE(drift.normalization_flagged());
}

TEST(Rational, Parse) {
  const auto half = ow::Rational::parse("1/2");
  EXPECT_EQ(half.num, 1);
  EXPECT_EQ(half.den, 2);
  EXPECT_EQ(ow::Rational::parse("2/4").str(), "1/2");
  EXPECT_EQ(ow::Rational::parse("0").str(), "0");
  EXPECT_EQ(half.times(10), 5);
  EXPECT_FALSE(half.times(7).has_value());
  for (const char* bad : {"", "1/", "/2", "1/0", "-1/2", "a", "1/2x", "1.5"})
    EXPECT_THROW(ow::Rational::parse(bad), std::invalid_argument) << bad;
}

TEST(Smooth, ConstantIsFixedPoint) {
  const auto p = cl::make_params({10, 5, 0});
  const auto grid = ow::uniform_grid(0.0, ow::default_radial_extent(10), 2000);
  const ow::DensityCurve c(grid, std::vector<double>(grid.size(), 0.25), ow::CurveKind::classical, {}, false);
  const auto s = an::smooth(c, p);
  for (double v : s.values()) ASSERT_NEAR(v, 0.25, 1e-12);
}

TEST(Smooth, RejectsNonUniformGrid) {
  const auto p = cl::make_params({10, 5, 0});
  const ow::DensityCurve c({0.0, 1.0, 3.0}, {0.1, 0.2, 0.1}, ow::CurveKind::quantum, {}, false);
  EXPECT_THROW(an::smooth(c, p), std::invalid_argument);
}

TEST(Smooth, PreservesMassAndSignProperty) {
  std::mt19937_64 eng(37);
  for (int i = 0; i < 12; ++i) {
    const int n = 2 + static_cast<int>(eng() % 80);
    const int l = static_cast<int>(eng() % static_cast<unsigned>(n));
    const auto q = radial_q(n, l, 1500 + static_cast<int>(eng() % 2500));
    const auto s = an::smooth(q, cl::make_params({n, l, 0}));
    EXPECT_NEAR(s.integral(), q.integral(), 1e-6) << n << "," << l;
    for (double v : s.values()) ASSERT_GE(v, 0.0);
  }
}

TEST(Smooth, ReducesDistanceToClassical) {
  const auto p = cl::make_params({50, 25, 0});
  const auto q = radial_q(50, 25);
  const auto c = an::classical_radial_curve(p, q.grid());
  const auto s = an::smooth(q, p);
  const auto win = an::radial_window(p);
  EXPECT_LT(an::l1_distance(s, c, win), an::l1_distance(q, c, win));
}

TEST(Distance, MetricProperties) {
  const auto a = radial_q(10, 0, 3000);
  const auto b = radial_q(10, 5, 3000);
  EXPECT_EQ(an::l1_distance(a, a), 0.0);
  EXPECT_EQ(an::linf_distance(a, a), 0.0);
  EXPECT_EQ(an::l1_distance(a, b), an::l1_distance(b, a));
  EXPECT_LE(an::l1_distance(a, b), 2.0);
  EXPECT_GT(an::l1_distance(a, b), 0.0);
  const ow::DensityCurve far({1e6, 1e6 + 1}, {1.0, 1.0}, ow::CurveKind::quantum, {});
  EXPECT_THROW(an::l1_distance(a, far), std::invalid_argument);
}

TEST(Distance, ResamplesOtherGrid) {
  const ow::DensityCurve f({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0}, ow::CurveKind::quantum, {});
  const ow::DensityCurve g({0.0, 2.0}, {0.0, 0.0}, ow::CurveKind::quantum, {});
  EXPECT_DOUBLE_EQ(an::l1_distance(f, g), 1.0);
  EXPECT_DOUBLE_EQ(an::l1_distance(f, g, ow::Window{0.0, 1.0}), 0.5);
}

TEST(Envelope, HydrogenLZero) {
  const auto rep = an::envelope_check({50, 0, 0});
  ASSERT_FALSE(rep.ratios.empty());
  EXPECT_GE(rep.mean_ratio, 0.85);
  EXPECT_LE(rep.mean_ratio, 1.05);
  EXPECT_LE(rep.max_ratio, 1.10);
}

TEST(Envelope, SmallNIsReportedOnly) {
  const auto rep = an::envelope_check({10, 0, 0});
  RecordProperty("n10_mean_ratio", std::to_string(rep.mean_ratio));
  RecordProperty("n10_max_ratio", std::to_string(rep.max_ratio));
  EXPECT_FALSE(rep.ratios.empty());
}

TEST(Envelope, SelfRatioIsExactlyHalf) {
  auto f = [](double x) { return 1.5 + std::cos(x); };
  const auto rep = an::envelope_ratios(f, f, ow::uniform_grid(0.0, 40.0, 4001), ow::Window{0.0, 40.0});
  ASSERT_EQ(rep.ratios.size(), 6u);
  for (double r : rep.ratios) EXPECT_EQ(r, 0.5);
}

TEST(MassInSupport, LZero) {
  const double m10 = an::mass_in_support(ow::QuantumNumbers{10, 0, 0});
  EXPECT_GT(m10, 0.8);
  EXPECT_LT(m10, 1.0);
  const double m50 = an::mass_in_support(ow::QuantumNumbers{50, 0, 0});
  const double m100 = an::mass_in_support(ow::QuantumNumbers{100, 0, 0});
  EXPECT_TRUE(an::strictly_increasing({m10, m50, m100})) << m10 << " " << m50 << " " << m100;
}

TEST(MassInSupport, ClassicalCurveIsOne) {
  const auto p = cl::make_params({20, 7, 0});
  const auto c = an::classical_radial_curve(p, ow::uniform_grid(0.0, ow::default_radial_extent(20), 4000));
  EXPECT_EQ(an::mass_in_support(c, ow::Window{p.r_peri, p.r_apo}), 1.0);
}

TEST(Convergence, SingleEntry) {
  const auto rows = an::convergence_study(ow::Rational::parse("1/2"), std::nullopt, {10});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].qn.l(), 5);
  EXPECT_FALSE(rows[0].angular.has_value());
}

TEST(Convergence, RejectsNonIntegerStates) {
  try {
    an::convergence_study(ow::Rational::parse("1/3"), std::nullopt, {9, 10});
    FAIL() << "expected rejection";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("n=10"), std::string::npos) << e.what();
  }
  EXPECT_THROW(an::convergence_study(ow::Rational::parse("1"), std::nullopt, {10}), std::invalid_argument);
}

TEST(Convergence, RadialHalfRatioDecreases) {
  const auto rows = an::convergence_study(ow::Rational::parse("1/2"), std::nullopt, {10, 50, 100});
  std::vector<double> l1;
  for (const auto& r : rows) l1.push_back(r.radial.l1);
  EXPECT_TRUE(an::strictly_decreasing(l1)) << l1[0] << " " << l1[1] << " " << l1[2];
}

TEST(Convergence, RadialLZeroDecreases) {
  const auto rows = an::convergence_study(ow::Rational::parse("0"), std::nullopt, {10, 50, 100});
  std::vector<double> l1;
  for (const auto& r : rows) l1.push_back(r.radial.l1);
  EXPECT_TRUE(an::strictly_decreasing(l1)) << l1[0] << " " << l1[1] << " " << l1[2];
}

TEST(Convergence, AngularFixedRatiosDecrease) {
  const auto rows =
      an::convergence_study(ow::Rational::parse("1/2"), ow::Rational::parse("1/5"), {10, 100, 200}, 4000);
  std::vector<double> l1;
  for (const auto& r : rows) {
    ASSERT_TRUE(r.angular.has_value());
    l1.push_back(r.angular->l1);
  }
  EXPECT_TRUE(an::strictly_decreasing(l1)) << l1[0] << " " << l1[1] << " " << l1[2];
}

TEST(PeakAlignment, ApsidesEmergeAtHighN) {
  const ow::QuantumNumbers qn(100, 50, 0);
  const auto al = an::apsis_alignment(qn, radial_q(100, 50));
  ASSERT_EQ(al.size(), 2u);
  EXPECT_LT(std::abs(al[0].offset), 0.02) << "inner " << al[0].offset;
  EXPECT_LT(std::abs(al[1].offset), 0.02) << "outer " << al[1].offset;
}

TEST(SingularLimit, DistanceDecreasesAndOriginDiffers) {
  const auto rep = an::singular_limit_study({5, 10, 20, 40});
  ASSERT_EQ(rep.rows.size(), 4u);
  EXPECT_TRUE(rep.decreasing);
  EXPECT_LT(rep.rows[2].relative_l2, rep.rows[0].relative_l2);
  for (const auto& row : rep.rows) {
    EXPECT_EQ(row.r_n1_at_origin, 0.0) << row.n;
    EXPECT_NE(row.r_n0_at_origin, 0.0) << row.n;
    EXPECT_NE(row.sign_n0_at_peak, 0) << row.n;
    EXPECT_NE(row.sign_n1_at_peak, 0) << row.n;
    EXPECT_GT(row.peak_radius, 1.5 * row.n * row.n) << row.n;
  }
  EXPECT_GT(rep.angular_l1_vs_isotropic, 0.0);
  EXPECT_THROW(an::singular_limit_study({1, 5}), std::invalid_argument);
  EXPECT_THROW(an::singular_limit_study({}), std::invalid_argument);
}

TEST(LastTerm, SingleTermForGroundState) {
  for (double r : {0.01, 0.5, 2.0, 30.0}) {
    EXPECT_NEAR(an::last_term_approx(1, r), 2.0 * std::exp(-r), 1e-14 * 2.0 * std::exp(-r)) << r;
    EXPECT_LT(an::last_term_relative_error(1, r), 1e-13) << r;
  }
  EXPECT_THROW(an::last_term_approx(0, 1.0), std::domain_error);
  EXPECT_THROW(an::last_term_approx(3, 0.0), std::domain_error);
}

TEST(LastTerm, StrictlyPositiveProperty) {
  std::mt19937_64 eng(41);
  for (int i = 0; i < 2000; ++i) {
    const int n = 1 + static_cast<int>(eng() % 150);
    const double r = std::uniform_real_distribution<double>(1e-6, 3.0 * n * n)(eng);
    ASSERT_GT(an::last_term_approx(n, r), 0.0) << n << " " << r;
  }
}

TEST(LastTerm, ErrorDecreasesFromTenToFifty) {
  const double e10 = an::last_term_relative_error(10, 1.8 * 100);
  const double e50 = an::last_term_relative_error(50, 1.8 * 2500);
  EXPECT_LT(e50, e10) << "n=10: " << e10 << "  n=50: " << e50;
}
