#pragma once

// Time-averaged densities of the Kepler-orbit ensemble sharing (E_n, L, L_z).
// Same units as the quantum side. Densities are defined on the open support;
// at or beyond a turning point they return 0, never infinity.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "orbitwave/quadrature.hpp"
#include "orbitwave/quantum.hpp"

namespace orbitwave {

enum class Branch { first = 1, second = 2 };

/// Derived classical quantities of the (n, l, |m|) orbit ensemble.
/// Angular fields (tau, alpha, ...) are NaN for l = 0.
struct OrbitEnsembleParams {
  QuantumNumbers qn{1, 0, 0};
  int m = 0;                 // |m|
  double ell_sq = 0.0;       // l(l+1)
  double ell = 0.0;
  double eccentricity = 1.0;
  double semi_latus = 0.0;   // ell^2
  double semi_major = 1.0;   // n^2
  double r_peri = 0.0;
  double r_apo = 2.0;
  double period = 2.0 * std::numbers::pi;
  double tau = std::numeric_limits<double>::quiet_NaN();
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double cos_alpha = std::numeric_limits<double>::quiet_NaN();
  double sin_alpha = std::numeric_limits<double>::quiet_NaN();
  double theta_min = std::numeric_limits<double>::quiet_NaN();

  int n() const { return qn.n(); }
  int l() const { return qn.l(); }
  bool has_angular() const { return qn.l() >= 1; }
  double support_width() const { return r_apo - r_peri; }
};

namespace classical {

inline OrbitEnsembleParams make_params(const QuantumNumbers& qn) {
  OrbitEnsembleParams p;
  p.qn = qn;
  p.m = qn.abs_m();
  const long long n = qn.n();
  const long long l = qn.l();
  const long long ell_sq = l * (l + 1);
  const double n_sq = static_cast<double>(n * n);

  p.ell_sq = static_cast<double>(ell_sq);
  p.ell = std::sqrt(p.ell_sq);
  // n^2 - l(l+1) is an exact integer, so eps = 2/3 for (6, 4) rounds correctly.
  p.eccentricity = std::sqrt(static_cast<double>(n * n - ell_sq)) / static_cast<double>(n);
  p.semi_latus = p.ell_sq;
  p.semi_major = n_sq;
  // r_peri = ell^2 / (1 + eps) has no cancellation even when eps -> 1; the
  // outer apsis is its complement, so the apsides sum to 2n^2 in floating point.
  p.r_peri = p.ell_sq / (1.0 + p.eccentricity);
  p.r_apo = 2.0 * n_sq - p.r_peri;
  p.period = 2.0 * std::numbers::pi * n_sq * static_cast<double>(n);

  if (l >= 1) {
    const long long m = p.m;
    if (m * m >= ell_sq) throw std::logic_error("make_params: m^2 >= l(l+1)");
    p.cos_alpha = static_cast<double>(m) / p.ell;
    p.sin_alpha = std::sqrt(static_cast<double>(ell_sq - m * m) / p.ell_sq);
    p.alpha = std::acos(p.cos_alpha);
    p.tau = p.eccentricity / p.sin_alpha;
    p.theta_min = std::asin(p.cos_alpha);
  }
  return p;
}

namespace detail {

/// Radial density given the apsis distances below = r - r_peri and
/// above = r_apo - r. With ell^2 = r_peri r_apo / n^2 and
/// 2/r - 1/n^2 = (above + r_peri) / (r n^2), the arc-length form becomes
///   sqrt(1 + r_peri r_apo / (below above)) / (pi n^3 sqrt((above + r_peri) / (r n^2))),
/// which needs no subtraction of nearly equal terms near either apsis.
inline double radial_density_split(const OrbitEnsembleParams& p, double r, double below, double above) {
  if (!(below > 0.0 && above > 0.0)) return 0.0;
  const double nd = p.n();
  const double arc = std::sqrt(1.0 + p.r_peri * p.r_apo / (below * above));
  const double speed = std::sqrt((above + p.r_peri) / (r * p.semi_major));
  return arc / (std::numbers::pi * nd * nd * nd * speed);
}

}  // namespace detail

/// l = 0 radial density (straight-line fall): 1 / (pi n^3 sqrt(2/r - 1/n^2)).
inline double radial_density_l0(int n, double r) {
  if (!(r > 0.0)) throw std::domain_error("radial_density_l0: r must be > 0");
  const double a = static_cast<double>(n) * n;
  if (r >= 2.0 * a) return 0.0;
  // 2/r - 1/n^2 = (2 n^2 - r) / (r n^2)
  return 1.0 / (std::numbers::pi * a * n * std::sqrt((2.0 * a - r) / (r * a)));
}

/// Radial density of the ensemble from the arc-length form
///   sqrt(1 + ell^4 / (r^2 [eps^2 - (1 - ell^2/r)^2])) / (pi n^3 sqrt(2/r - 1/n^2)),
/// evaluated through the apsis distances (see detail::radial_density_split).
inline double radial_density(const OrbitEnsembleParams& p, double r) {
  if (!(r > 0.0)) throw std::domain_error("radial_density: r must be > 0");
  if (p.l() == 0) return radial_density_l0(p.n(), r);
  if (!(r > p.r_peri && r < p.r_apo)) return 0.0;
  return detail::radial_density_split(p, r, r - p.r_peri, p.r_apo - r);
}

/// Same density through the eccentric anomaly u, r = n^2 (1 - eps cos u):
///   p dr = (1 - eps cos u) du / pi.
inline double radial_density_eccentric(const OrbitEnsembleParams& p, double r) {
  if (!(r > 0.0)) throw std::domain_error("radial_density_eccentric: r must be > 0");
  if (!(r > p.r_peri && r < p.r_apo)) return 0.0;
  const double weight = r / p.semi_major;  // 1 - eps cos u
  // n^2 eps sin u = sqrt((r - r_peri)(r_apo - r))
  const double dr_du = std::sqrt((r - p.r_peri) * (p.r_apo - r));
  return weight / (std::numbers::pi * dr_du);
}

/// Eccentric anomaly u in [0, pi] of radius r (clamped to the support), from
/// tan(u/2) = sqrt((r - r_peri) / (r_apo - r)) so both apsides map exactly.
inline double eccentric_anomaly(const OrbitEnsembleParams& p, double r) {
  const double below = std::max(r - p.r_peri, 0.0);
  const double above = std::max(p.r_apo - r, 0.0);
  return 2.0 * std::atan2(std::sqrt(below), std::sqrt(above));
}

/// Fraction of the period spent below radius r: (u - eps sin u) / pi.
inline double radial_cdf(const OrbitEnsembleParams& p, double r) {
  if (r <= p.r_peri) return 0.0;
  if (r >= p.r_apo) return 1.0;
  const double u = eccentric_anomaly(p, r);
  return (u - p.eccentricity * std::sin(u)) / std::numbers::pi;
}

/// Integral of radial_density over [lo, hi], by quadrature in u so no node
/// lands on a singular apsis. The apsis distances come from half-angle forms
/// r - r_peri = 2 n^2 eps sin^2(u/2), r_apo - r = 2 n^2 eps cos^2(u/2).
inline double radial_mass(const OrbitEnsembleParams& p, double lo, double hi) {
  lo = std::max(lo, p.r_peri);
  hi = std::min(hi, p.r_apo);
  if (!(hi > lo)) return 0.0;
  const double u_lo = eccentric_anomaly(p, lo);
  const double u_hi = eccentric_anomaly(p, hi);
  const double a2e = p.semi_major * p.eccentricity;
  auto integrand = [&](double u) {
    const double r = p.semi_major * (1.0 - p.eccentricity * std::cos(u));
    if (!(r > 0.0)) return 0.0;
    const double s = std::sin(0.5 * u);
    const double c = std::cos(0.5 * u);
    return detail::radial_density_split(p, r, 2.0 * a2e * s * s, 2.0 * a2e * c * c) * a2e * std::sin(u);
  };
  return quadrature::integrate(integrand, u_lo, u_hi, 4, 1e-13);
}

namespace detail {

/// Branch density given cos(theta), sin(theta) and the band gap
/// sin^2(alpha) - cos^2(theta), which callers may know more accurately than
/// the subtraction would give.
inline double angular_density_branch_split(const OrbitEnsembleParams& p, double c, double s, double gap,
                                           Branch branch) {
  if (!(gap > 0.0)) return 0.0;
  const double q = branch == Branch::first ? 1.0 - p.tau * c : 1.0 + p.tau * c;
  const double nd = p.n();
  const double speed = std::sqrt(2.0 * q / p.ell_sq - 1.0 / (nd * nd));
  const double arc = std::sqrt(p.tau * p.tau + q * q / gap);
  return arc / (std::numbers::pi * nd * nd * nd * speed) * p.ell_sq * s / (q * q);
}

inline double angular_density_split(const OrbitEnsembleParams& p, double c, double s, double gap) {
  return 0.5 * (angular_density_branch_split(p, c, s, gap, Branch::first) +
                angular_density_branch_split(p, c, s, gap, Branch::second));
}

}  // namespace detail

/// One orbit family's angular density: branch 1 for r = p/(1 - eps cos g),
/// branch 2 for r = p/(1 + eps cos g).
inline double angular_density_branch(const OrbitEnsembleParams& p, double theta, Branch branch) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi))
    throw std::domain_error("angular_density_branch: theta outside [0, pi]");
  if (!p.has_angular()) throw std::domain_error("angular_density_branch: undefined for l = 0");
  const double c = std::cos(theta);
  const double gap = (p.sin_alpha - c) * (p.sin_alpha + c);  // 1 - m^2/ell^2 - cos^2
  return detail::angular_density_branch_split(p, c, std::sin(theta), gap, branch);
}

/// Mean of the two branches. For l = 0 the ensemble is taken isotropic,
/// sin(theta)/2 (a convention, matching the quantum l = 0 result).
inline double angular_density(const OrbitEnsembleParams& p, double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi))
    throw std::domain_error("angular_density: theta outside [0, pi]");
  if (!p.has_angular()) return 0.5 * std::sin(theta);
  const double c = std::cos(theta);
  return detail::angular_density_split(p, c, std::sin(theta), (p.sin_alpha - c) * (p.sin_alpha + c));
}

/// Integral of angular_density over [lo, hi]. Uses the in-plane angle g with
/// cos(theta) = sin(alpha) cos(g), whose Jacobian cancels the edge singularity.
inline double angular_mass(const OrbitEnsembleParams& p, double lo, double hi) {
  lo = std::clamp(lo, 0.0, std::numbers::pi);
  hi = std::clamp(hi, 0.0, std::numbers::pi);
  if (!(hi > lo)) return 0.0;
  if (!p.has_angular()) return 0.5 * (std::cos(lo) - std::cos(hi));
  auto to_g = [&](double theta) {
    return std::acos(std::clamp(std::cos(theta) / p.sin_alpha, -1.0, 1.0));
  };
  const double g_lo = to_g(lo);
  const double g_hi = to_g(hi);
  if (!(g_hi > g_lo)) return 0.0;
  auto integrand = [&](double g) {
    const double c = p.sin_alpha * std::cos(g);
    const double s = std::sqrt((1.0 - c) * (1.0 + c));
    const double sg = p.sin_alpha * std::sin(g);  // sqrt of the band gap
    return detail::angular_density_split(p, c, s, sg * sg) * sg / s;
  };
  return quadrature::integrate(integrand, g_lo, g_hi, 4, 1e-13);
}

/// Product ansatz for the 3D density, in a^-3:
///   p_c(r) p_c(theta) / (2 pi r^2 sin theta).
/// Its r- and theta-marginals are radial_density and angular_density.
inline double density3d_product(const OrbitEnsembleParams& p, double r, double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi))
    throw std::domain_error("density3d_product: theta outside [0, pi]");
  if (!(r > 0.0)) return 0.0;
  const double s = std::sin(theta);
  if (!(s > 0.0)) return 0.0;
  const double pr = radial_density(p, r);
  if (pr == 0.0) return 0.0;
  const double pt = angular_density(p, theta);
  if (pt == 0.0) return 0.0;
  return pr * pt / (2.0 * std::numbers::pi * r * r * s);
}

/// Oscillator at energy n + 1/2: 1 / (pi sqrt(2E - x^2)) inside the turning points.
inline double oscillator_density(int n, double x) {
  if (n < 0) throw std::domain_error("oscillator_density: negative level");
  const double two_e = 2.0 * n + 1.0;
  const double gap = two_e - x * x;
  if (!(gap > 0.0)) return 0.0;
  return 1.0 / (std::numbers::pi * std::sqrt(gap));
}

}  // namespace classical
}  // namespace orbitwave
