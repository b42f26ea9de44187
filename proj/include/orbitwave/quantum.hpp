#pragma once

// Hydrogen eigenstate probability densities in atomic-style units
// (a = hbar = m_e = 1): radii in Bohr radii, densities in a^-1 (radial) or
// a^-3 (3D). Wavefunction factors are multiplied in scaled form and only the
// final density is converted to a double.

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbitwave/log_scaled.hpp"
#include "orbitwave/specfun.hpp"

namespace orbitwave {

/// Validated (n, l, m) triple: 1 <= n, 0 <= l < n, |m| <= l.
class QuantumNumbers {
 public:
  QuantumNumbers(int n, int l, int m) : n_(n), l_(l), m_(m) {
    if (n < 1) throw std::invalid_argument("quantum numbers: n must be >= 1, got " + std::to_string(n));
    if (l < 0 || l > n - 1)
      throw std::invalid_argument("quantum numbers: need 0 <= l <= n-1, got n=" + std::to_string(n) +
                                  " l=" + std::to_string(l));
    if (std::abs(m) > l)
      throw std::invalid_argument("quantum numbers: need |m| <= l, got l=" + std::to_string(l) +
                                  " m=" + std::to_string(m));
  }

  int n() const { return n_; }
  int l() const { return l_; }
  int m() const { return m_; }
  int abs_m() const { return std::abs(m_); }

  friend bool operator==(const QuantumNumbers&, const QuantumNumbers&) = default;

 private:
  int n_;
  int l_;
  int m_;
};

namespace quantum {

/// E_n = -1/(2 n^2).
inline double energy(const QuantumNumbers& qn) {
  const double n = qn.n();
  return -0.5 / (n * n);
}

/// R_nl(r) in scaled form.
inline LogScaledValue radial_wavefunction_log(const QuantumNumbers& qn, double r) {
  if (!(r >= 0.0)) throw std::domain_error("radial_wavefunction: r must be >= 0");
  const int n = qn.n();
  const int l = qn.l();
  const double nd = n;
  const double x = 2.0 * r / nd;
  if (l > 0 && x == 0.0) return LogScaledValue::zero();

  const double log_norm =
      0.5 * (3.0 * std::log(2.0 / nd) + specfun::log_factorial(n - l - 1) - std::log(2.0 * nd) -
             specfun::log_factorial(n + l));
  double log_mag = log_norm - r / nd;
  if (l > 0) log_mag += l * std::log(x);
  return LogScaledValue::from_log(1, log_mag) * specfun::laguerre_log(n - l - 1, 2.0 * l + 1.0, x);
}

/// R_nl(r) in a^{-3/2}.
inline double radial_wavefunction(const QuantumNumbers& qn, double r) {
  return radial_wavefunction_log(qn, r).to_real();
}

/// p_q(r) = r^2 R_nl(r)^2, dimensionless.
inline double radial_density(const QuantumNumbers& qn, double r) {
  if (r == 0.0) return 0.0;
  const LogScaledValue rR = radial_wavefunction_log(qn, r) * LogScaledValue::from_real(r);
  return rR.squared().to_real();
}

/// p_q(theta) = 2 pi [N_l^|m| P_l^|m|(cos theta)]^2 sin theta. Even in m.
inline double angular_density(const QuantumNumbers& qn, double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi))
    throw std::domain_error("angular_density: theta outside [0, pi]");
  const double s = std::sin(theta);
  if (s <= 0.0) return 0.0;
  const LogScaledValue y = specfun::assoc_legendre_normalized_log(qn.l(), qn.abs_m(), std::cos(theta));
  return (y.squared() * LogScaledValue::from_real(2.0 * std::numbers::pi * s)).to_real();
}

/// |psi_nlm(r, theta)|^2 in a^{-3}; phi-independent.
inline double density3d(const QuantumNumbers& qn, double r, double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi))
    throw std::domain_error("density3d: theta outside [0, pi]");
  const LogScaledValue R = radial_wavefunction_log(qn, r);
  const LogScaledValue y = specfun::assoc_legendre_normalized_log(qn.l(), qn.abs_m(), std::cos(theta));
  return (R * y).squared().to_real();
}

/// |psi_n(x)|^2 of the 1D oscillator, x in units sqrt(hbar / (m omega)).
inline double oscillator_density(int n, double x) {
  if (n < 0) throw std::domain_error("oscillator_density: negative level");
  const double log_norm = -(n * std::numbers::ln2 + specfun::log_factorial(n) + 0.5 * std::log(std::numbers::pi));
  const LogScaledValue h = specfun::hermite_log(n, x);
  return (h.squared() * LogScaledValue::from_log(1, log_norm - x * x)).to_real();
}

}  // namespace quantum

/// `points` uniformly spaced values on [lo, hi], endpoints included.
inline std::vector<double> uniform_grid(double lo, double hi, int points) {
  if (points < 2) throw std::invalid_argument("grid needs at least 2 points");
  if (!(hi > lo)) throw std::invalid_argument("grid needs hi > lo");
  std::vector<double> g(static_cast<std::size_t>(points));
  const double h = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) g[static_cast<std::size_t>(i)] = lo + h * i;
  g.back() = hi;
  return g;
}

/// Radial plotting range [0, 2.2 n^2]: the classical support plus a 10% tail.
inline double default_radial_extent(int n) { return 2.2 * static_cast<double>(n) * n; }

inline constexpr int kDefaultGridPoints = 4000;
}  // namespace orbitwave
