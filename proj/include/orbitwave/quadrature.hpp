#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace orbitwave::quadrature {

/// Adaptive 31-point Gauss-Kronrod on [a, b], split into `panels` equal
/// sub-intervals first. Oscillatory integrands (hundreds of nodes) need
/// enough panels that each holds a few oscillations.
///
/// `rel_tol` is relative to the L1 norm over all of [a, b], not per panel, so
/// panels where the integrand is negligible do not recurse to max depth
/// chasing rounding noise.
template <class F>
double integrate(F&& f, double a, double b, std::size_t panels = 1, double rel_tol = 1e-12,
                 unsigned max_depth = 15) {
  if (panels == 0) throw std::invalid_argument("integrate: panels must be positive");
  if (!(b > a)) return 0.0;
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  const double h = (b - a) / static_cast<double>(panels);
  auto bounds = [&](std::size_t i) {
    const double lo = a + h * static_cast<double>(i);
    return std::pair{lo, (i + 1 == panels) ? b : lo + h};
  };

  std::vector<double> coarse(panels), l1(panels), err(panels);
  double total_l1 = 0.0;
  for (std::size_t i = 0; i < panels; ++i) {
    const auto [lo, hi] = bounds(i);
    coarse[i] = GK::integrate(f, lo, hi, 0, 0.0, &err[i], &l1[i]);
    total_l1 += l1[i];
  }
  const double target = rel_tol * total_l1;
  double total = 0.0;
  for (std::size_t i = 0; i < panels; ++i) {
    if (err[i] <= target / static_cast<double>(panels)) {
      total += coarse[i];
      continue;
    }
    const auto [lo, hi] = bounds(i);
    const double tol = l1[i] > 0.0 ? std::clamp(target / l1[i], rel_tol, 0.5) : 0.5;
    total += GK::integrate(f, lo, hi, max_depth, tol);
  }
  return total;
}

}  // namespace orbitwave::quadrature
