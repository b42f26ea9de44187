#pragma once

// Monte Carlo check of the classical ensemble: orbits are sampled uniformly in
// time (uniform mean anomaly) and positions recovered through Kepler's
// equation, so the sampler is exact in distribution.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "orbitwave/classical.hpp"

namespace orbitwave {

enum class PhaseMode { two_branch, uniform_phase };

/// Raised when the Kepler solver fails; indicates a solver bug, not bad input.
class KeplerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OrbitSample {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  Branch branch = Branch::first;
  double eccentric_anomaly = 0.0;
  double orbit_angle = 0.0;  // gamma, measured as in r = p / (1 -+ eps cos gamma)
};

/// Uniform-width 1D histogram with a normalized density.
struct Histogram {
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;
  std::vector<double> density;

  std::size_t bins() const { return counts.size(); }
  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto c : counts) t += c;
    return t;
  }
  double width(std::size_t i) const { return edges[i + 1] - edges[i]; }
  double center(std::size_t i) const { return 0.5 * (edges[i] + edges[i + 1]); }
};

/// Joint (r, theta) histogram; counts and density are row-major [r][theta].
struct Histogram2D {
  std::vector<double> r_edges;
  std::vector<double> theta_edges;
  std::vector<std::uint64_t> counts;
  std::vector<double> density;

  std::size_t r_bins() const { return r_edges.size() - 1; }
  std::size_t theta_bins() const { return theta_edges.size() - 1; }
  std::uint64_t count(std::size_t i, std::size_t j) const { return counts[i * theta_bins() + j]; }
  double at(std::size_t i, std::size_t j) const { return density[i * theta_bins() + j]; }

  Histogram radial_marginal() const;
  Histogram angular_marginal() const;
};

namespace oracle {

inline constexpr std::size_t kChunkSize = 1 << 16;

/// Solves u - eps sin u = M (mod 2 pi) for u in [0, 2 pi), eps in [0, 1].
/// Newton from u = M + eps sin M, kept inside a bisection bracket.
inline double solve_kepler(double mean_anomaly, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::domain_error("solve_kepler: eps outside [0, 1]");
  if (!std::isfinite(mean_anomaly)) throw std::domain_error("solve_kepler: non-finite mean anomaly");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double M = std::fmod(mean_anomaly, two_pi);
  if (M < 0.0) M += two_pi;
  if (M == 0.0) return 0.0;

  auto residual = [&](double u) { return u - eps * std::sin(u) - M; };
  // f is non-decreasing and f(0) = -M < 0 < f(2 pi) = 2 pi - M.
  double lo = 0.0;
  double hi = two_pi;
  double u = std::clamp(M + eps * std::sin(M), lo, hi);
  constexpr double tol = 1e-13;
  for (int it = 0; it < 60; ++it) {
    const double f = residual(u);
    if (std::abs(f) < tol) return u >= two_pi ? u - two_pi : u;
    if (f < 0.0) lo = u; else hi = u;
    const double fp = 1.0 - eps * std::cos(u);
    double next = fp > 0.0 ? u - f / fp : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    u = next;
  }
  const double f = residual(u);
  if (std::abs(f) < 1e-12) return u >= two_pi ? u - two_pi : u;
  throw KeplerError("solve_kepler: no convergence for M=" + std::to_string(mean_anomaly) +
                    " eps=" + std::to_string(eps));
}

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit engine; fixed
/// across standard libraries, unlike std::uniform_real_distribution.
template <class Engine>
double uniform01(Engine& eng) {
  static_assert(Engine::max() - Engine::min() == ~std::uint64_t{0}, "need a 64-bit engine");
  return static_cast<double>((eng() - Engine::min()) >> 11) * 0x1.0p-53;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Generator for chunk k of a run: depends only on (seed, k).
inline std::mt19937_64 chunk_engine(std::uint64_t seed, std::uint64_t chunk) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(chunk + 0x632be59bd9b4e019ULL)));
}

/// One time-uniform position on a random orbit of the ensemble.
template <class Engine>
OrbitSample sample_position(const OrbitEnsembleParams& p, Engine& eng, PhaseMode mode) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double eps = p.eccentricity;
  OrbitSample s;
  const double M = two_pi * uniform01(eng);
  const double u = solve_kepler(M, eps);
  s.eccentric_anomaly = u;
  s.r = std::clamp(p.semi_major * (1.0 - eps * std::cos(u)), p.r_peri, p.r_apo);

  const bool first = (eng() >> 63) == 0;
  s.branch = first ? Branch::first : Branch::second;
  const double gamma0 = mode == PhaseMode::uniform_phase ? two_pi * uniform01(eng) : 0.0;
  s.phi = two_pi * uniform01(eng);

  if (!p.has_angular()) {
    // Degenerate line orbit: direction isotropic.
    const double cos_theta = 1.0 - 2.0 * uniform01(eng);
    s.theta = std::acos(cos_theta);
    s.orbit_angle = std::numeric_limits<double>::quiet_NaN();
    return s;
  }

  // True anomaly from perihelion, quadrant-safe.
  const double f = std::atan2(std::sqrt((1.0 - eps) * (1.0 + eps)) * std::sin(u), std::cos(u) - eps);
  double gamma = (first ? f + std::numbers::pi : f) + gamma0;
  gamma = std::fmod(gamma, two_pi);
  if (gamma < 0.0) gamma += two_pi;
  s.orbit_angle = gamma;
  const double cos_theta = std::clamp(p.sin_alpha * std::cos(gamma), -1.0, 1.0);
  s.theta = std::acos(cos_theta);
  return s;
}

namespace detail {

inline std::vector<double> edges(double lo, double hi, std::size_t bins) {
  std::vector<double> e(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) e[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
  e.back() = hi;
  return e;
}

inline std::size_t bin_index(double x, double lo, double hi, std::size_t bins) {
  const double t = (x - lo) / (hi - lo) * static_cast<double>(bins);
  if (!(t > 0.0)) return 0;
  const auto i = static_cast<std::size_t>(t);
  return std::min(i, bins - 1);
}

inline void check_args(std::uint64_t samples, std::size_t bins) {
  if (samples < 1) throw std::invalid_argument("histogram: sample_count must be >= 1");
  if (bins < 2) throw std::invalid_argument("histogram: need at least 2 bins");
}

/// Runs `fill(engine, chunk_samples, counts)` per chunk across workers and sums
/// the integer counts. Chunk-to-engine mapping is fixed, so totals do not
/// depend on the worker count.
template <class Fill>
std::vector<std::uint64_t> parallel_counts(std::uint64_t samples, std::size_t cells, std::uint64_t seed,
                                           unsigned workers, Fill fill) {
  const std::uint64_t chunks = (samples + kChunkSize - 1) / kChunkSize;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, chunks));

  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(cells, 0));
  auto work = [&](unsigned w) {
    for (std::uint64_t c = w; c < chunks; c += workers) {
      auto eng = chunk_engine(seed, c);
      const std::uint64_t begin = c * kChunkSize;
      const std::uint64_t end = std::min<std::uint64_t>(samples, begin + kChunkSize);
      fill(eng, end - begin, partial[w]);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          work(w);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }
  std::vector<std::uint64_t> total(cells, 0);
  for (const auto& part : partial)
    for (std::size_t i = 0; i < cells; ++i) total[i] += part[i];
  return total;
}

inline Histogram finish(std::vector<double> edges, std::vector<std::uint64_t> counts) {
  Histogram h;
  h.edges = std::move(edges);
  h.counts = std::move(counts);
  const double total = static_cast<double>(h.total());
  h.density.resize(h.counts.size());
  for (std::size_t i = 0; i < h.counts.size(); ++i)
    h.density[i] = total > 0 ? static_cast<double>(h.counts[i]) / (total * h.width(i)) : 0.0;
  return h;
}

}  // namespace detail

/// Radial range of the histogram: the support [r_peri, r_apo].
inline std::pair<double, double> radial_range(const OrbitEnsembleParams& p) { return {p.r_peri, p.r_apo}; }

inline Histogram histogram_radial(const OrbitEnsembleParams& p, std::uint64_t samples, std::size_t bins,
                                  std::uint64_t seed, unsigned workers = 0) {
  detail::check_args(samples, bins);
  const auto [lo, hi] = radial_range(p);
  auto counts = detail::parallel_counts(samples, bins, seed, workers,
                                        [&](std::mt19937_64& eng, std::uint64_t n, std::vector<std::uint64_t>& c) {
                                          for (std::uint64_t i = 0; i < n; ++i) {
                                            const auto s = sample_position(p, eng, PhaseMode::two_branch);
                                            ++c[detail::bin_index(s.r, lo, hi, bins)];
                                          }
                                        });
  return detail::finish(detail::edges(lo, hi, bins), std::move(counts));
}

inline Histogram histogram_angular(const OrbitEnsembleParams& p, std::uint64_t samples, std::size_t bins,
                                   std::uint64_t seed, PhaseMode mode = PhaseMode::two_branch,
                                   unsigned workers = 0) {
  detail::check_args(samples, bins);
  constexpr double lo = 0.0;
  constexpr double hi = std::numbers::pi;
  auto counts = detail::parallel_counts(samples, bins, seed, workers,
                                        [&](std::mt19937_64& eng, std::uint64_t n, std::vector<std::uint64_t>& c) {
                                          for (std::uint64_t i = 0; i < n; ++i) {
                                            const auto s = sample_position(p, eng, mode);
                                            ++c[detail::bin_index(s.theta, lo, hi, bins)];
                                          }
                                        });
  return detail::finish(detail::edges(lo, hi, bins), std::move(counts));
}

inline Histogram2D histogram_2d(const OrbitEnsembleParams& p, std::uint64_t samples, std::size_t r_bins,
                                std::size_t theta_bins, std::uint64_t seed,
                                PhaseMode mode = PhaseMode::two_branch, unsigned workers = 0) {
  detail::check_args(samples, std::min(r_bins, theta_bins));
  const auto [r_lo, r_hi] = radial_range(p);
  constexpr double t_lo = 0.0;
  constexpr double t_hi = std::numbers::pi;
  auto counts = detail::parallel_counts(
      samples, r_bins * theta_bins, seed, workers,
      [&](std::mt19937_64& eng, std::uint64_t n, std::vector<std::uint64_t>& c) {
        for (std::uint64_t i = 0; i < n; ++i) {
          const auto s = sample_position(p, eng, mode);
          const auto ir = detail::bin_index(s.r, r_lo, r_hi, r_bins);
          const auto it = detail::bin_index(s.theta, t_lo, t_hi, theta_bins);
          ++c[ir * theta_bins + it];
        }
      });
  Histogram2D h;
  h.r_edges = detail::edges(r_lo, r_hi, r_bins);
  h.theta_edges = detail::edges(t_lo, t_hi, theta_bins);
  h.counts = std::move(counts);
  std::uint64_t total = 0;
  for (auto c : h.counts) total += c;
  h.density.resize(h.counts.size());
  for (std::size_t i = 0; i < r_bins; ++i)
    for (std::size_t j = 0; j < theta_bins; ++j) {
      const double area = (h.r_edges[i + 1] - h.r_edges[i]) * (h.theta_edges[j + 1] - h.theta_edges[j]);
      h.density[i * theta_bins + j] = static_cast<double>(h.count(i, j)) / (static_cast<double>(total) * area);
    }
  return h;
}

/// Bin-averaged analytic radial density (exact, from the Kepler-time CDF).
inline std::vector<double> analytic_radial_bins(const OrbitEnsembleParams& p, const std::vector<double>& edges) {
  std::vector<double> out(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    out[i] = (classical::radial_cdf(p, edges[i + 1]) - classical::radial_cdf(p, edges[i])) /
             (edges[i + 1] - edges[i]);
  return out;
}

/// Bin-averaged analytic angular density (two-branch mean), by quadrature.
inline std::vector<double> analytic_angular_bins(const OrbitEnsembleParams& p, const std::vector<double>& edges) {
  std::vector<double> out(edges.size() - 1);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i)
    out[i] = classical::angular_mass(p, edges[i], edges[i + 1]) / (edges[i + 1] - edges[i]);
  return out;
}

/// sum |empirical - analytic| * width, skipping `exclude_edges` bins at each end.
inline double l1_to_analytic(const Histogram& h, const std::vector<double>& analytic, std::size_t exclude_edges = 1) {
  if (analytic.size() != h.bins()) throw std::invalid_argument("l1_to_analytic: size mismatch");
  double acc = 0.0;
  for (std::size_t i = exclude_edges; i + exclude_edges < h.bins(); ++i)
    acc += std::abs(h.density[i] - analytic[i]) * h.width(i);
  return acc;
}

/// L1 between two histograms on identical edges, edge bins excluded.
inline double l1_between(const Histogram& a, const Histogram& b, std::size_t exclude_edges = 1) {
  if (a.edges != b.edges) throw std::invalid_argument("l1_between: histograms on different edges");
  return l1_to_analytic(a, b.density, exclude_edges);
}

}  // namespace oracle

inline Histogram Histogram2D::radial_marginal() const {
  std::vector<std::uint64_t> c(r_bins(), 0);
  for (std::size_t i = 0; i < r_bins(); ++i)
    for (std::size_t j = 0; j < theta_bins(); ++j) c[i] += count(i, j);
  return oracle::detail::finish(r_edges, std::move(c));
}

inline Histogram Histogram2D::angular_marginal() const {
  std::vector<std::uint64_t> c(theta_bins(), 0);
  for (std::size_t i = 0; i < r_bins(); ++i)
    for (std::size_t j = 0; j < theta_bins(); ++j) c[j] += count(i, j);
  return oracle::detail::finish(theta_edges, std::move(c));
}

}  // namespace orbitwave
