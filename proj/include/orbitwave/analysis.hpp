#pragma once

// Quantitative quantum-vs-classical comparison: curves on grids, WKB-scaled
// smoothing, distances, envelope and peak checks, fixed-ratio convergence and
// the l -> 0 singular-limit study.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <numbers>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "orbitwave/classical.hpp"
#include "orbitwave/quadrature.hpp"
#include "orbitwave/quantum.hpp"

namespace orbitwave {

enum class CurveKind { quantum, classical, smoothed, oracle };

inline const char* to_string(CurveKind k) {
  switch (k) {
    case CurveKind::quantum: return "quantum";
    case CurveKind::classical: return "classical";
    case CurveKind::smoothed: return "smoothed";
    case CurveKind::oracle: return "oracle";
  }
  return "unknown";
}

struct CurveMeta {
  int n = 0;
  int l = 0;
  int m = 0;
  std::string units;
};

/// Tolerated deviation of a probability curve's trapezoid mass from 1 before
/// it is flagged.
inline constexpr double kNormalizationDriftLimit = 0.02;

inline double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double acc = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) acc += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return acc;
}

/// A sampled density. The grid is strictly ascending and values are
/// non-negative; the trapezoid mass is recorded and flagged when a
/// probability curve misses 1 by more than kNormalizationDriftLimit.
class DensityCurve {
 public:
  DensityCurve(std::vector<double> grid, std::vector<double> values, CurveKind kind, CurveMeta meta,
               bool probability = true)
      : grid_(std::move(grid)), values_(std::move(values)), kind_(kind), meta_(std::move(meta)) {
    if (grid_.size() != values_.size()) throw std::invalid_argument("DensityCurve: grid/value size mismatch");
    if (grid_.size() < 2) throw std::invalid_argument("DensityCurve: need at least 2 points");
    for (std::size_t i = 1; i < grid_.size(); ++i)
      if (!(grid_[i] > grid_[i - 1])) throw std::invalid_argument("DensityCurve: grid not strictly ascending");
    for (double v : values_)
      if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("DensityCurve: negative or non-finite value");
    integral_ = trapezoid(grid_, values_);
    flagged_ = probability && std::abs(integral_ - 1.0) > kNormalizationDriftLimit;
  }

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  CurveKind kind() const { return kind_; }
  const CurveMeta& meta() const { return meta_; }
  double integral() const { return integral_; }
  bool normalization_flagged() const { return flagged_; }
  std::size_t size() const { return grid_.size(); }

  /// Linear interpolation; 0 outside the grid.
  double at(double x) const {
    if (x < grid_.front() || x > grid_.back()) return 0.0;
    auto it = std::upper_bound(grid_.begin(), grid_.end(), x);
    if (it == grid_.end()) return values_.back();
    const auto j = static_cast<std::size_t>(it - grid_.begin());
    const double t = (x - grid_[j - 1]) / (grid_[j] - grid_[j - 1]);
    return values_[j - 1] + t * (values_[j] - values_[j - 1]);
  }

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
  CurveKind kind_;
  CurveMeta meta_;
  double integral_ = 0.0;
  bool flagged_ = false;
};

/// Closed interval used to exclude integrably singular edges from metrics.
struct Window {
  double lo;
  double hi;
  bool contains(double x) const { return x >= lo && x <= hi; }
};

struct PeakAlignment {
  double quantum_peak;
  double classical_feature;
  double offset;  // (quantum_peak - classical_feature) / support width
};

struct ComparisonReport {
  double l1 = 0.0;
  double linf = 0.0;
  double mass_in_classical_support = 0.0;
  std::vector<PeakAlignment> peak_alignment;
  QuantumNumbers qn{1, 0, 0};
};

struct EnvelopeReport {
  std::vector<double> peaks;
  std::vector<double> ratios;  // p_q(peak) / (2 p_c(peak))
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  double min_ratio = 0.0;
};

/// Non-negative rational for fixed-ratio studies, e.g. "1/2".
struct Rational {
  long num = 0;
  long den = 1;

  static Rational parse(std::string_view text) {
    auto parse_long = [&](std::string_view s) {
      long v = 0;
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw std::invalid_argument("invalid rational: '" + std::string(text) + "'");
      return v;
    };
    Rational r;
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
      r.num = parse_long(text);
    } else {
      r.num = parse_long(text.substr(0, slash));
      r.den = parse_long(text.substr(slash + 1));
    }
    if (r.den <= 0 || r.num < 0) throw std::invalid_argument("invalid rational: '" + std::string(text) + "'");
    const long g = std::gcd(r.num, r.den);
    if (g > 1) {
      r.num /= g;
      r.den /= g;
    }
    return r;
  }

  /// ratio * k if it is an integer.
  std::optional<int> times(int k) const {
    const long long prod = static_cast<long long>(num) * k;
    if (prod % den != 0) return std::nullopt;
    return static_cast<int>(prod / den);
  }

  std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
};

namespace analysis {

inline constexpr double kEdgeExclusion = 0.05;

// ---------------------------------------------------------------------------
// Curves

inline CurveMeta meta_of(const QuantumNumbers& qn, std::string units) {
  return CurveMeta{qn.n(), qn.l(), qn.m(), std::move(units)};
}

inline DensityCurve quantum_radial_curve(const QuantumNumbers& qn, const std::vector<double>& grid) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = quantum::radial_density(qn, grid[i]);
  return {grid, std::move(v), CurveKind::quantum, meta_of(qn, "r in a; p(r) a")};
}

inline DensityCurve classical_radial_curve(const OrbitEnsembleParams& p, const std::vector<double>& grid) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = grid[i] > 0.0 ? classical::radial_density(p, grid[i]) : 0.0;
  return {grid, std::move(v), CurveKind::classical, meta_of(p.qn, "r in a; p(r) a"), false};
}

inline DensityCurve quantum_angular_curve(const QuantumNumbers& qn, const std::vector<double>& grid) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = quantum::angular_density(qn, grid[i]);
  return {grid, std::move(v), CurveKind::quantum, meta_of(qn, "theta in rad")};
}

inline DensityCurve classical_angular_curve(const OrbitEnsembleParams& p, const std::vector<double>& grid) {
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v[i] = classical::angular_density(p, grid[i]);
  return {grid, std::move(v), CurveKind::classical, meta_of(p.qn, "theta in rad"), false};
}

/// Classical radial support shrunk by `fraction` of its width at each end.
inline Window radial_window(const OrbitEnsembleParams& p, double fraction = kEdgeExclusion) {
  const double w = p.support_width();
  return {p.r_peri + fraction * w, p.r_apo - fraction * w};
}

/// Classical angular band (theta_min, pi - theta_min), shrunk likewise.
inline Window angular_window(const OrbitEnsembleParams& p, double fraction = kEdgeExclusion) {
  const double t0 = p.has_angular() ? p.theta_min : 0.0;
  const double w = std::numbers::pi - 2.0 * t0;
  return {t0 + fraction * w, std::numbers::pi - t0 - fraction * w};
}

// ---------------------------------------------------------------------------
// Smoothing

inline bool is_uniform(const std::vector<double>& grid, double rel_tol = 1e-9) {
  if (grid.size() < 2) return false;
  const double h = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (std::abs((grid[i] - grid[i - 1]) - h) > rel_tol * h) return false;
  return true;
}

/// Local Gaussian width: half the WKB density period pi/k(r),
/// k(r) = sqrt(max(2/r - 1/n^2 - ell^2/r^2, k_min)), clamped to
/// [3 grid steps, support width / 10].
inline double smoothing_width(const OrbitEnsembleParams& p, double r, double h) {
  constexpr double k_min = 1e-12;
  const double lo = 3.0 * h;
  const double hi = std::max(lo, p.support_width() / 10.0);
  if (!(r > 0.0)) return lo;
  const double nd = p.n();
  const double k_sq = 2.0 / r - 1.0 / (nd * nd) - p.ell_sq / (r * r);
  const double k = std::sqrt(std::max(k_sq, k_min));
  return std::clamp(std::numbers::pi / (2.0 * k), lo, hi);
}

namespace detail {

/// Symmetric truncated Gaussian kernel in CSR form.
struct SparseKernel {
  std::vector<std::size_t> row_start;
  std::vector<std::size_t> col;
  std::vector<double> val;

  void multiply(const std::vector<double>& x, std::vector<double>& y) const {
    const std::size_t n = row_start.size() - 1;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t k = row_start[i]; k < row_start[i + 1]; ++k) acc += val[k] * x[col[k]];
      y[i] = acc;
    }
  }
};

inline SparseKernel build_kernel(const std::vector<double>& grid, const std::vector<double>& sigma) {
  constexpr double cutoff = 6.0;
  const std::size_t n = grid.size();
  const double h = (grid.back() - grid.front()) / static_cast<double>(n - 1);
  const double sigma_max = *std::max_element(sigma.begin(), sigma.end());
  SparseKernel k;
  k.row_start.reserve(n + 1);
  k.row_start.push_back(0);
  for (std::size_t i = 0; i < n; ++i) {
    const double reach = cutoff * std::sqrt(0.5 * (sigma[i] * sigma[i] + sigma_max * sigma_max));
    const auto span = static_cast<std::size_t>(std::ceil(reach / h)) + 1;
    const std::size_t j0 = i > span ? i - span : 0;
    const std::size_t j1 = std::min(n - 1, i + span);
    for (std::size_t j = j0; j <= j1; ++j) {
      const double s = std::sqrt(0.5 * (sigma[i] * sigma[i] + sigma[j] * sigma[j]));
      const double d = grid[i] - grid[j];
      if (std::abs(d) > cutoff * s) continue;
      k.col.push_back(j);
      k.val.push_back(std::exp(-0.5 * d * d / (s * s)) / s);
    }
    k.row_start.push_back(k.col.size());
  }
  return k;
}

}  // namespace detail

/// Position-dependent Gaussian smoothing of a quantum radial curve.
///
/// The pairwise kernel K_ij uses the mean variance of the two local widths and
/// is symmetric. It is balanced to A_ij = d_i K_ij w_j d_j (w = trapezoid
/// weights) with d solving d_i (K W d)_i = 1, which makes every row sum to 1
/// (constants are fixed points) and every weighted column sum to w_j (the
/// trapezoid mass is preserved), including at the domain edges.
inline DensityCurve smooth(const DensityCurve& curve, const OrbitEnsembleParams& p) {
  const auto& grid = curve.grid();
  if (!is_uniform(grid)) throw std::invalid_argument("smooth: grid is not uniform");
  const std::size_t n = grid.size();
  const double h = (grid.back() - grid.front()) / static_cast<double>(n - 1);

  std::vector<double> sigma(n);
  for (std::size_t i = 0; i < n; ++i) sigma[i] = smoothing_width(p, grid[i], h);
  const auto kernel = detail::build_kernel(grid, sigma);

  std::vector<double> w(n, h);
  w.front() = w.back() = 0.5 * h;

  std::vector<double> d(n, 1.0), wd(n), kwd(n);
  double err = 1.0;
  for (int it = 0; it < 1000 && err > 1e-13; ++it) {
    for (std::size_t i = 0; i < n; ++i) wd[i] = w[i] * d[i];
    kernel.multiply(wd, kwd);
    err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      err = std::max(err, std::abs(d[i] * kwd[i] - 1.0));
      d[i] = std::sqrt(d[i] / kwd[i]);
    }
  }
  if (err > 1e-10) throw std::runtime_error("smooth: kernel balancing did not converge");

  const auto& f = curve.values();
  std::vector<double> x(n), out(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = w[j] * d[j] * f[j];
  kernel.multiply(x, out);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::max(0.0, d[i] * out[i]);
  return {grid, std::move(out), CurveKind::smoothed, curve.meta(), curve.kind() != CurveKind::classical};
}

// ---------------------------------------------------------------------------
// Distances

namespace detail {

/// |f - g| on f's grid (g resampled when grids differ) restricted to window.
inline std::pair<std::vector<double>, std::vector<double>> abs_difference(const DensityCurve& f,
                                                                           const DensityCurve& g,
                                                                           std::optional<Window> window) {
  const double lo = std::max(f.grid().front(), g.grid().front());
  const double hi = std::min(f.grid().back(), g.grid().back());
  if (!(hi > lo)) throw std::invalid_argument("distance: curves have disjoint domains");
  const bool same = f.grid() == g.grid();
  std::vector<double> xs, ds;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double x = f.grid()[i];
    if (x < lo || x > hi) continue;
    if (window && !window->contains(x)) continue;
    const double gv = same ? g.values()[i] : g.at(x);
    xs.push_back(x);
    ds.push_back(std::abs(f.values()[i] - gv));
  }
  return {std::move(xs), std::move(ds)};
}

}  // namespace detail

/// Trapezoid integral of |f - g|, optionally restricted to a window.
inline double l1_distance(const DensityCurve& f, const DensityCurve& g, std::optional<Window> window = std::nullopt) {
  const auto [xs, ds] = detail::abs_difference(f, g, window);
  return trapezoid(xs, ds);
}

inline double linf_distance(const DensityCurve& f, const DensityCurve& g, std::optional<Window> window = std::nullopt) {
  const auto [xs, ds] = detail::abs_difference(f, g, window);
  return ds.empty() ? 0.0 : *std::max_element(ds.begin(), ds.end());
}

// ---------------------------------------------------------------------------
// Peaks and envelopes

/// Indices of strict interior local maxima (f[i-1] < f[i] >= f[i+1]).
inline std::vector<std::size_t> local_maxima(const std::vector<double>& values) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 1; i + 1 < values.size(); ++i)
    if (values[i] > values[i - 1] && values[i] >= values[i + 1]) idx.push_back(i);
  return idx;
}

/// Maximizer of f on [a, b] (Brent, double precision).
inline double refine_peak(const std::function<double(double)>& f, double a, double b) {
  const auto res = boost::math::tools::brent_find_minima([&](double x) { return -f(x); }, a, b,
                                                         std::numeric_limits<double>::digits / 2);
  return res.first;
}

/// Ratio of quantum maxima to twice the classical density, over grid maxima
/// of `quantum` that fall inside `window`.
inline EnvelopeReport envelope_ratios(const std::function<double(double)>& quantum,
                                      const std::function<double(double)>& classical_density,
                                      const std::vector<double>& grid, Window window) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = quantum(grid[i]);
  EnvelopeReport rep;
  for (std::size_t i : local_maxima(values)) {
    if (!window.contains(grid[i])) continue;
    const double x = refine_peak(quantum, grid[i - 1], grid[i + 1]);
    const double c = classical_density(x);
    if (!(c > 0.0)) continue;
    rep.peaks.push_back(x);
    rep.ratios.push_back(quantum(x) / (2.0 * c));
  }
  if (!rep.ratios.empty()) {
    rep.max_ratio = *std::max_element(rep.ratios.begin(), rep.ratios.end());
    rep.min_ratio = *std::min_element(rep.ratios.begin(), rep.ratios.end());
    rep.mean_ratio = std::accumulate(rep.ratios.begin(), rep.ratios.end(), 0.0) / static_cast<double>(rep.ratios.size());
  }
  return rep;
}

/// Envelope test for hydrogen: interior peaks of p_q against 2 p_c.
inline EnvelopeReport envelope_check(const QuantumNumbers& qn, int points = kDefaultGridPoints) {
  const auto p = classical::make_params(qn);
  const auto grid = uniform_grid(0.0, default_radial_extent(qn.n()), points);
  return envelope_ratios([&](double r) { return quantum::radial_density(qn, r); },
                         [&](double r) { return r > 0.0 ? classical::radial_density(p, r) : 0.0; }, grid,
                         radial_window(p));
}

/// Envelope test for the oscillator level n on (-x_t, x_t), x_t = sqrt(2n+1).
inline EnvelopeReport oscillator_envelope_check(int n, int points = kDefaultGridPoints) {
  const double xt = std::sqrt(2.0 * n + 1.0);
  const double x_max = 1.5 * xt + 2.0;
  const auto grid = uniform_grid(-x_max, x_max, points);
  const double w = 2.0 * xt;
  return envelope_ratios([&](double x) { return quantum::oscillator_density(n, x); },
                         [&](double x) { return classical::oscillator_density(n, x); }, grid,
                         Window{-xt + kEdgeExclusion * w, xt - kEdgeExclusion * w});
}

/// Innermost and outermost quantum maxima against r_peri and r_apo.
inline std::vector<PeakAlignment> apsis_alignment(const QuantumNumbers& qn, const DensityCurve& quantum_curve) {
  const auto p = classical::make_params(qn);
  const auto idx = local_maxima(quantum_curve.values());
  if (idx.empty()) return {};
  const auto& g = quantum_curve.grid();
  auto f = [&](double r) { return quantum::radial_density(qn, r); };
  const double inner = refine_peak(f, g[idx.front() - 1], g[idx.front() + 1]);
  const double outer = refine_peak(f, g[idx.back() - 1], g[idx.back() + 1]);
  const double w = p.support_width();
  return {PeakAlignment{inner, p.r_peri, (inner - p.r_peri) / w},
          PeakAlignment{outer, p.r_apo, (outer - p.r_apo) / w}};
}

// ---------------------------------------------------------------------------
// Mass

/// Upper radius beyond which p_q is negligible for any n.
inline double radial_tail_extent(int n) { return 4.0 * static_cast<double>(n) * n + 60.0; }

/// Integral of p_q over [lo, hi] by panelled Gauss-Kronrod.
inline double quantum_radial_mass(const QuantumNumbers& qn, double lo, double hi) {
  const auto panels = static_cast<std::size_t>(2 * qn.n() + 8);
  return quadrature::integrate([&](double r) { return quantum::radial_density(qn, r); }, lo, hi, panels, 1e-12);
}

inline double quantum_radial_norm(const QuantumNumbers& qn) {
  return quantum_radial_mass(qn, 0.0, radial_tail_extent(qn.n()));
}

inline double quantum_angular_norm(const QuantumNumbers& qn) {
  const auto panels = static_cast<std::size_t>(qn.l() + 4);
  return quadrature::integrate([&](double t) { return quantum::angular_density(qn, t); }, 0.0, std::numbers::pi,
                               panels, 1e-13);
}

/// Fraction of the quantum radial probability inside the classical support.
inline double mass_in_support(const QuantumNumbers& qn) {
  const auto p = classical::make_params(qn);
  const double inside = quantum_radial_mass(qn, p.r_peri, p.r_apo);
  const double total = quantum_radial_norm(qn);
  return inside / total;
}

/// Grid version: trapezoid mass minus segments lying wholly outside
/// [lo, hi], over the total trapezoid mass.
inline double mass_in_support(const DensityCurve& c, Window support) {
  const auto& x = c.grid();
  const auto& y = c.values();
  double total = 0.0;
  double outside = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double seg = 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    total += seg;
    const bool left_out = x[i] < support.lo;
    const bool right_out = x[i - 1] > support.hi;
    if (left_out || right_out) outside += seg;
  }
  if (!(total > 0.0)) throw std::invalid_argument("mass_in_support: curve has zero mass");
  return (total - outside) / total;
}

// ---------------------------------------------------------------------------
// Fixed-ratio convergence

struct ConvergenceRow {
  QuantumNumbers qn{1, 0, 0};
  ComparisonReport radial;
  std::optional<ComparisonReport> angular;
};

inline ComparisonReport radial_report(const QuantumNumbers& qn, int points = kDefaultGridPoints) {
  const auto p = classical::make_params(qn);
  const auto grid = uniform_grid(0.0, default_radial_extent(qn.n()), points);
  const auto q = quantum_radial_curve(qn, grid);
  const auto c = classical_radial_curve(p, grid);
  const auto s = smooth(q, p);
  const Window win = radial_window(p);
  ComparisonReport rep{l1_distance(s, c, win), linf_distance(s, c, win), mass_in_support(qn), apsis_alignment(qn, q), qn};
  return rep;
}

inline ComparisonReport angular_report(const QuantumNumbers& qn, int points = kDefaultGridPoints) {
  const auto p = classical::make_params(qn);
  const auto grid = uniform_grid(0.0, std::numbers::pi, points);
  const auto q = quantum_angular_curve(qn, grid);
  const auto c = classical_angular_curve(p, grid);
  const Window win = angular_window(p);
  const double band_lo = p.has_angular() ? p.theta_min : 0.0;
  ComparisonReport rep{l1_distance(q, c, win), linf_distance(q, c, win),
                       mass_in_support(q, Window{band_lo, std::numbers::pi - band_lo}), {}, qn};
  return rep;
}

/// For each n: l = ratio_l n, m = ratio_m l (both must be integers). Radial
/// report compares smooth(p_q) with p_c; the angular report (when ratio_m is
/// given and l >= 1) compares the raw p_q(theta) with p_c(theta). Rows are in
/// input order.
inline std::vector<ConvergenceRow> convergence_study(const Rational& ratio_l, const std::optional<Rational>& ratio_m,
                                                     const std::vector<int>& n_list,
                                                     int points = kDefaultGridPoints) {
  std::vector<QuantumNumbers> states;
  for (int n : n_list) {
    const auto l = ratio_l.times(n);
    if (!l) throw std::invalid_argument("convergence_study: l = " + ratio_l.str() + " * n is not an integer for n=" + std::to_string(n));
    int m = 0;
    if (ratio_m) {
      const auto mm = ratio_m->times(*l);
      if (!mm) throw std::invalid_argument("convergence_study: m = " + ratio_m->str() + " * l is not an integer for n=" + std::to_string(n));
      m = *mm;
    }
    try {
      states.emplace_back(n, *l, m);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("convergence_study: n=" + std::to_string(n) + ": " + e.what());
    }
  }
  std::vector<std::future<ConvergenceRow>> jobs;
  for (const auto& qn : states) {
    jobs.push_back(std::async(std::launch::async, [qn, points, has_m = ratio_m.has_value()] {
      ConvergenceRow row{qn, radial_report(qn, points), std::nullopt};
      if (has_m && qn.l() >= 1) row.angular = angular_report(qn, points);
      return row;
    }));
  }
  std::vector<ConvergenceRow> rows;
  for (auto& j : jobs) rows.push_back(j.get());
  return rows;
}

// ---------------------------------------------------------------------------
// Singular limit (l = 0 vs l = 1) and the last-term asymptote

/// |R_n0| approximated by the highest-power term of its Laguerre sum:
///   sqrt(4/n^5) / (n-1)! e^{-r/n} (2r/n)^{n-1}.
inline double last_term_approx(int n, double r) {
  if (n < 1) throw std::domain_error("last_term_approx: n must be >= 1");
  if (!(r > 0.0)) throw std::domain_error("last_term_approx: r must be > 0");
  const double nd = n;
  const double log_val = 0.5 * std::log(4.0 / std::pow(nd, 5)) - specfun::log_factorial(n - 1) - r / nd +
                         (n - 1) * std::log(2.0 * r / nd);
  return LogScaledValue::from_log(1, log_val).to_real();
}

/// |approx - |R_n0|| / |R_n0| at r, computed from log magnitudes.
inline double last_term_relative_error(int n, double r) {
  const auto exact = quantum::radial_wavefunction_log(QuantumNumbers(n, 0, 0), r);
  const double nd = n;
  const double log_approx = 0.5 * std::log(4.0 / std::pow(nd, 5)) - specfun::log_factorial(n - 1) - r / nd +
                            (n - 1) * std::log(2.0 * r / nd);
  return std::abs(std::expm1(log_approx - exact.log_abs()));
}

struct SingularLimitRow {
  int n = 0;
  double relative_l2 = 0.0;    // ||r R_n0| - |r R_n1|| / ||r R_n0|| on [0, 2.2 n^2]
  double r_n0_at_origin = 0.0;
  double r_n1_at_origin = 0.0;
  double peak_radius = 0.0;    // outermost maximum of |r R_n0|
  int sign_n0_at_peak = 0;
  int sign_n1_at_peak = 0;
  double last_term_error = 0.0;  // at r = 1.8 n^2
};

struct SingularLimitReport {
  std::vector<SingularLimitRow> rows;
  bool decreasing = false;
  /// L1 of the (l=1, m=0) angular density against isotropy; n-independent.
  double angular_l1_vs_isotropic = 0.0;
};

inline SingularLimitReport singular_limit_study(const std::vector<int>& n_list, int points = kDefaultGridPoints) {
  if (n_list.empty()) throw std::invalid_argument("singular_limit_study: empty n list");
  for (int n : n_list)
    if (n < 2) throw std::invalid_argument("singular_limit_study: n must be >= 2, got " + std::to_string(n));

  SingularLimitReport rep;
  for (int n : n_list) {
    const QuantumNumbers s0(n, 0, 0), s1(n, 1, 0);
    const auto grid = uniform_grid(0.0, default_radial_extent(n), points);
    std::vector<double> a(grid.size()), b(grid.size()), diff_sq(grid.size()), a_sq(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      a[i] = std::abs(grid[i] * quantum::radial_wavefunction(s0, grid[i]));
      b[i] = std::abs(grid[i] * quantum::radial_wavefunction(s1, grid[i]));
      diff_sq[i] = (a[i] - b[i]) * (a[i] - b[i]);
      a_sq[i] = a[i] * a[i];
    }
    SingularLimitRow row;
    row.n = n;
    row.relative_l2 = std::sqrt(trapezoid(grid, diff_sq) / trapezoid(grid, a_sq));
    row.r_n0_at_origin = quantum::radial_wavefunction(s0, 0.0);
    row.r_n1_at_origin = quantum::radial_wavefunction(s1, 0.0);
    const auto peaks = local_maxima(a);
    if (!peaks.empty()) {
      row.peak_radius = grid[peaks.back()];
      row.sign_n0_at_peak = quantum::radial_wavefunction_log(s0, row.peak_radius).sign();
      row.sign_n1_at_peak = quantum::radial_wavefunction_log(s1, row.peak_radius).sign();
    }
    row.last_term_error = last_term_relative_error(n, 1.8 * n * n);
    rep.rows.push_back(row);
  }
  rep.decreasing = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (!(rep.rows[i].relative_l2 < rep.rows[i - 1].relative_l2)) rep.decreasing = false;

  const QuantumNumbers p10(2, 1, 0);
  rep.angular_l1_vs_isotropic = quadrature::integrate(
      [&](double t) { return std::abs(quantum::angular_density(p10, t) - 0.5 * std::sin(t)); }, 0.0,
      std::numbers::pi, 8, 1e-12);
  return rep;
}

/// True when each element is strictly below its predecessor.
inline bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

inline bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) return false;
  return true;
}

}  // namespace analysis
}  // namespace orbitwave
