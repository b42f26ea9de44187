// Acceptance gate: one PASS/FAIL line per primary criterion, exit status 1
// if any criterion fails. Tolerances are fixed here, not tuned per run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "orbitwave/cli.hpp"
#include "orbitwave/orbitwave.hpp"

namespace ow = orbitwave;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Gate {
 public:
  void check(const std::string& name, double budget_s, const std::function<Outcome()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream tail;
    tail.precision(3);
    tail << " [" << secs << " s";
    if (budget_s > 0.0) {
      tail << " / budget " << budget_s << " s";
      if (secs > budget_s) {
        o.pass = false;
        tail << " EXCEEDED";
      }
    }
    tail << "]";
    std::printf("%s %s: %s%s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), tail.str().c_str());
    std::fflush(stdout);
    failures_ += o.pass ? 0 : 1;
  }
  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " -> " : "") + fmt(v[i]);
  return s;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

Outcome quantum_normalization() {
  Outcome o;
  double worst_r = 0.0, worst_t = 0.0;
  for (auto [n, l] : {std::pair{10, 0}, {50, 25}, {100, 50}, {200, 100}}) {
    const double err = std::abs(ow::analysis::quantum_radial_norm(ow::QuantumNumbers(n, l, 0)) - 1.0);
    worst_r = std::max(worst_r, err);
  }
  for (auto [l, m] : {std::pair{5, 1}, {50, 10}, {100, 20}}) {
    const double err = std::abs(ow::analysis::quantum_angular_norm(ow::QuantumNumbers(l + 1, l, m)) - 1.0);
    worst_t = std::max(worst_t, err);
  }
  o.pass = worst_r < 1e-6 && worst_t < 1e-8;
  o.detail = "max radial |norm-1| = " + fmt(worst_r) + " (< 1e-6), max angular |norm-1| = " + fmt(worst_t) + " (< 1e-8)";
  return o;
}

Outcome classical_oracle_equivalence() {
  std::mt19937_64 eng(20240611);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (auto [n, l] : {std::pair{10, 5}, {50, 25}, {100, 50}, {10, 0}, {50, 0}, {100, 0}}) {
    const auto p = ow::classical::make_params(ow::QuantumNumbers(n, l, 0));
    for (int i = 0; i < 10000; ++i) {
      double r = 0.0;
      do r = p.r_peri + unit(eng) * p.support_width();
      while (!(r > p.r_peri && r < p.r_apo));
      const double a = ow::classical::radial_density(p, r);
      const double b = ow::classical::radial_density_eccentric(p, r);
      worst = std::max(worst, std::abs(a - b) / std::abs(b));
    }
  }
  return {worst < 1e-10, "max relative difference = " + fmt(worst) + " over 6e4 interior points incl. eps = 1 (< 1e-10)"};
}

Outcome classical_normalization() {
  double worst_r = 0.0, worst_t = 0.0;
  for (auto [n, l, m] : {std::tuple{10, 5, 1}, {100, 50, 10}, {200, 100, 20}, {10, 0, 0}, {100, 0, 0}}) {
    const auto p = ow::classical::make_params(ow::QuantumNumbers(n, l, m));
    worst_r = std::max(worst_r, std::abs(ow::classical::radial_mass(p, p.r_peri, p.r_apo) - 1.0));
    if (p.has_angular())
      worst_t = std::max(worst_t, std::abs(ow::classical::angular_mass(p, 0.0, std::numbers::pi) - 1.0));
  }
  return {worst_r < 1e-8 && worst_t < 1e-6,
          "max radial |mass-1| = " + fmt(worst_r) + " (< 1e-8), max angular |mass-1| = " + fmt(worst_t) + " (< 1e-6)"};
}

Outcome monte_carlo() {
  const auto p105 = ow::classical::make_params(ow::QuantumNumbers(10, 5, 0));
  const auto p100 = ow::classical::make_params(ow::QuantumNumbers(10, 0, 0));
  const auto p1051 = ow::classical::make_params(ow::QuantumNumbers(10, 5, 1));
  const auto h1 = ow::oracle::histogram_radial(p105, 1'000'000, 200, 42);
  const auto h2 = ow::oracle::histogram_radial(p100, 1'000'000, 200, 42);
  const auto h3 = ow::oracle::histogram_angular(p1051, 1'000'000, 200, 42, ow::PhaseMode::two_branch);
  const double a = ow::oracle::l1_to_analytic(h1, ow::oracle::analytic_radial_bins(p105, h1.edges));
  const double b = ow::oracle::l1_to_analytic(h2, ow::oracle::analytic_radial_bins(p100, h2.edges));
  const double c = ow::oracle::l1_to_analytic(h3, ow::oracle::analytic_angular_bins(p1051, h3.edges));
  return {a < 0.02 && b < 0.02 && c < 0.02, "L1 radial(10,5) = " + fmt(a) + ", radial(10,0) = " + fmt(b) +
                                                ", angular(10,5,1) = " + fmt(c) + " (each < 0.02)"};
}

Outcome radial_trends() {
  std::vector<double> l1_s, l1_half, mass;
  for (int n : {10, 50, 100}) {
    const auto r0 = ow::analysis::radial_report(ow::QuantumNumbers(n, 0, 0));
    const auto rh = ow::analysis::radial_report(ow::QuantumNumbers(n, n / 2, 0));
    l1_s.push_back(r0.l1);
    l1_half.push_back(rh.l1);
    mass.push_back(r0.mass_in_classical_support);
  }
  const auto env = ow::analysis::envelope_check(ow::QuantumNumbers(50, 0, 0));
  const bool env_ok = !env.ratios.empty() && env.min_ratio >= 0.85 && env.max_ratio <= 1.10;
  const bool ok = ow::analysis::strictly_decreasing(l1_s) && ow::analysis::strictly_decreasing(l1_half) &&
                  ow::analysis::strictly_increasing(mass) && env_ok;
  return {ok, "L1 l=0: " + join(l1_s) + "; L1 l=n/2: " + join(l1_half) + "; mass l=0: " + join(mass) +
                  "; envelope (50,0) ratios in [" + fmt(env.min_ratio) + ", " + fmt(env.max_ratio) + "] over " +
                  std::to_string(env.ratios.size()) + " peaks (need [0.85, 1.10])"};
}

Outcome angular_trend() {
  std::vector<double> l1;
  for (auto [n, l, m] : {std::tuple{10, 5, 1}, {100, 50, 10}, {200, 100, 20}})
    l1.push_back(ow::analysis::angular_report(ow::QuantumNumbers(n, l, m)).l1);
  return {ow::analysis::strictly_decreasing(l1), "angular L1: " + join(l1) + " (strictly decreasing required)"};
}

Outcome apsis_emergence() {
  const ow::QuantumNumbers qn(100, 50, 0);
  const auto p = ow::classical::make_params(qn);
  const auto grid = ow::uniform_grid(0.0, ow::default_radial_extent(100), ow::kDefaultGridPoints);
  const auto al = ow::analysis::apsis_alignment(qn, ow::analysis::quantum_radial_curve(qn, grid));
  if (al.size() != 2) return {false, "no quantum maxima found"};
  const double d1 = p.ell_sq / (1.0 - p.eccentricity);
  const double d2 = p.ell_sq / (1.0 + p.eccentricity);
  const bool sum_exact = p.r_apo + p.r_peri == 2.0 * 100 * 100;
  const double formula_gap = std::max(std::abs(d1 - p.r_apo), std::abs(d2 - p.r_peri)) / p.support_width();
  const bool ok = std::abs(al[0].offset) <= 0.02 && std::abs(al[1].offset) <= 0.02 && sum_exact && formula_gap < 1e-12;
  return {ok, "innermost peak offset = " + fmt(al[0].offset) + ", outermost = " + fmt(al[1].offset) +
                  " (|.| <= 0.02 of support width); r_peri + r_apo == 2n^2: " + (sum_exact ? "yes" : "no") +
                  "; ell^2/(1 -+ eps) vs apsides gap = " + fmt(formula_gap)};
}

Outcome singular_limit() {
  const auto rep = ow::analysis::singular_limit_study({5, 10, 20, 40});
  std::vector<double> l2;
  for (const auto& r : rep.rows) l2.push_back(r.relative_l2);
  const double e10 = ow::analysis::last_term_relative_error(10, 1.8 * 100);
  const double e50 = ow::analysis::last_term_relative_error(50, 1.8 * 2500);
  double e1 = 0.0;
  for (double r : {0.1, 0.5, 1.0, 1.8, 3.0, 10.0}) e1 = std::max(e1, ow::analysis::last_term_relative_error(1, r));
  const bool ok = rep.decreasing && e50 < e10 && e1 < 1e-13;
  return {ok, "relative L2: " + join(l2) + "; last-term error at 1.8n^2: n=10 " + fmt(e10) + ", n=50 " + fmt(e50) +
                  " (must decrease); n=1 max error " + fmt(e1)};
}

Outcome oscillator() {
  const int n = 10;
  const double norm = ow::quadrature::integrate([&](double x) { return ow::quantum::oscillator_density(n, x); },
                                                -12.0, 12.0, 24, 1e-13);
  const double xt = std::sqrt(21.0);
  bool support_ok = ow::classical::oscillator_density(n, xt) == 0.0 &&
                    ow::classical::oscillator_density(n, -xt) == 0.0 &&
                    ow::classical::oscillator_density(n, std::nextafter(xt, 0.0)) > 0.0 &&
                    ow::classical::oscillator_density(n, std::nextafter(-xt, 0.0)) > 0.0;
  for (double x = -8.0; x <= 8.0; x += 1e-3)
    support_ok = support_ok && ((ow::classical::oscillator_density(n, x) > 0.0) == (std::abs(x) < xt));
  const auto env = ow::analysis::oscillator_envelope_check(n);
  const bool env_ok = !env.ratios.empty() && env.min_ratio >= 0.85 && env.max_ratio <= 1.10;
  return {std::abs(norm - 1.0) < 1e-8 && support_ok && env_ok,
          "|norm-1| = " + fmt(std::abs(norm - 1.0)) + " (< 1e-8); support |x| < sqrt(21): " +
              (support_ok ? "exact" : "violated") + "; envelope ratios in [" + fmt(env.min_ratio) + ", " +
              fmt(env.max_ratio) + "] over " + std::to_string(env.ratios.size()) + " peaks"};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("orbitwave_accept_" + std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  std::vector<std::string> files;
  std::ostringstream sink;
  for (unsigned workers : {1u, 2u, 4u, 1u}) {
    ow::cli::RunConfig cfg;
    cfg.command = ow::cli::Command::oracle;
    cfg.n = 10;
    cfg.l = 5;
    cfg.m = 1;
    cfg.samples = 1'000'000;
    cfg.seed = 42;
    cfg.workers = workers;
    cfg.out = dir / ("run" + std::to_string(files.size()) + ".csv");
    if (ow::cli::run(cfg, sink, sink) != 0) return {false, "oracle run failed: " + sink.str()};
    files.push_back(slurp(cfg.out));
  }
  fs::remove_all(dir);
  bool same = !files.front().empty();
  for (const auto& f : files) same = same && f == files.front();
  return {same, std::string("4 oracle CSVs (workers 1, 2, 4, 1; seed 42): ") + (same ? "byte-identical" : "differ")};
}

}  // namespace

int main() {
  Gate gate;
  gate.check("quantum-normalization", 10.0, quantum_normalization);
  gate.check("classical-oracle-equivalence", 1.0, classical_oracle_equivalence);
  gate.check("classical-normalization", 0.0, classical_normalization);
  gate.check("monte-carlo-verification", 30.0, monte_carlo);
  gate.check("radial-convergence-trends", 0.0, radial_trends);
  gate.check("angular-convergence-trend", 0.0, angular_trend);
  gate.check("apsis-emergence", 0.0, apsis_emergence);
  gate.check("singular-limit", 0.0, singular_limit);
  gate.check("oscillator", 0.0, oscillator);
  gate.check("determinism", 0.0, determinism);
  std::printf("%d criteria failed\n", gate.failures());
  return gate.failures() == 0 ? 0 : 1;
}
