#pragma once

// Command-line front end: RunConfig, argument parsing, validation and the
// per-command table builders. Kept in a header so the tests can drive run()
// without spawning processes.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>  // vendored nlohmann::json

#include "orbitwave/io.hpp"
#include "orbitwave/orbitwave.hpp"

namespace orbitwave::cli {

enum class Command { radial, angular, density3d, oscillator, oracle, converge, limit };
enum class Format { csv, json };
enum class Observable { radial, angular };

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

inline const char* to_string(Command c) {
  switch (c) {
    case Command::radial: return "radial";
    case Command::angular: return "angular";
    case Command::density3d: return "density3d";
    case Command::oscillator: return "oscillator";
    case Command::oracle: return "oracle";
    case Command::converge: return "converge";
    case Command::limit: return "limit";
  }
  return "?";
}

inline const char* to_string(PhaseMode m) { return m == PhaseMode::two_branch ? "two-branch" : "uniform-phase"; }
inline const char* to_string(Format f) { return f == Format::csv ? "csv" : "json"; }
inline const char* to_string(Observable o) { return o == Observable::radial ? "radial" : "angular"; }

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fully parsed command line. Optional fields are the ones whose presence
/// matters for conflict checks or whose default depends on the command.
struct RunConfig {
  Command command = Command::radial;
  std::optional<int> n;
  std::optional<int> l;
  std::optional<int> m;
  std::optional<int> points;
  std::optional<double> r_max;  // nullopt = auto
  std::uint64_t samples = 1'000'000;
  std::size_t bins = 200;
  std::uint64_t seed = 42;
  PhaseMode phase_mode = PhaseMode::two_branch;
  Observable observable = Observable::radial;
  std::vector<int> n_list;
  std::optional<Rational> ratio_l;
  std::optional<Rational> ratio_m;
  std::filesystem::path out;  // empty = derived name
  Format format = Format::csv;
  unsigned workers = 0;  // 0 = hardware concurrency; never affects output
};

inline bool single_state(Command c) {
  return c == Command::radial || c == Command::angular || c == Command::density3d || c == Command::oracle;
}

/// Throws UsageError for missing, conflicting or invalid settings.
inline void validate(const RunConfig& cfg) {
  const std::string cmd = to_string(cfg.command);
  auto forbid = [&](bool present, const char* flag) {
    if (present) throw UsageError(cmd + ": " + flag + " is not accepted by this command");
  };
  if (cfg.points && *cfg.points < 2) throw UsageError(cmd + ": --points must be >= 2");
  if (cfg.r_max && !(*cfg.r_max > 0.0)) throw UsageError(cmd + ": --r-max must be positive or 'auto'");
  if (cfg.samples < 1) throw UsageError(cmd + ": --samples must be >= 1");
  if (cfg.bins < 1) throw UsageError(cmd + ": --bins must be >= 1");

  if (single_state(cfg.command)) {
    forbid(!cfg.n_list.empty(), "--n-list");
    forbid(cfg.ratio_l.has_value(), "--ratio-l");
    forbid(cfg.ratio_m.has_value(), "--ratio-m");
    if (!cfg.n) throw UsageError(cmd + ": --n is required");
    try {
      QuantumNumbers(*cfg.n, cfg.l.value_or(0), cfg.m.value_or(0));
    } catch (const std::invalid_argument& e) {
      throw UsageError(cmd + ": " + e.what());
    }
  } else if (cfg.command == Command::oscillator) {
    forbid(!cfg.n_list.empty(), "--n-list");
    forbid(cfg.l.has_value(), "--l");
    forbid(cfg.m.has_value(), "--m");
    forbid(cfg.ratio_l.has_value(), "--ratio-l");
    forbid(cfg.ratio_m.has_value(), "--ratio-m");
    if (!cfg.n) throw UsageError(cmd + ": --n is required");
    if (*cfg.n < 0) throw UsageError(cmd + ": --n must be >= 0");
  } else {
    forbid(cfg.n.has_value(), "--n");
    forbid(cfg.l.has_value(), "--l");
    forbid(cfg.m.has_value(), "--m");
    if (cfg.n_list.empty()) throw UsageError(cmd + ": --n-list is required");
    if (cfg.command == Command::converge) {
      if (!cfg.ratio_l) throw UsageError(cmd + ": --ratio-l is required");
      for (int n : cfg.n_list) {
        const auto l = cfg.ratio_l->times(n);
        if (!l) throw UsageError(cmd + ": l = " + cfg.ratio_l->str() + " * n is not an integer for n=" + std::to_string(n));
        int m = 0;
        if (cfg.ratio_m) {
          const auto mm = cfg.ratio_m->times(*l);
          if (!mm) throw UsageError(cmd + ": m = " + cfg.ratio_m->str() + " * l is not an integer for n=" + std::to_string(n));
          m = *mm;
        }
        try {
          QuantumNumbers(n, *l, m);
        } catch (const std::invalid_argument& e) {
          throw UsageError(cmd + ": n=" + std::to_string(n) + ": " + e.what());
        }
      }
    } else {
      forbid(cfg.ratio_l.has_value(), "--ratio-l");
      forbid(cfg.ratio_m.has_value(), "--ratio-m");
      for (int n : cfg.n_list)
        if (n < 2) throw UsageError(cmd + ": every n must be >= 2, got " + std::to_string(n));
    }
  }
}

inline int resolved_points(const RunConfig& cfg) {
  if (cfg.points) return *cfg.points;
  return cfg.command == Command::density3d ? 100 : kDefaultGridPoints;
}

/// Half-width of the oscillator plot: turning point x_t = sqrt(2n+1), padded.
inline double oscillator_extent(int n) { return 1.5 * std::sqrt(2.0 * n + 1.0) + 2.0; }

inline double resolved_extent(const RunConfig& cfg) {
  if (cfg.r_max) return *cfg.r_max;
  if (cfg.command == Command::oscillator) return oscillator_extent(cfg.n.value_or(0));
  return default_radial_extent(cfg.n.value_or(1));
}

inline std::string default_stem(const RunConfig& cfg) {
  auto ratio = [](const Rational& r) {
    std::string s = r.str();
    for (auto& ch : s)
      if (ch == '/') ch = '-';
    return s;
  };
  const std::string cmd = to_string(cfg.command);
  switch (cfg.command) {
    case Command::oscillator: return cmd + "_n" + std::to_string(*cfg.n);
    case Command::oracle:
      return cmd + "_" + to_string(cfg.observable) + "_n" + std::to_string(*cfg.n) + "_l" +
             std::to_string(cfg.l.value_or(0)) + "_m" + std::to_string(cfg.m.value_or(0));
    case Command::converge: {
      std::string s = cmd + "_l" + ratio(*cfg.ratio_l);
      if (cfg.ratio_m) s += "_m" + ratio(*cfg.ratio_m);
      return s;
    }
    case Command::limit: return cmd;
    default:
      return cmd + "_n" + std::to_string(*cfg.n) + "_l" + std::to_string(cfg.l.value_or(0)) + "_m" +
             std::to_string(cfg.m.value_or(0));
  }
}

/// Output path: --out if given, else a name derived from the command. Relative
/// paths are taken against $ORBITWAVE_OUT when it is set.
inline std::filesystem::path resolved_output(const RunConfig& cfg) {
  std::filesystem::path p = cfg.out;
  if (p.empty()) p = default_stem(cfg) + (cfg.format == Format::csv ? ".csv" : ".json");
  if (p.is_relative()) {
    if (const char* dir = std::getenv("ORBITWAVE_OUT"); dir && *dir) p = std::filesystem::path(dir) / p;
  }
  return p;
}

/// Resolved config for JSON provenance. Worker count is left out so outputs
/// stay byte-identical across machines.
inline nlohmann::ordered_json config_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  auto opt = [](const std::optional<int>& v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr); };
  j["command"] = to_string(cfg.command);
  const bool uses_state = single_state(cfg.command) || cfg.command == Command::oscillator;
  j["n"] = opt(cfg.n);
  j["l"] = uses_state && cfg.command != Command::oscillator ? nlohmann::ordered_json(cfg.l.value_or(0)) : nlohmann::ordered_json(nullptr);
  j["m"] = uses_state && cfg.command != Command::oscillator ? nlohmann::ordered_json(cfg.m.value_or(0)) : nlohmann::ordered_json(nullptr);
  j["points"] = resolved_points(cfg);
  j["r_max"] = uses_state ? nlohmann::ordered_json(resolved_extent(cfg)) : nlohmann::ordered_json(nullptr);
  j["r_max_auto"] = !cfg.r_max.has_value();
  j["samples"] = cfg.samples;
  j["bins"] = cfg.bins;
  j["seed"] = cfg.seed;
  j["phase_mode"] = to_string(cfg.phase_mode);
  j["observable"] = to_string(cfg.observable);
  j["n_list"] = cfg.n_list;
  j["ratio_l"] = cfg.ratio_l ? nlohmann::ordered_json(cfg.ratio_l->str()) : nlohmann::ordered_json(nullptr);
  j["ratio_m"] = cfg.ratio_m ? nlohmann::ordered_json(cfg.ratio_m->str()) : nlohmann::ordered_json(nullptr);
  j["out"] = resolved_output(cfg).generic_string();
  j["format"] = to_string(cfg.format);
  return j;
}

struct Artifact {
  io::Table table;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
};

namespace detail {

inline QuantumNumbers state_of(const RunConfig& cfg) { return {*cfg.n, cfg.l.value_or(0), cfg.m.value_or(0)}; }

inline void check_norm(const char* what, double norm) {
  if (std::abs(norm - 1.0) > kNormalizationDriftLimit) {
    std::ostringstream os;
    os << what << " normalization drifted to " << norm << " (limit " << kNormalizationDriftLimit << ")";
    throw NumericalError(os.str());
  }
}

inline nlohmann::ordered_json params_json(const OrbitEnsembleParams& p) {
  nlohmann::ordered_json j;
  j["energy"] = quantum::energy(p.qn);
  j["eccentricity"] = p.eccentricity;
  j["r_peri"] = p.r_peri;
  j["r_apo"] = p.r_apo;
  j["period"] = p.period;
  if (p.has_angular()) {
    j["alpha"] = p.alpha;
    j["tau"] = p.tau;
    j["theta_min"] = p.theta_min;
  } else {
    j["angular_convention"] = "l = 0: classical angular density taken isotropic, sin(theta)/2";
  }
  return j;
}

inline Artifact radial(const RunConfig& cfg) {
  const auto qn = state_of(cfg);
  const auto p = classical::make_params(qn);
  check_norm("radial", analysis::quantum_radial_norm(qn));
  const auto grid = uniform_grid(0.0, resolved_extent(cfg), resolved_points(cfg));
  const auto q = analysis::quantum_radial_curve(qn, grid);
  const auto c = analysis::classical_radial_curve(p, grid);
  const auto s = analysis::smooth(q, p);
  Artifact a;
  a.table.columns = {"r_tilde", "p_q", "p_c", "p_c_x2", "p_q_smoothed"};
  for (std::size_t i = 0; i < grid.size(); ++i)
    a.table.add_row({grid[i], q.values()[i], c.values()[i], 2.0 * c.values()[i], s.values()[i]});
  a.meta["classical"] = params_json(p);
  a.meta["grid_mass_quantum"] = q.integral();
  a.meta["grid_mass_classical"] = c.integral();
  return a;
}

inline Artifact angular(const RunConfig& cfg) {
  const auto qn = state_of(cfg);
  const auto p = classical::make_params(qn);
  check_norm("angular", analysis::quantum_angular_norm(qn));
  const auto grid = uniform_grid(0.0, std::numbers::pi, resolved_points(cfg));
  const auto q = analysis::quantum_angular_curve(qn, grid);
  const auto c = analysis::classical_angular_curve(p, grid);
  Artifact a;
  a.table.columns = {"theta", "p_q", "p_c"};
  for (std::size_t i = 0; i < grid.size(); ++i) a.table.add_row({grid[i], q.values()[i], c.values()[i]});
  a.meta["classical"] = params_json(p);
  return a;
}

inline Artifact density3d(const RunConfig& cfg) {
  const auto qn = state_of(cfg);
  const auto p = classical::make_params(qn);
  check_norm("radial", analysis::quantum_radial_norm(qn));
  check_norm("angular", analysis::quantum_angular_norm(qn));
  const int pts = resolved_points(cfg);
  const auto rs = uniform_grid(0.0, resolved_extent(cfg), pts);
  const auto ts = uniform_grid(0.0, std::numbers::pi, pts);
  Artifact a;
  a.table.columns = {"r_tilde", "theta", "rho_q", "rho_c_product"};
  for (double r : rs)
    for (double t : ts) a.table.add_row({r, t, quantum::density3d(qn, r, t), classical::density3d_product(p, r, t)});
  a.meta["classical"] = params_json(p);
  a.meta["units"] = "a^-3";
  return a;
}

inline Artifact oscillator(const RunConfig& cfg) {
  const int n = *cfg.n;
  const double x_max = resolved_extent(cfg);
  const auto grid = uniform_grid(-x_max, x_max, resolved_points(cfg));
  std::vector<double> q(grid.size()), c(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    q[i] = quantum::oscillator_density(n, grid[i]);
    c[i] = classical::oscillator_density(n, grid[i]);
  }
  if (x_max >= oscillator_extent(n)) check_norm("oscillator", trapezoid(grid, q));
  Artifact a;
  a.table.columns = {"x", "p_q", "p_c"};
  for (std::size_t i = 0; i < grid.size(); ++i) a.table.add_row({grid[i], q[i], c[i]});
  a.meta["turning_point"] = std::sqrt(2.0 * n + 1.0);
  a.meta["units"] = "x in sqrt(hbar/(m omega))";
  return a;
}

inline Artifact oracle_run(const RunConfig& cfg) {
  const auto qn = state_of(cfg);
  const auto p = classical::make_params(qn);
  Histogram h;
  std::vector<double> analytic;
  if (cfg.observable == Observable::radial) {
    h = oracle::histogram_radial(p, cfg.samples, cfg.bins, cfg.seed, cfg.workers);
    analytic = oracle::analytic_radial_bins(p, h.edges);
  } else {
    h = oracle::histogram_angular(p, cfg.samples, cfg.bins, cfg.seed, cfg.phase_mode, cfg.workers);
    analytic = oracle::analytic_angular_bins(p, h.edges);
  }
  Artifact a;
  a.table.columns = {"bin_left", "bin_right", "density_empirical", "density_analytic"};
  for (std::size_t i = 0; i < h.bins(); ++i) a.table.add_row({h.edges[i], h.edges[i + 1], h.density[i], analytic[i]});
  a.meta["classical"] = params_json(p);
  a.meta["l1_to_analytic"] = h.bins() > 2 ? oracle::l1_to_analytic(h, analytic) : oracle::l1_to_analytic(h, analytic, 0);
  a.meta["edge_bins_excluded"] = h.bins() > 2 ? 1 : 0;
  return a;
}

inline Artifact converge(const RunConfig& cfg) {
  const int pts = resolved_points(cfg);
  const auto rows = analysis::convergence_study(*cfg.ratio_l, cfg.ratio_m, cfg.n_list, pts);
  const bool with_angular = cfg.ratio_m.has_value();
  Artifact a;
  a.table.columns = {"n", "l", "m", "radial_l1", "radial_linf", "mass_in_support", "peak_offset_inner",
                     "peak_offset_outer"};
  a.table.integer_column = {true, true, true};
  if (with_angular) {
    a.table.columns.push_back("angular_l1");
    a.table.columns.push_back("angular_linf");
  }
  std::vector<double> radial_l1, angular_l1;
  for (const auto& r : rows) {
    const auto nan = std::numeric_limits<double>::quiet_NaN();
    const auto& pa = r.radial.peak_alignment;
    std::vector<double> row{double(r.qn.n()), double(r.qn.l()), double(r.qn.m()), r.radial.l1, r.radial.linf,
                            r.radial.mass_in_classical_support, pa.empty() ? nan : pa.front().offset,
                            pa.empty() ? nan : pa.back().offset};
    radial_l1.push_back(r.radial.l1);
    if (with_angular) {
      row.push_back(r.angular ? r.angular->l1 : nan);
      row.push_back(r.angular ? r.angular->linf : nan);
      if (r.angular) angular_l1.push_back(r.angular->l1);
    }
    a.table.add_row(std::move(row));
  }
  a.meta["radial_l1_strictly_decreasing"] = analysis::strictly_decreasing(radial_l1);
  if (with_angular) a.meta["angular_l1_strictly_decreasing"] = analysis::strictly_decreasing(angular_l1);
  a.meta["edge_exclusion"] = analysis::kEdgeExclusion;
  a.meta["radial_metric"] = "smoothed quantum vs classical, windowed";
  a.meta["angular_metric"] = "unsmoothed quantum vs classical, windowed";
  return a;
}

inline Artifact limit(const RunConfig& cfg) {
  const auto rep = analysis::singular_limit_study(cfg.n_list, resolved_points(cfg));
  Artifact a;
  a.table.columns = {"n", "relative_l2", "r_n0_at_origin", "r_n1_at_origin", "peak_radius", "sign_n0_at_peak",
                     "sign_n1_at_peak", "last_term_rel_error"};
  a.table.integer_column = {true, false, false, false, false, true, true, false};
  for (const auto& r : rep.rows)
    a.table.add_row({double(r.n), r.relative_l2, r.r_n0_at_origin, r.r_n1_at_origin, r.peak_radius,
                     double(r.sign_n0_at_peak), double(r.sign_n1_at_peak), r.last_term_error});
  a.meta["relative_l2_strictly_decreasing"] = rep.decreasing;
  a.meta["angular_l1_vs_isotropic"] = rep.angular_l1_vs_isotropic;
  a.meta["last_term_radius"] = "1.8 n^2";
  return a;
}

}  // namespace detail

/// Builds the output table for a validated config.
inline Artifact compute(const RunConfig& cfg) {
  switch (cfg.command) {
    case Command::radial: return detail::radial(cfg);
    case Command::angular: return detail::angular(cfg);
    case Command::density3d: return detail::density3d(cfg);
    case Command::oscillator: return detail::oscillator(cfg);
    case Command::oracle: return detail::oracle_run(cfg);
    case Command::converge: return detail::converge(cfg);
    case Command::limit: return detail::limit(cfg);
  }
  throw std::logic_error("unknown command");
}

inline std::string render(const RunConfig& cfg, const Artifact& a) {
  return cfg.format == Format::csv ? io::to_csv(a.table) : io::to_json(a.table, config_json(cfg), a.meta);
}

/// Validates, computes and writes. Returns the process exit status and
/// prints a one-line diagnostic to `err` on failure.
inline int run(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    validate(cfg);
  } catch (const std::exception& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  std::string content;
  try {
    content = render(cfg, compute(cfg));
  } catch (const std::exception& e) {
    err << "computation error: " << e.what() << '\n';
    return kExitNumerical;
  }
  const auto path = resolved_output(cfg);
  try {
    io::write_atomic(path, content);
  } catch (const std::exception& e) {
    err << "io error: " << e.what() << '\n';
    return kExitIo;
  }
  out << path.generic_string() << '\n';
  return kExitOk;
}

struct ParseResult {
  std::optional<RunConfig> config;  // empty when parsing ended the run (help, error)
  int exit_code = kExitOk;
};

/// Parses argv into a RunConfig. Help prints to `out` and exits 0; parse
/// errors print a one-line diagnostic to `err` and exit 2.
inline ParseResult parse(int argc, const char* const* argv, std::ostream& out = std::cout,
                         std::ostream& err = std::cerr) {
  CLI::App app{"Hydrogen quantum and classical orbit-ensemble densities", "orbitwave"};
  app.require_subcommand(1, 1);

  RunConfig cfg;
  int n = 0, l = 0, m = 0, points = 0;
  std::string r_max = "auto", phase = "two-branch", observable = "radial", format = "csv", ratio_l, ratio_m, out_path;

  struct Opts {
    bool state = false, lm = false, extent = false, oracle = false, list = false, ratios = false, points = true;
  };
  std::vector<std::pair<CLI::App*, Command>> subs;
  auto add = [&](Command c, const char* help, Opts o) {
    CLI::App* s = app.add_subcommand(to_string(c), help);
    if (o.state) s->add_option("--n", n, "principal quantum number")->required();
    if (o.lm) {
      s->add_option("--l", l, "orbital quantum number (default 0)");
      s->add_option("--m", m, "magnetic quantum number (default 0)");
    }
    if (o.points) s->add_option("--points", points, "grid points (default 4000; density3d: 100 per axis)");
    if (o.extent) s->add_option("--r-max", r_max, "grid extent or 'auto'")->default_str("auto");
    if (o.oracle) {
      s->add_option("--samples", cfg.samples, "Monte Carlo samples")->capture_default_str();
      s->add_option("--bins", cfg.bins, "histogram bins")->capture_default_str();
      s->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
      s->add_option("--phase-mode", phase, "two-branch | uniform-phase")
          ->check(CLI::IsMember({"two-branch", "uniform-phase"}))
          ->capture_default_str();
      s->add_option("--observable", observable, "radial | angular")
          ->check(CLI::IsMember({"radial", "angular"}))
          ->capture_default_str();
      s->add_option("--workers", cfg.workers, "worker threads (0 = all cores)")->capture_default_str();
    }
    if (o.list) s->add_option("--n-list", cfg.n_list, "comma-separated n values")->delimiter(',')->required();
    if (o.ratios) {
      s->add_option("--ratio-l", ratio_l, "l/n as a rational, e.g. 1/2")->required();
      s->add_option("--ratio-m", ratio_m, "m/l as a rational");
    }
    s->add_option("--out", out_path, "output file (default: derived name under $ORBITWAVE_OUT or .)");
    s->add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    subs.emplace_back(s, c);
  };
  add(Command::radial, "radial densities on [0, r_max]", {.state = true, .lm = true, .extent = true});
  add(Command::angular, "polar-angle densities on [0, pi]", {.state = true, .lm = true});
  add(Command::density3d, "3D densities on an (r, theta) grid", {.state = true, .lm = true, .extent = true});
  add(Command::oscillator, "1D oscillator densities", {.state = true, .extent = true});
  add(Command::oracle, "Monte Carlo histogram against the analytic density",
      {.state = true, .lm = true, .oracle = true, .points = false});
  add(Command::converge, "fixed-ratio convergence table", {.list = true, .ratios = true});
  add(Command::limit, "l = 0 vs l = 1 singular-limit table", {.list = true});

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return {std::nullopt, kExitOk};
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return {std::nullopt, kExitOk};
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return {std::nullopt, kExitUsage};
  }

  for (auto& [s, c] : subs) {
    if (!s->parsed()) continue;
    cfg.command = c;
    auto given = [&](const char* name) {
      try {
        return s->get_option(name)->count() > 0;
      } catch (const CLI::OptionNotFound&) {
        return false;
      }
    };
    if (given("--n")) cfg.n = n;
    if (given("--l")) cfg.l = l;
    if (given("--m")) cfg.m = m;
    if (given("--points")) cfg.points = points;
    if (given("--out")) cfg.out = out_path;
  }
  try {
    if (r_max != "auto") {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(r_max, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != r_max.size()) throw UsageError("--r-max must be a number or 'auto', got '" + r_max + "'");
      cfg.r_max = v;
    }
    cfg.phase_mode = phase == "uniform-phase" ? PhaseMode::uniform_phase : PhaseMode::two_branch;
    cfg.observable = observable == "angular" ? Observable::angular : Observable::radial;
    cfg.format = format == "json" ? Format::json : Format::csv;
    if (!ratio_l.empty()) cfg.ratio_l = Rational::parse(ratio_l);
    if (!ratio_m.empty()) cfg.ratio_m = Rational::parse(ratio_m);
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return {std::nullopt, kExitUsage};
  }
  return {cfg, kExitOk};
}

/// parse + run.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  auto parsed = parse(argc, argv, out, err);
  if (!parsed.config) return parsed.exit_code;
  return run(*parsed.config, out, err);
}

}  // namespace orbitwave::cli
