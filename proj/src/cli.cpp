#include "lsd/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lsd/errors.hpp"
#include "lsd/io.hpp"
#include "lsd/parallel.hpp"
#include "lsd/support.hpp"

namespace lsd::cli {

namespace {

using nlohmann::json;
using io::format_full;
using io::format_short;

struct Flags {
  double phi = 0.0;
  double theta = 0.0;
  std::optional<double> c;
  std::size_t grid_points = 400;
  std::optional<double> x_lo, x_hi;
  double epsilon = SolverConfig{}.epsilon;
  double tol = SolverConfig{}.tol;
  int max_iter = SolverConfig{}.max_iter;
  std::optional<std::size_t> p, n, burn_in;
  std::uint64_t seed = 0;
  std::optional<std::string> out, filter_file, panel_out;
  double ks_threshold = 0.05;
};

void add_model_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--phi", f.phi, "AR coefficient, |phi| < 1")->capture_default_str();
  cmd->add_option("--theta", f.theta, "MA coefficient, |theta| != 1")->capture_default_str();
  cmd->add_option("--c", f.c, "dimension-to-sample-size ratio p/n, c > 0");
  cmd->add_option("--filter-file", f.filter_file,
                  "general linear filter (one coefficient per line); quadrature mode");
  cmd->add_option("--out", f.out, "output path (default: standard output)");
}

void add_solver_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--grid-points", f.grid_points, "density grid size")->capture_default_str();
  cmd->add_option("--x-lo", f.x_lo, "grid start (default: x1 - 2% of the support width)");
  cmd->add_option("--x-hi", f.x_hi, "grid end (default: x2 + 2% of the support width)");
  cmd->add_option("--epsilon", f.epsilon, "imaginary offset of z")->capture_default_str();
  cmd->add_option("--tol", f.tol, "fixed-point tolerance")->capture_default_str();
  cmd->add_option("--max-iter", f.max_iter, "plain fixed-point iteration budget")
      ->capture_default_str();
}

void add_panel_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--p", f.p, "dimension (default 400)");
  cmd->add_option("--n", f.n, "sample size (default round(p / c))");
  cmd->add_option("--seed", f.seed, "random seed")->capture_default_str();
  cmd->add_option("--burn-in", f.burn_in, "discarded pre-sample epochs (default 1000 + filter length)");
}

std::string model_line(const RunConfig& cfg, const std::optional<LinearFilter>& filter) {
  std::ostringstream s;
  if (cfg.filter_file) {
    s << "model: filter file=" << *cfg.filter_file << " coefficients=" << filter->coeffs.size();
  } else {
    s << "model: arma phi=" << format_full(cfg.model.phi) << " theta=" << format_full(cfg.model.theta);
  }
  return s.str();
}

// Flags that regenerate the artifact, in canonical order.
std::string command_line(const RunConfig& cfg) {
  static const char* names[] = {"density", "support", "simulate", "compare"};
  std::ostringstream s;
  s << "command: " << names[static_cast<int>(cfg.command)];
  if (cfg.filter_file) {
    s << " --filter-file " << *cfg.filter_file;
  } else {
    s << " --phi " << format_full(cfg.model.phi) << " --theta " << format_full(cfg.model.theta);
  }
  s << " --c " << format_full(cfg.model.c);
  if (cfg.command == Command::Density || cfg.command == Command::Compare) {
    s << " --grid-points " << cfg.grid.n_points;
    if (cfg.grid.x_lo) s << " --x-lo " << format_full(*cfg.grid.x_lo);
    if (cfg.grid.x_hi) s << " --x-hi " << format_full(*cfg.grid.x_hi);
    s << " --epsilon " << format_full(cfg.solver.epsilon) << " --tol "
      << format_full(cfg.solver.tol) << " --max-iter " << cfg.solver.max_iter;
  }
  if (cfg.command == Command::Simulate || cfg.command == Command::Compare) {
    s << " --p " << cfg.panel.p << " --n " << cfg.panel.n << " --seed " << cfg.panel.seed;
    if (cfg.panel.burn_in) s << " --burn-in " << *cfg.panel.burn_in;
  }
  if (cfg.command == Command::Compare) s << " --ks-threshold " << format_full(cfg.ks_threshold);
  return s.str();
}

std::optional<LinearFilter> load_filter(const RunConfig& cfg) {
  if (!cfg.filter_file) return std::nullopt;
  return read_filter_file(*cfg.filter_file);
}

SupportInfo support_for(const RunConfig& cfg, const std::optional<LinearFilter>& filter) {
  if (filter) return find_support(FilterModel{*filter, cfg.model.c});
  return find_support(cfg.model);
}

DensityCurve curve_for(const RunConfig& cfg, const std::optional<LinearFilter>& filter) {
  if (filter) return density_curve(FilterModel{*filter, cfg.model.c}, cfg.grid, cfg.solver);
  return density_curve(cfg.model, cfg.grid, cfg.solver);
}

Matrix panel_for(const RunConfig& cfg, const std::optional<LinearFilter>& filter) {
  if (filter) return simulate_panel(*filter, cfg.panel);
  return simulate_panel(cfg.model, cfg.panel);
}

std::vector<std::string> density_metadata(const RunConfig& cfg,
                                          const std::optional<LinearFilter>& filter,
                                          const DensityCurve& curve) {
  return {
      "lsd density",
      model_line(cfg, filter),
      "c: " + format_full(cfg.model.c),
      "support: x1=" + format_full(curve.x1) + " x2=" + format_full(curve.x2),
      "point_mass_at_zero: " + format_full(curve.point_mass_at_zero),
      "epsilon: " + format_full(cfg.solver.epsilon) + " tol: " + format_full(cfg.solver.tol) +
          " max_iter: " + std::to_string(cfg.solver.max_iter),
      command_line(cfg),
  };
}

std::string cmd_density(const RunConfig& cfg, std::ostream& err) {
  const auto filter = load_filter(cfg);
  const DensityCurve curve = curve_for(cfg, filter);
  err << "density: support [" << format_short(curve.x1) << ", " << format_short(curve.x2)
      << "], " << curve.xs.size() << " points\n";
  std::ostringstream out;
  io::write_density_csv(out, curve, density_metadata(cfg, filter, curve));
  return out.str();
}

std::string cmd_support(const RunConfig& cfg, std::ostream& err) {
  const auto filter = load_filter(cfg);
  const SupportInfo info = support_for(cfg, filter);
  if (info.hard_edge_at_zero) err << "support: c = 1, lower edge pinned at the origin\n";
  return io::support_json(info).dump(2) + "\n";
}

std::string cmd_simulate(const RunConfig& cfg, std::ostream& err, std::string& panel_csv) {
  const auto filter = load_filter(cfg);
  const Matrix panel = panel_for(cfg, filter);
  EsdSample sample = esd_from_panel(panel, cfg.panel);
  if (cfg.panel_out) {
    std::ostringstream pc;
    io::write_panel_csv(pc, panel);
    panel_csv = pc.str();
  }
  err << "simulate: p=" << cfg.panel.p << " n=" << cfg.panel.n << " eigenvalues in ["
      << format_short(sample.eigenvalues.front()) << ", "
      << format_short(sample.eigenvalues.back()) << "]\n";
  const std::size_t burn = cfg.panel.burn_in.value_or(filter ? 0 : default_burn_in(cfg.model));
  const std::vector<std::string> meta = {
      "lsd simulate",
      model_line(cfg, filter),
      "p: " + std::to_string(cfg.panel.p) + " n: " + std::to_string(cfg.panel.n) +
          " seed: " + std::to_string(cfg.panel.seed) + " burn_in: " + std::to_string(burn),
      "c_empirical: " + format_full(cfg.panel.empirical_c()),
      command_line(cfg),
  };
  std::ostringstream out;
  io::write_eigenvalue_csv(out, sample.eigenvalues, meta);
  return out.str();
}

std::string cmd_compare(const RunConfig& cfg, std::ostream& err, bool& passed) {
  const auto filter = load_filter(cfg);
  const DensityCurve curve = curve_for(cfg, filter);
  const EsdSample sample = esd_from_panel(panel_for(cfg, filter), cfg.panel);
  const EsdComparison cmp = esd_vs_density(sample, curve);
  passed = cmp.ks_distance < cfg.ks_threshold;
  err << "compare: ks_distance=" << format_short(cmp.ks_distance)
      << " n_outside_support=" << cmp.n_outside_support << (passed ? " (pass)" : " (fail)") << "\n";
  const json report = {
      {"ks_distance", cmp.ks_distance},
      {"n_outside_support", cmp.n_outside_support},
      {"support", {{"x1", curve.x1}, {"x2", curve.x2}}},
      {"point_mass", curve.point_mass_at_zero},
      {"p", cfg.panel.p},
      {"n", cfg.panel.n},
      {"seed", cfg.panel.seed},
      {"c", cfg.model.c},
      {"c_empirical", cfg.panel.empirical_c()},
      {"ks_threshold", cfg.ks_threshold},
      {"passed", passed},
  };
  return report.dump(2) + "\n";
}

}  // namespace

std::variant<RunConfig, int> parse(int argc, const char* const* argv, std::ostream& out,
                                   std::ostream& err) {
  CLI::App app{"Limiting spectral distributions of sample covariance matrices of linear processes",
               "lsd"};
  app.require_subcommand(1);
  Flags f;

  auto* density = app.add_subcommand("density", "LSD density curve as CSV (x,density)");
  add_model_flags(density, f);
  add_solver_flags(density, f);

  auto* support = app.add_subcommand("support", "support interval and point mass as JSON");
  add_model_flags(support, f);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo eigenvalues as CSV (index,eigenvalue)");
  add_model_flags(simulate, f);
  add_panel_flags(simulate, f);
  simulate->add_option("--panel-out", f.panel_out, "also write the p x n panel as CSV, one epoch per line");

  auto* compare = app.add_subcommand("compare", "KS comparison of simulated spectrum and LSD as JSON");
  add_model_flags(compare, f);
  add_solver_flags(compare, f);
  add_panel_flags(compare, f);
  compare->add_option("--ks-threshold", f.ks_threshold, "pass threshold for ks_distance")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  RunConfig cfg;
  if (density->parsed()) cfg.command = Command::Density;
  if (support->parsed()) cfg.command = Command::Support;
  if (simulate->parsed()) cfg.command = Command::Simulate;
  if (compare->parsed()) cfg.command = Command::Compare;

  cfg.model.phi = f.phi;
  cfg.model.theta = f.theta;
  cfg.filter_file = f.filter_file;
  cfg.c = f.c;
  cfg.grid.n_points = f.grid_points;
  cfg.grid.x_lo = f.x_lo;
  cfg.grid.x_hi = f.x_hi;
  cfg.solver.epsilon = f.epsilon;
  cfg.solver.tol = f.tol;
  cfg.solver.max_iter = f.max_iter;
  cfg.panel.seed = f.seed;
  cfg.panel.burn_in = f.burn_in;
  cfg.p_given = f.p.has_value();
  cfg.n_given = f.n.has_value();
  cfg.out = f.out;
  cfg.panel_out = f.panel_out;
  cfg.ks_threshold = f.ks_threshold;

  const bool needs_panel = cfg.command == Command::Simulate || cfg.command == Command::Compare;
  if (needs_panel) {
    cfg.panel.p = f.p.value_or(400);
    if (f.n) {
      cfg.panel.n = *f.n;
    } else if (f.c && *f.c > 0.0) {
      cfg.panel.n = static_cast<std::size_t>(
          std::max(1.0, std::round(static_cast<double>(cfg.panel.p) / *f.c)));
    } else {
      err << "error: --n or --c is required\n";
      return kConfigError;
    }
    if (cfg.panel.p < 1 || cfg.panel.n < 1) {
      err << "error: panel dimensions p and n must be at least 1\n";
      return kConfigError;
    }
    cfg.model.c = f.c.value_or(cfg.panel.empirical_c());
  } else {
    if (!f.c) {
      err << "error: --c is required\n";
      return kConfigError;
    }
    cfg.model.c = *f.c;
  }
  return cfg;
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::string artifact;
  std::string panel_csv;
  int code = kOk;
  try {
    if (cfg.filter_file) {
      if (!(cfg.model.c > 0.0)) throw InvalidModel("c must be positive");
    } else {
      validate(cfg.model);
    }
    cfg.solver.validate();
    if (cfg.command != Command::Support && cfg.grid.n_points < 2) {
      throw InvalidModel("--grid-points must be at least 2");
    }
    switch (cfg.command) {
      case Command::Density:
        artifact = cmd_density(cfg, err);
        break;
      case Command::Support:
        artifact = cmd_support(cfg, err);
        break;
      case Command::Simulate:
        artifact = cmd_simulate(cfg, err, panel_csv);
        break;
      case Command::Compare: {
        bool passed = false;
        artifact = cmd_compare(cfg, err, passed);
        if (!passed) code = kThresholdFailed;
        break;
      }
    }
  } catch (const InvalidModel& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << "\n";
    return kSolverError;
  } catch (const BracketError& e) {
    err << "error: " << e.what() << "\n";
    return kSolverError;
  } catch (const Error& e) {
    // Remaining component failures: domain, eigensolver, grid coverage, internal, output.
    err << "error: " << e.what() << "\n";
    return kSolverError;
  }

  try {
    if (cfg.panel_out) io::write_atomically(*cfg.panel_out, panel_csv);
    if (cfg.out) {
      io::write_atomically(*cfg.out, artifact);
    } else {
      out << artifact;
      out.flush();
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
  return code;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  apply_thread_limit_from_env();
  auto parsed = parse(argc, argv, out, err);
  if (auto* code = std::get_if<int>(&parsed)) return *code;
  return execute(std::get<RunConfig>(parsed), out, err);
}

}  // namespace lsd::cli
