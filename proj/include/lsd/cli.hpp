#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lsd/simulate.hpp"
#include "lsd/spectral_model.hpp"
#include "lsd/stieltjes.hpp"

namespace lsd::cli {

/// Process exit codes; stable across releases.
enum ExitCode : int {
  kOk = 0,
  kConfigError = 1,     ///< bad flags, invalid model, unreadable filter file
  kSolverError = 2,     ///< non-convergence, bracketing, eigensolver or grid coverage failure
  kThresholdFailed = 3, ///< compare: ks_distance not below --ks-threshold
  kIoError = 4,         ///< output could not be written
};

enum class Command { Density, Support, Simulate, Compare };

struct RunConfig {
  Command command = Command::Density;
  ModelSpec model;
  std::optional<std::string> filter_file;
  std::optional<double> c;  ///< as given; simulate/compare can derive it from p/n
  GridSpec grid;
  SolverConfig solver;
  PanelConfig panel;
  bool p_given = false;
  bool n_given = false;
  std::optional<std::string> out;
  std::optional<std::string> panel_out;
  double ks_threshold = 0.05;
};

/// Parses argv (argv[0] is the program name). Returns the exit code on
/// parse failure or --help, after printing to `err`/`out`.
std::variant<RunConfig, int> parse(int argc, const char* const* argv, std::ostream& out,
                                   std::ostream& err);

/// Runs a parsed configuration, writing the artifact to cfg.out or `out`.
int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lsd::cli
