#pragma once

#include "rddr/detection.hpp"
#include "rddr/solvers.hpp"
#include "rddr/synthetic.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace rddr::cli {

/// Version stamped into every JSON artifact as "schema_version".
inline constexpr int kSchemaVersion = 1;

enum class Command { Generate, Solve, Detect, Bench };
enum class SolverKind { Ladmap, Irls, Weighted, Sparse };

/// User-supplied overrides of the solver's default schedule.
struct OptionOverrides {
  std::optional<double> rho;
  std::optional<double> mu0;
  std::optional<double> mu_max;
  std::optional<double> eps;
  std::optional<int> max_iter;
  std::optional<int> outer_iters;
  std::optional<double> weight_floor;
};

struct RunConfig {
  Command command = Command::Generate;
  std::filesystem::path out_dir = ".";
  GenSpec gen;  // generate, bench
  SolverKind solver = SolverKind::Ladmap;
  double lambda = 1.0;
  double beta = 0.0;
  OptionOverrides overrides;
  std::filesystem::path x_path;  // solve
  std::filesystem::path d_path;  // solve
  std::filesystem::path z_path;  // detect
  std::optional<std::filesystem::path> truth_path;  // detect
  FlagStrategy strategy = LargestGap{};

  /// Throws Error(InvalidArgument) on inconsistent settings, e.g. the sparse
  /// solver with beta <= 0 or a missing input file.
  void validate() const;
};

SolverKind parse_solver(const std::string& name);
std::string solver_label(SolverKind kind);
/// "gap", "median:<fraction>" or "abs:<tau>".
FlagStrategy parse_strategy(const std::string& text);
std::string strategy_label(const FlagStrategy& strategy);

/// Default schedule for the solver with the overrides applied.
SolverOptions resolve_options(SolverKind kind, const OptionOverrides& overrides);

/// Executes one command and writes its artifacts into config.out_dir.
/// Returns 0 on success and 2 when a solve diverged (the partial report is
/// still written). Errors are thrown as rddr::Error.
int run_command(const RunConfig& config);

/// Full command-line entry point: parses args (without the program name),
/// runs the command, and reports failures as a JSON error object on err.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace rddr::cli
