#ifndef NGDIM_CLI_HPP
#define NGDIM_CLI_HPP

#include <string>
#include <vector>

#include "ngdim/montecarlo.hpp"

namespace ngdim {

/// Resolved batch-run configuration shared by the CLI subcommands.
struct RunConfig {
  std::string command;  // estimate | simulate | montecarlo
  std::string input_path;
  std::string output_path;
  int order_tag = 3;
  double freq = 0.0;    // single frequency, used when grid_points == 0
  int grid_points = 0;  // n-point grid on [0, pi]
  int sample_size = 250;   // T (simulate / montecarlo)
  int mc_replications = 100;  // m
  std::string dgp;  // preset name or JSON file path
  std::string scenarios;  // preset name or JSON file path (montecarlo)
  BootstrapConfig boot;
  int workers = 1;
  bool quiet = false;

  std::vector<double> frequency_grid() const;
};

/// Loads a CSV panel, demeans columns, runs the sequential test and writes
/// a JSON report next to a human-readable table. Returns the estimated
/// non-Gaussian dimension.
int cmd_estimate(const RunConfig& config);

/// Simulates the configured DGP to CSV with a sidecar JSON describing the
/// exact model and seed.
void cmd_simulate(const RunConfig& config);

/// Runs the scenario list through simulate -> sequential test m times each
/// and writes the rejection-rate table as CSV + JSON.
MonteCarloTable cmd_montecarlo(const RunConfig& config);

/// Resolves a DGP descriptor: a preset name or a path to a JSON file.
StructuralModel resolve_model(const std::string& descriptor);

/// Resolves a scenario list: "paper2d" (three bivariate shock mixes) or a
/// JSON file with [{"name": ..., "model": {...}}, ...].
std::vector<Scenario> resolve_scenarios(const std::string& descriptor);

/// Maps an exception to the documented process exit code
/// (2 validation, 3 ingestion, 4 numerical failure).
int exit_code_for_current_exception();

}  // namespace ngdim

#endif
