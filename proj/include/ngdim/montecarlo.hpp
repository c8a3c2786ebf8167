#ifndef NGDIM_MONTECARLO_HPP
#define NGDIM_MONTECARLO_HPP

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ngdim/bootstrap.hpp"
#include "ngdim/structural_model.hpp"

namespace ngdim {

struct Scenario {
  std::string name;
  StructuralModel model;
};

struct MonteCarloConfig {
  std::vector<Scenario> scenarios;
  int sample_size = 250;     // T
  int replications = 100;    // m
  int order_tag = 3;
  std::vector<double> grid = {0.0};
  BootstrapConfig boot;      // per-run settings; seed is the root seed
  int workers = 1;           // outer pool over Monte Carlo replications
};

/// Rejection counts of each null H_{0,s} per scenario. A replication
/// counts as rejecting H_{0,s} when the sequential procedure reached step
/// s and its bootstrap p-value fell below alpha.
struct MonteCarloTable {
  std::vector<std::string> scenario_names;
  std::vector<std::vector<int>> reject_counts;  // [scenario][step]
  std::vector<std::vector<int>> estimated_rank_counts;  // [scenario][rank]
  int replications = 0;
  int dims = 0;
  int sample_size = 0;
  int order_tag = 0;
  std::vector<double> grid;
  double alpha = 0.0;
  int bootstrap_B = 0;
  std::uint64_t seed = 0;
  std::string mode;

  double rejection_rate(std::size_t scenario, std::size_t step) const;
  nlohmann::json to_json() const;
  std::string to_csv() const;
  std::string to_table() const;
};

MonteCarloTable run_montecarlo(
    const MonteCarloConfig& config,
    const std::function<void(const std::string&)>& progress = nullptr);

}  // namespace ngdim

#endif
