#include "ngdim/montecarlo.hpp"

#include <atomic>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ngdim/csv.hpp"
#include "ngdim/errors.hpp"
#include "ngdim/parallel.hpp"
#include "ngdim/simulate.hpp"

namespace ngdim {

using nlohmann::json;

double MonteCarloTable::rejection_rate(std::size_t scenario,
                                       std::size_t step) const {
  return static_cast<double>(reject_counts[scenario][step]) /
         static_cast<double>(replications);
}

MonteCarloTable run_montecarlo(
    const MonteCarloConfig& config,
    const std::function<void(const std::string&)>& progress) {
  if (config.scenarios.empty())
    throw ValidationError("run_montecarlo: scenario list is empty");
  if (config.replications < 1)
    throw ValidationError("run_montecarlo: need at least one replication");
  config.boot.validate();
  const int d = config.scenarios.front().model.dim();
  for (const auto& s : config.scenarios)
    if (s.model.dim() != d)
      throw ValidationError("run_montecarlo: scenarios mix dimensions");

  MonteCarloTable table;
  table.replications = config.replications;
  table.dims = d;
  table.sample_size = config.sample_size;
  table.order_tag = config.order_tag;
  table.grid = config.grid;
  table.alpha = config.boot.alpha;
  table.bootstrap_B = config.boot.replications;
  table.seed = config.boot.seed;
  table.mode = config.boot.mode_name();

  for (std::size_t sc = 0; sc < config.scenarios.size(); ++sc) {
    const auto& scenario = config.scenarios[sc];
    table.scenario_names.push_back(scenario.name);
    std::vector<std::vector<int>> per_rep(
        static_cast<std::size_t>(config.replications));
    std::vector<int> rank_of_rep(
        static_cast<std::size_t>(config.replications), 0);
    std::atomic<int> done{0};

    parallel_for(config.replications, config.workers, [&](int rep) {
      const std::uint64_t rep_seed =
          split_seed(config.boot.seed, (sc + 1) * 1000003ULL +
                                           static_cast<std::uint64_t>(rep));
      Matrix y = simulate_svarma(scenario.model, config.sample_size,
                                 split_seed(rep_seed, 1));
      BootstrapConfig boot = config.boot;
      boot.seed = split_seed(rep_seed, 2);
      boot.workers = 1;  // replication-level pool only
      SequentialResult result =
          sequential_test(y, config.order_tag, config.grid, boot);
      std::vector<int> rejected;
      for (const auto& step : result.steps)
        rejected.push_back(step.p_value < boot.alpha ? 1 : 0);
      per_rep[static_cast<std::size_t>(rep)] = std::move(rejected);
      rank_of_rep[static_cast<std::size_t>(rep)] = result.estimated_rank;
      const int finished = done.fetch_add(1) + 1;
      if (progress && (finished % 10 == 0 || finished == config.replications))
        progress(scenario.name + ": " + std::to_string(finished) + "/" +
                 std::to_string(config.replications) + " replications");
    });

    std::vector<int> counts(static_cast<std::size_t>(d), 0);
    for (const auto& rep : per_rep)
      for (std::size_t s = 0; s < rep.size(); ++s) counts[s] += rep[s];
    std::vector<int> rank_counts(static_cast<std::size_t>(d + 1), 0);
    for (int r : rank_of_rep) ++rank_counts[static_cast<std::size_t>(r)];
    table.reject_counts.push_back(std::move(counts));
    table.estimated_rank_counts.push_back(std::move(rank_counts));
  }
  return table;
}

json MonteCarloTable::to_json() const {
  json rows = json::array();
  for (std::size_t sc = 0; sc < scenario_names.size(); ++sc) {
    json rates = json::array();
    for (std::size_t s = 0; s < reject_counts[sc].size(); ++s)
      rates.push_back(rejection_rate(sc, s));
    rows.push_back({{"scenario", scenario_names[sc]},
                    {"reject_counts", reject_counts[sc]},
                    {"rejection_rates", rates},
                    {"estimated_rank_counts", estimated_rank_counts[sc]}});
  }
  return json{{"rows", rows},
              {"metadata",
               {{"replications", replications},
                {"dims", dims},
                {"sample_size", sample_size},
                {"order", order_tag},
                {"grid", grid},
                {"alpha", alpha},
                {"bootstrap_B", bootstrap_B},
                {"seed", seed},
                {"mode", mode}}}};
}

std::string MonteCarloTable::to_csv() const {
  std::ostringstream out;
  out << "scenario";
  for (int s = 1; s <= dims; ++s) out << ",reject_H0_" << s;
  out << "\n";
  for (std::size_t sc = 0; sc < scenario_names.size(); ++sc) {
    out << scenario_names[sc];
    for (std::size_t s = 0; s < reject_counts[sc].size(); ++s)
      out << "," << format_double(rejection_rate(sc, s));
    out << "\n";
  }
  return out.str();
}

std::string MonteCarloTable::to_table() const {
  std::ostringstream out;
  out << "T=" << sample_size << "  m=" << replications
      << "  B=" << bootstrap_B << "  alpha=" << alpha << "  order="
      << order_tag << "  mode=" << mode << "\n";
  out << "rejection rates per null hypothesis\n";
  char line[256];
  std::snprintf(line, sizeof(line), "%-24s", "scenario");
  out << line;
  for (int s = 1; s <= dims; ++s) {
    std::snprintf(line, sizeof(line), "  H0,%d    ", s);
    out << line;
  }
  out << "\n";
  for (std::size_t sc = 0; sc < scenario_names.size(); ++sc) {
    std::snprintf(line, sizeof(line), "%-24s", scenario_names[sc].c_str());
    out << line;
    for (std::size_t s = 0; s < reject_counts[sc].size(); ++s) {
      std::snprintf(line, sizeof(line), "  %6.3f ", rejection_rate(sc, s));
      out << line;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace ngdim
