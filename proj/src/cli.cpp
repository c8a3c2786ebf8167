#include "ngdim/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

#include "ngdim/csv.hpp"
#include "ngdim/errors.hpp"
#include "ngdim/simulate.hpp"

namespace ngdim {

using nlohmann::json;

std::vector<double> RunConfig::frequency_grid() const {
  if (grid_points <= 0) return {freq};
  if (grid_points == 1) return {0.0};
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i)
    grid.push_back(M_PI * i / (grid_points - 1));
  return grid;
}

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path);
  if (!file) throw IngestionError("cannot open '" + path + "' for writing");
  file << text;
  if (!file) throw IngestionError("failed while writing '" + path + "'");
}

json load_json_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw IngestionError("cannot open JSON file '" + path + "'");
  try {
    return json::parse(file);
  } catch (const json::parse_error& e) {
    throw IngestionError("JSON parse error in '" + path + "': " + e.what());
  }
}

}  // namespace

StructuralModel resolve_model(const std::string& descriptor) {
  if (descriptor.empty())
    throw ValidationError("no DGP descriptor given (preset name or JSON path)");
  for (const auto& name : preset_model_names())
    if (descriptor == name) return preset_model(descriptor);
  if (!std::filesystem::exists(descriptor))
    throw ValidationError("DGP descriptor '" + descriptor +
                          "' is neither a preset nor an existing file");
  return StructuralModel::from_json(load_json_file(descriptor));
}

std::vector<Scenario> resolve_scenarios(const std::string& descriptor) {
  if (descriptor == "paper2d" || descriptor.empty()) {
    return {{"gaussian-gaussian", preset_model("gaussian2")},
            {"skewed-gaussian", preset_model("mixed2")},
            {"skewed-skewed", preset_model("skewed2")}};
  }
  for (const auto& name : preset_model_names())
    if (descriptor == name) return {{descriptor, preset_model(descriptor)}};
  const json j = load_json_file(descriptor);
  if (!j.is_array() || j.empty())
    throw ValidationError("scenario file must hold a nonempty array");
  std::vector<Scenario> out;
  for (const auto& item : j)
    out.push_back({item.at("name").get<std::string>(),
                   StructuralModel::from_json(item.at("model"))});
  return out;
}

int cmd_estimate(const RunConfig& config) {
  if (config.input_path.empty())
    throw ValidationError("estimate: --input CSV path is required");
  CsvTable table = read_csv(config.input_path);
  Matrix data = table.values;
  if (data.rows() < 100)
    throw ValidationError("estimate: need at least 100 observations, got " +
                          std::to_string(data.rows()));
  for (Eigen::Index c = 0; c < data.cols(); ++c)
    data.col(c).array() -= data.col(c).mean();

  const auto grid = config.frequency_grid();
  BootstrapConfig boot = config.boot;
  boot.workers = config.workers;
  auto progress = [&](const std::string& message) {
    if (!config.quiet) std::cerr << "[estimate] " << message << "\n";
  };
  SequentialResult result =
      sequential_test(data, config.order_tag, grid, boot, progress);

  json report = result.to_json();
  report["input"] = config.input_path;
  report["columns"] = table.header;
  report["rows"] = data.rows();
  if (!config.output_path.empty()) {
    write_text(config.output_path + ".json", report.dump(2) + "\n");
    write_text(config.output_path + ".txt", result.to_table());
  }
  std::cout << result.to_table();
  return result.estimated_rank;
}

void cmd_simulate(const RunConfig& config) {
  if (config.output_path.empty())
    throw ValidationError("simulate: --output CSV path is required");
  StructuralModel model = resolve_model(config.dgp);
  Matrix y = simulate_svarma(model, config.sample_size, config.boot.seed);
  std::vector<std::string> header;
  for (int j = 1; j <= model.dim(); ++j)
    header.push_back("y" + std::to_string(j));
  write_csv(config.output_path, header, y);
  json sidecar{{"model", model.to_json()},
               {"seed", config.boot.seed},
               {"T", config.sample_size}};
  write_text(config.output_path + ".model.json", sidecar.dump(2) + "\n");
}

MonteCarloTable cmd_montecarlo(const RunConfig& config) {
  MonteCarloConfig mc;
  mc.scenarios = resolve_scenarios(config.scenarios);
  mc.sample_size = config.sample_size;
  mc.replications = config.mc_replications;
  mc.order_tag = config.order_tag;
  mc.grid = config.frequency_grid();
  mc.boot = config.boot;
  mc.workers = config.workers;
  auto progress = [&](const std::string& message) {
    if (!config.quiet) std::cerr << "[montecarlo] " << message << "\n";
  };
  MonteCarloTable table = run_montecarlo(mc, progress);
  if (!config.output_path.empty()) {
    write_text(config.output_path + ".csv", table.to_csv());
    write_text(config.output_path + ".json", table.to_json().dump(2) + "\n");
  }
  std::cout << table.to_table();
  return table;
}

int exit_code_for_current_exception() {
  try {
    throw;
  } catch (const IngestionError&) {
    return 3;
  } catch (const ValidationError&) {
    return 2;
  } catch (const NumericError&) {
    return 4;
  } catch (const Error&) {
    return 4;
  } catch (const std::exception&) {
    return 1;
  }
}

}  // namespace ngdim
