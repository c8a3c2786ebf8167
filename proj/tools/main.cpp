#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ngdim/cli.hpp"
#include "ngdim/parallel.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "ngdim - estimates the number of skewed / non-mesokurtic structural "
      "shocks in a multivariate time series from higher-order cumulant "
      "spectra of reduced-form residuals"};
  app.require_subcommand(1);

  ngdim::RunConfig config;
  config.workers = ngdim::default_workers();

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--order", config.order_tag,
                    "cumulant spectrum order: 3, 4 or 34")
        ->check(CLI::IsMember({3, 4, 34}));
    cmd->add_option("--freq", config.freq,
                    "single frequency in [0, pi] (default 0)");
    cmd->add_option("--grid", config.grid_points,
                    "use an n-point frequency grid on [0, pi] instead");
    cmd->add_option("--boot", config.boot.replications,
                    "bootstrap replications B");
    cmd->add_option("--alpha", config.boot.alpha, "nominal level");
    cmd->add_option("--seed", config.boot.seed, "root RNG seed");
    cmd->add_option("--block-prob", config.boot.block_prob,
                    "stationary bootstrap restart probability "
                    "(default 1/ceil(T^(1/3)))");
    cmd->add_option_function<std::string>(
           "--mode",
           [&config](const std::string& value) {
             config.boot.mode = ngdim::BootstrapConfig::mode_from_name(value);
           },
           "null projection mode: gaussian | guay")
        ->check(CLI::IsMember({"gaussian", "guay"}));
    cmd->add_option("--var-order", config.boot.var_order,
                    "reduced-form VAR lag order (0 = AIC up to 8)");
    cmd->add_option("--xi-boot", config.boot.xi_replications,
                    "replicates behind the weighting covariance");
    cmd->add_option("--span", config.boot.smoothing.span,
                    "smoothing span in Fourier indices (default T/4)");
    cmd->add_option("--workers", config.workers, "worker threads");
    cmd->add_flag("--quiet", config.quiet, "suppress progress output");
  };

  auto* estimate = app.add_subcommand(
      "estimate", "run the sequential rank test on a CSV panel");
  estimate->add_option("--input", config.input_path, "input CSV")->required();
  estimate->add_option("--output", config.output_path,
                       "report path prefix (.json and .txt are appended)");
  add_common(estimate);

  auto* simulate =
      app.add_subcommand("simulate", "draw a sample path from a DGP");
  simulate->add_option("--output", config.output_path, "output CSV path")
      ->required();
  simulate->add_option("--dgp", config.dgp, "preset name or model JSON file")
      ->required();
  simulate->add_option("-T,--length", config.sample_size, "sample size");
  simulate->add_option("--seed", config.boot.seed, "RNG seed");

  auto* montecarlo = app.add_subcommand(
      "montecarlo", "size/power table over simulated scenarios");
  montecarlo->add_option("--output", config.output_path,
                         "table path prefix (.csv and .json are appended)");
  montecarlo->add_option("--scenarios", config.scenarios,
                         "scenario preset (paper2d) or JSON file");
  montecarlo->add_option("-T,--length", config.sample_size, "sample size");
  montecarlo->add_option("--mc", config.mc_replications,
                         "Monte Carlo replications m");
  add_common(montecarlo);

  CLI11_PARSE(app, argc, argv);

  try {
    if (estimate->parsed()) {
      config.command = "estimate";
      ngdim::cmd_estimate(config);
    } else if (simulate->parsed()) {
      config.command = "simulate";
      ngdim::cmd_simulate(config);
    } else if (montecarlo->parsed()) {
      config.command = "montecarlo";
      ngdim::cmd_montecarlo(config);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ngdim::exit_code_for_current_exception();
  }
  return 0;
}
