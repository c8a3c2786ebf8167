#include "ngdim/bootstrap.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include "ngdim/errors.hpp"
#include "ngdim/parallel.hpp"

namespace ngdim {

using nlohmann::json;

void BootstrapConfig::validate() const {
  if (replications < 99)
    throw ValidationError("BootstrapConfig: need at least 99 replications");
  if (block_prob < 0.0 || block_prob > 1.0)
    throw ValidationError("BootstrapConfig: block probability in (0,1]");
  if (alpha <= 0.0 || alpha >= 1.0)
    throw ValidationError("BootstrapConfig: alpha in (0,1)");
  if (xi_replications < 50)
    throw ValidationError("BootstrapConfig: need >= 50 weighting replicates");
  if (max_retries < 0)
    throw ValidationError("BootstrapConfig: max_retries must be >= 0");
  if (var_order < 0)
    throw ValidationError("BootstrapConfig: var_order must be >= 0");
}

BootstrapConfig::Mode BootstrapConfig::mode_from_name(const std::string& name) {
  if (name == "gaussian") return Mode::GaussianProjection;
  if (name == "guay") return Mode::GuayProjection;
  throw ValidationError("unknown projection mode '" + name +
                        "' (use gaussian or guay)");
}

std::string BootstrapConfig::mode_name() const {
  return mode == Mode::GaussianProjection ? "gaussian" : "guay";
}

Matrix stationary_bootstrap(const Matrix& rows, double p, Rng& rng) {
  if (p <= 0.0 || p > 1.0)
    throw ValidationError("stationary_bootstrap: p must lie in (0,1]");
  const int n = static_cast<int>(rows.rows());
  if (n < 2) throw ValidationError("stationary_bootstrap: too few rows");
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, n - 1);
  Matrix out(n, rows.cols());
  int idx = pick(rng);
  out.row(0) = rows.row(idx);
  for (int t = 1; t < n; ++t) {
    if (unif(rng) < p)
      idx = pick(rng);
    else
      idx = (idx + 1) % n;
    out.row(t) = rows.row(idx);
  }
  return out;
}

Matrix stationary_bootstrap(const Matrix& rows, double p, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  return stationary_bootstrap(rows, p, rng);
}

namespace {

struct CovRoots {
  Matrix sqrt;
  Matrix inv_sqrt;
};

CovRoots symmetric_roots(const Matrix& sigma) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sigma);
  if (eig.info() != Eigen::Success)
    throw NumericError("restricted_resample: covariance eigensolve failed");
  const Vector& ev = eig.eigenvalues();
  if (ev.minCoeff() <= 1e-12 * std::max(ev.maxCoeff(), 1e-300))
    throw NumericError(
        "restricted_resample: residual covariance is not positive definite");
  CovRoots roots;
  roots.sqrt = eig.eigenvectors() *
               ev.cwiseSqrt().asDiagonal() * eig.eigenvectors().transpose();
  roots.inv_sqrt = eig.eigenvectors() *
                   ev.cwiseSqrt().cwiseInverse().asDiagonal() *
                   eig.eigenvectors().transpose();
  return roots;
}

double default_block_prob(const BootstrapConfig& config, int n) {
  if (config.block_prob > 0.0) return config.block_prob;
  return 1.0 / std::ceil(std::cbrt(static_cast<double>(n)));
}

}  // namespace

Matrix restricted_resample(const ReducedFormFit& fit, const SvdSplit& split,
                           int r_s, const BootstrapConfig& config, Rng& rng) {
  const int d = static_cast<int>(fit.sigma_u.rows());
  if (r_s < 0 || r_s >= d)
    throw ValidationError("restricted_resample: r_s must lie in [0, d-1]");
  if (split.r2.rows() != d)
    throw ValidationError(
        "restricted_resample: split right basis does not match residuals");

  const CovRoots roots = symmetric_roots(fit.sigma_u);
  const Matrix r2_tail = split.r2.rightCols(d - r_s);
  const Matrix gauss_map = roots.sqrt * r2_tail;  // d x (d - r_s)

  Matrix keep;  // projector applied to the resampled residuals
  if (config.mode == BootstrapConfig::Mode::GaussianProjection) {
    keep = Matrix::Identity(d, d) -
           gauss_map * r2_tail.transpose() * roots.inv_sqrt;
  } else {
    const Matrix r2_head = split.r2.leftCols(r_s);
    keep = roots.sqrt * r2_head * r2_head.transpose() * roots.inv_sqrt;
  }

  const int n = static_cast<int>(fit.residuals.rows());
  const double p = default_block_prob(config, n);
  Matrix u_tilde = stationary_bootstrap(fit.residuals, p, rng);

  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix eta(n, d - r_s);
  for (int j = 0; j < d - r_s; ++j)
    for (int t = 0; t < n; ++t) eta(t, j) = normal(rng);

  Matrix u_star =
      u_tilde * keep.transpose() + eta * gauss_map.transpose();
  return rebuild_series(fit, u_star, fit.presample);
}

namespace {

std::uint64_t chain_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b,
                         std::uint64_t c) {
  return mix_seed(mix_seed(mix_seed(mix_seed(root) ^ a) ^ b) ^ c);
}

struct StepWeighting {
  std::vector<Matrix> cov;  // per grid frequency, scaled covariance
  bool null_restricted = false;
};

}  // namespace

SequentialResult sequential_test(
    const Matrix& data, int order_tag, const std::vector<double>& grid,
    const BootstrapConfig& config,
    const std::function<void(const std::string&)>& progress) {
  const auto t_start = std::chrono::steady_clock::now();
  config.validate();
  if (order_tag != 3 && order_tag != 4 && order_tag != 34)
    throw ValidationError("sequential_test: order must be 3, 4 or 34");
  if (grid.empty())
    throw ValidationError("sequential_test: frequency grid is empty");
  for (double g : grid)
    if (g < 0.0 || g > M_PI + 1e-12)
      throw ValidationError("sequential_test: grid frequencies lie in [0,pi]");
  if (data.rows() < 100)
    throw ValidationError("sequential_test: need at least 100 observations");
  if (!data.allFinite())
    throw NumericError("sequential_test: data contains non-finite values");

  const int d = static_cast<int>(data.cols());
  const int n_grid = static_cast<int>(grid.size());
  const int B = config.replications;

  ReducedFormFit fit = config.var_order > 0
                           ? fit_var(data, config.var_order)
                           : fit_var_auto(data);

  SpectrumEstimator original(fit.residuals, config.smoothing);
  const double a_T = original.rate_for_tag(order_tag);
  std::vector<TargetMatrix> targets0;
  targets0.reserve(static_cast<std::size_t>(n_grid));
  for (double lambda : grid) targets0.push_back(original.target(order_tag, lambda));

  // Targets for one residual panel at every grid frequency, vectorized.
  auto vectorized_targets = [&](const Matrix& residuals) {
    SpectrumEstimator est(residuals, config.smoothing);
    std::vector<Vector> out;
    out.reserve(static_cast<std::size_t>(n_grid));
    for (double lambda : grid) {
      const Matrix pi = est.target(order_tag, lambda).values;
      out.push_back(Eigen::Map<const Vector>(pi.data(), pi.size()));
    }
    return out;
  };

  SequentialResult result;
  result.order_tag = order_tag;
  result.grid = grid;
  result.fitted_order = fit.order_p;
  result.order_fallback = fit.order_fallback;
  result.B = B;
  result.block_prob =
      default_block_prob(config, static_cast<int>(fit.residuals.rows()));
  result.alpha = config.alpha;
  result.mode = config.mode_name();
  result.seed = config.seed;
  result.xi_replications = config.xi_replications;
  result.n_dft = original.n_dft();
  result.span = original.span();
  result.bandwidth = original.bandwidth();

  std::atomic<int> total_retries{0};

  // One full restricted pipeline replicate: resample under the null at
  // rank r (projection from the split at the first grid frequency),
  // rebuild observables, refit, and return the vectorized targets.
  auto restricted_targets = [&](const SvdSplit& proj, int r,
                                std::uint64_t seed_value) {
    Rng rng = make_rng(seed_value);
    Matrix y_star = restricted_resample(fit, proj, r, config, rng);
    ReducedFormFit refit = fit_var(y_star, fit.order_p);
    return vectorized_targets(refit.residuals);
  };

  auto with_retries = [&](std::uint64_t step_tag, std::uint64_t kind,
                          int replicate,
                          const std::function<std::vector<Vector>(
                              std::uint64_t)>& body) {
    for (int attempt = 0;; ++attempt) {
      const std::uint64_t seed_value = chain_seed(
          config.seed, step_tag * 8 + kind,
          static_cast<std::uint64_t>(replicate),
          static_cast<std::uint64_t>(attempt));
      try {
        return body(seed_value);
      } catch (const ValidationError&) {
        throw;
      } catch (const Error&) {
        if (attempt >= config.max_retries)
          throw NumericError(
              "sequential_test: replicate kept failing after retries");
        ++total_retries;
      }
    }
  };

  for (int s = 1; s <= d; ++s) {
    const int r = s - 1;
    if (progress)
      progress("step " + std::to_string(s) + " (null rank " +
               std::to_string(r) + ")");

    std::vector<SvdSplit> splits0;
    splits0.reserve(static_cast<std::size_t>(n_grid));
    for (const auto& target : targets0) splits0.push_back(svd_split(target, r));

    // Weighting covariances per frequency. Step one uses null-restricted
    // replicates (the Gaussian-null covariance); later steps use
    // unrestricted stationary-bootstrap replicates of the residual panel.
    const std::uint64_t step_tag = static_cast<std::uint64_t>(s);
    const int n_xi = config.xi_replications;
    std::vector<std::vector<Vector>> xi_draws(
        static_cast<std::size_t>(n_xi));
    const bool first_step = (s == 1);
    auto draw_weighting = [&](bool null_restricted) {
      parallel_for(n_xi, config.workers, [&](int i) {
        xi_draws[static_cast<std::size_t>(i)] = with_retries(
            step_tag, null_restricted ? 1 : 2, i,
            [&](std::uint64_t seed_value) {
              if (null_restricted)
                return restricted_targets(splits0.front(), r, seed_value);
              Rng rng = make_rng(seed_value);
              Matrix resampled = stationary_bootstrap(
                  fit.residuals, result.block_prob, rng);
              return vectorized_targets(resampled);
            });
      });
      StepWeighting weighting;
      weighting.null_restricted = null_restricted;
      const double scale =
          null_restricted ? std::pow(a_T, 4.0) : a_T * a_T;
      for (int g = 0; g < n_grid; ++g) {
        std::vector<Vector> replicates;
        replicates.reserve(static_cast<std::size_t>(n_xi));
        for (const auto& draw : xi_draws)
          replicates.push_back(draw[static_cast<std::size_t>(g)]);
        weighting.cov.push_back(scale * estimate_xi(replicates));
      }
      return weighting;
    };

    StepWeighting weighting = draw_weighting(first_step);

    // Past step one the null-restricted fallback runs through the
    // quadratic-rate form; the bootstrap covariance absorbs the rate, so
    // the value matches the quartic-rate display.
    auto stat_for_split = [&](const SvdSplit& split, int g) -> KpStatistic {
      const Matrix& cov = weighting.cov[static_cast<std::size_t>(g)];
      KpStatistic stat;
      if (weighting.null_restricted && split.null_rank == 0)
        stat = kp_first_step(split, cov, a_T);
      else if (weighting.null_restricted)
        stat = kp_statistic(split, (1.0 / (a_T * a_T)) * cov, a_T);
      else
        stat = kp_statistic(split, cov, a_T);
      stat.frequency = grid[static_cast<std::size_t>(g)];
      return stat;
    };

    auto statistic_for = [&](const std::vector<SvdSplit>& splits)
        -> KpStatistic {
      std::vector<KpStatistic> stats;
      stats.reserve(static_cast<std::size_t>(n_grid));
      for (int g = 0; g < n_grid; ++g)
        stats.push_back(stat_for_split(splits[static_cast<std::size_t>(g)], g));
      return max_statistic(stats);
    };

    KpStatistic kp0;
    try {
      kp0 = statistic_for(splits0);
    } catch (const DegenerateWeightingError&) {
      // Unrestricted replicate covariance collapsed; fall back to the
      // null-restricted (step-one form) weighting for this step.
      weighting = draw_weighting(true);
      kp0 = statistic_for(splits0);
    }

    // Restricted bootstrap replicates for the p-value.
    std::vector<double> kp_star(static_cast<std::size_t>(B));
    parallel_for(B, config.workers, [&](int b) {
      const auto draws = with_retries(
          step_tag, 3, b, [&](std::uint64_t seed_value) {
            return restricted_targets(splits0.front(), r, seed_value);
          });
      std::vector<KpStatistic> stats;
      stats.reserve(static_cast<std::size_t>(n_grid));
      for (int g = 0; g < n_grid; ++g) {
        const auto& flat = draws[static_cast<std::size_t>(g)];
        const int rows = static_cast<int>(targets0.front().values.rows());
        Matrix pi = Eigen::Map<const Matrix>(flat.data(), rows, d);
        stats.push_back(stat_for_split(svd_split(pi, r), g));
      }
      kp_star[static_cast<std::size_t>(b)] = max_statistic(stats).value;
    });

    int exceed = 0;
    for (double v : kp_star)
      if (v >= kp0.value) ++exceed;
    const double p_value = (1.0 + exceed) / (1.0 + B);

    StepResult step;
    step.null_rank = r;
    step.kp = kp0.value;
    step.p_value = p_value;
    step.nu_hat = kp0.nu_hat;
    step.frequency = kp0.frequency;
    result.steps.push_back(step);
    result.stopping_step = s;

    if (p_value >= config.alpha) {
      result.estimated_rank = r;
      break;
    }
    result.estimated_rank = d;
  }

  result.retries_used = total_retries.load();
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return result;
}

json SequentialResult::to_json() const {
  json steps_j = json::array();
  for (const auto& s : steps) {
    steps_j.push_back({{"null_rank", s.null_rank},
                       {"kp", s.kp},
                       {"p_value", s.p_value},
                       {"nu_hat", s.nu_hat},
                       {"frequency", s.frequency}});
  }
  return json{{"estimated_rank", estimated_rank},
              {"stopping_step", stopping_step},
              {"order", order_tag},
              {"grid", grid},
              {"steps", steps_j},
              {"fitted_var_order", fitted_order},
              {"var_order_fallback", order_fallback},
              {"wall_seconds", wall_seconds},
              {"config",
               {{"replications", B},
                {"block_prob", block_prob},
                {"alpha", alpha},
                {"mode", mode},
                {"seed", seed},
                {"xi_replications", xi_replications},
                {"n_dft", n_dft},
                {"span", span},
                {"bandwidth", bandwidth},
                {"retries", retries_used}}}};
}

std::string SequentialResult::to_table() const {
  std::ostringstream out;
  out << "step  null-rank  kp-statistic     p-value  decision\n";
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    char line[128];
    std::snprintf(line, sizeof(line), "%4zu  %9d  %12.4f  %10.4f  %s\n",
                  i + 1, s.null_rank, s.kp, s.p_value,
                  s.p_value >= alpha ? "not rejected" : "rejected");
    out << line;
  }
  out << "estimated non-Gaussian dimension: " << estimated_rank << "\n";
  return out.str();
}

}  // namespace ngdim
