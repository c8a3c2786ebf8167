#ifndef NGDIM_BOOTSTRAP_HPP
#define NGDIM_BOOTSTRAP_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ngdim/rank_test.hpp"
#include "ngdim/rng.hpp"
#include "ngdim/spectra.hpp"
#include "ngdim/var_fit.hpp"

namespace ngdim {

struct BootstrapConfig {
  int replications = 199;   // B
  double block_prob = 0.0;  // 0: 1 / ceil(n^(1/3)) restart probability
  double alpha = 0.05;
  enum class Mode { GaussianProjection, GuayProjection };
  Mode mode = Mode::GaussianProjection;
  std::uint64_t seed = 0;
  int xi_replications = 100;  // replicates behind the weighting covariance
  int workers = 1;
  int var_order = 0;  // 0: AIC selection up to lag 8
  int max_retries = 5;
  SmoothingConfig smoothing;

  void validate() const;
  static Mode mode_from_name(const std::string& name);
  std::string mode_name() const;
};

struct StepResult {
  int null_rank = 0;
  double kp = 0.0;
  double p_value = 1.0;
  int nu_hat = 0;
  double frequency = 0.0;  // frequency achieving the max statistic
};

struct SequentialResult {
  int estimated_rank = 0;
  int stopping_step = 0;
  int order_tag = 0;
  std::vector<double> grid;
  std::vector<StepResult> steps;
  int fitted_order = 0;
  bool order_fallback = false;
  double wall_seconds = 0.0;
  // Resolved configuration echo.
  int B = 0;
  double block_prob = 0.0;
  double alpha = 0.0;
  std::string mode;
  std::uint64_t seed = 0;
  int xi_replications = 0;
  int n_dft = 0;
  int span = 0;
  double bandwidth = 0.0;
  int retries_used = 0;

  nlohmann::json to_json() const;
  std::string to_table() const;
};

/// Block resampling with geometric block lengths (mean 1/p) and circular
/// wrap-around; output has the same number of rows as the input.
Matrix stationary_bootstrap(const Matrix& rows, double p, Rng& rng);
Matrix stationary_bootstrap(const Matrix& rows, double p, std::uint64_t seed);

/// One null-restricted observable resample (Algorithm-style):
///   u*_t = M_r u~_t + Sigma^(1/2) R2_r eta_t,
/// with M_r = I - Sigma^(1/2) R2_r R2_r' Sigma^(-1/2), R2_r the last d-r
/// right singular columns of the rank target, u~ a stationary-bootstrap
/// resample of the fitted residuals and eta iid standard Gaussian; the
/// observables are rebuilt through the fitted recursion. Guay mode replaces
/// M_r with the projector built from the first r right singular columns.
Matrix restricted_resample(const ReducedFormFit& fit, const SvdSplit& split,
                           int r_s, const BootstrapConfig& config, Rng& rng);

/// Sequential bootstrap rank test (steps s = 1..d test rank r = s-1).
/// Stops at the first bootstrap p-value >= alpha; if every null is
/// rejected the estimated non-Gaussian dimension is d. The reported
/// p-value is (1 + #{KP* >= KP}) / (1 + B), exactly.
SequentialResult sequential_test(
    const Matrix& data, int order_tag, const std::vector<double>& grid,
    const BootstrapConfig& config,
    const std::function<void(const std::string&)>& progress = nullptr);

}  // namespace ngdim

#endif
