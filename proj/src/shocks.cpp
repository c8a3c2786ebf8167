#include "ngdim/shocks.hpp"

#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "ngdim/errors.hpp"

namespace ngdim {

ShockSpec ShockSpec::gaussian() {
  ShockSpec s;
  s.kind_ = Kind::Gaussian;
  return s;
}

ShockSpec ShockSpec::exponential() {
  ShockSpec s;
  s.kind_ = Kind::Exponential;
  s.kappa3_ = 2.0;
  s.kappa4_ = 6.0;
  return s;
}

ShockSpec ShockSpec::mixture(std::vector<double> weights,
                             std::vector<double> means,
                             std::vector<double> sds) {
  const std::size_t n = weights.size();
  if (n == 0 || means.size() != n || sds.size() != n)
    throw ValidationError("mixture: weights/means/sds must have equal size");
  double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (wsum <= 0.0) throw ValidationError("mixture: weights must sum > 0");
  for (auto& w : weights) w /= wsum;
  for (std::size_t i = 0; i < n; ++i) {
    if (weights[i] < 0.0) throw ValidationError("mixture: negative weight");
    if (sds[i] <= 0.0) throw ValidationError("mixture: sd must be positive");
  }

  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += weights[i] * means[i];
  double var = 0.0, mu3 = 0.0, mu4 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = means[i] - mean;
    const double v = sds[i] * sds[i];
    var += weights[i] * (a * a + v);
    mu3 += weights[i] * (a * a * a + 3.0 * a * v);
    mu4 += weights[i] * (a * a * a * a + 6.0 * a * a * v + 3.0 * v * v);
  }
  if (var <= 0.0) throw ValidationError("mixture: degenerate variance");

  ShockSpec s;
  s.kind_ = Kind::Mixture;
  s.weights_ = std::move(weights);
  s.means_ = std::move(means);
  s.sds_ = std::move(sds);
  s.mix_mean_ = mean;
  s.mix_sd_ = std::sqrt(var);
  s.kappa3_ = mu3 / (var * s.mix_sd_);
  s.kappa4_ = mu4 / (var * var) - 3.0;
  return s;
}

namespace {

// Central moments of a + b z + c z^2 + d z^3, z ~ N(0,1), given a = -c.
void fleishman_moments(double b, double c, double d, double& var,
                       double& skew, double& kurt) {
  var = b * b + 6.0 * b * d + 2.0 * c * c + 15.0 * d * d;
  skew = 2.0 * c * (b * b + 24.0 * b * d + 105.0 * d * d + 2.0);
  kurt = 24.0 * (b * d + c * c * (1.0 + b * b + 28.0 * b * d) +
                 d * d * (12.0 + 48.0 * b * d + 141.0 * c * c +
                          225.0 * d * d));
}

}  // namespace

ShockSpec ShockSpec::user_moments(double kappa3, double kappa4) {
  if (kappa4 < kappa3 * kappa3 - 2.0)
    throw ValidationError(
        "user_moments: infeasible cumulants (kappa4 < kappa3^2 - 2)");
  // Newton iteration on the Fleishman system for (b, c, d).
  Eigen::Vector3d x(1.0, 0.1 * kappa3, 0.01 * kappa4);
  bool converged = false;
  for (int it = 0; it < 200; ++it) {
    double var, skew, kurt;
    fleishman_moments(x(0), x(1), x(2), var, skew, kurt);
    Eigen::Vector3d f(var - 1.0, skew - kappa3, kurt - kappa4);
    if (f.norm() < 1e-12) {
      converged = true;
      break;
    }
    Eigen::Matrix3d jac;
    const double h = 1e-7;
    for (int j = 0; j < 3; ++j) {
      Eigen::Vector3d xp = x;
      xp(j) += h;
      double v2, s2, k2;
      fleishman_moments(xp(0), xp(1), xp(2), v2, s2, k2);
      jac(0, j) = (v2 - var) / h;
      jac(1, j) = (s2 - skew) / h;
      jac(2, j) = (k2 - kurt) / h;
    }
    Eigen::Vector3d step = jac.fullPivLu().solve(f);
    if (!step.allFinite()) break;
    x -= step;
  }
  if (!converged)
    throw ValidationError(
        "user_moments: Fleishman solve failed for the requested cumulants");
  ShockSpec s;
  s.kind_ = Kind::UserMoments;
  s.fl_b_ = x(0);
  s.fl_c_ = x(1);
  s.fl_d_ = x(2);
  s.fl_a_ = -x(1);
  s.kappa3_ = kappa3;
  s.kappa4_ = kappa4;
  return s;
}

std::string ShockSpec::kind_name() const {
  switch (kind_) {
    case Kind::Gaussian: return "gaussian";
    case Kind::Exponential: return "exponential";
    case Kind::Mixture: return "mixture";
    case Kind::UserMoments: return "user_moments";
  }
  return "unknown";
}

double ShockSpec::sample(Rng& rng) const {
  switch (kind_) {
    case Kind::Gaussian: {
      std::normal_distribution<double> n(0.0, 1.0);
      return n(rng);
    }
    case Kind::Exponential: {
      std::exponential_distribution<double> e(1.0);
      return e(rng) - 1.0;
    }
    case Kind::Mixture: {
      std::uniform_real_distribution<double> u(0.0, 1.0);
      double p = u(rng), acc = 0.0;
      std::size_t pick = weights_.size() - 1;
      for (std::size_t i = 0; i < weights_.size(); ++i) {
        acc += weights_[i];
        if (p <= acc) {
          pick = i;
          break;
        }
      }
      std::normal_distribution<double> n(means_[pick], sds_[pick]);
      return (n(rng) - mix_mean_) / mix_sd_;
    }
    case Kind::UserMoments: {
      std::normal_distribution<double> n(0.0, 1.0);
      double z = n(rng);
      return fl_a_ + z * (fl_b_ + z * (fl_c_ + z * fl_d_));
    }
  }
  return 0.0;
}

double ShockSpec::marginal_cumulant(int k) const {
  switch (k) {
    case 2: return 1.0;
    case 3: return kappa3_;
    case 4: return kappa4_;
    default:
      throw ValidationError("marginal_cumulant: order must be 2, 3 or 4");
  }
}

}  // namespace ngdim
