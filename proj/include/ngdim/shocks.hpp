#ifndef NGDIM_SHOCKS_HPP
#define NGDIM_SHOCKS_HPP

#include <string>
#include <vector>

#include "ngdim/rng.hpp"

namespace ngdim {

/// Standardized (mean 0, variance 1) shock distribution descriptor.
/// Supported kinds:
///   gaussian      - standard normal
///   exponential   - unit exponential shifted to mean 0 (skewness 2)
///   mixture       - normal mixture, re-standardized at construction
///   user_moments  - Fleishman cubic-of-normal transform matched to the
///                   requested third and fourth marginal cumulants
class ShockSpec {
 public:
  enum class Kind { Gaussian, Exponential, Mixture, UserMoments };

  static ShockSpec gaussian();
  static ShockSpec exponential();
  static ShockSpec mixture(std::vector<double> weights,
                           std::vector<double> means,
                           std::vector<double> sds);
  static ShockSpec user_moments(double kappa3, double kappa4);

  Kind kind() const { return kind_; }
  std::string kind_name() const;

  double sample(Rng& rng) const;

  /// Population marginal cumulant of order k in {2,3,4}; order 2 is 1.
  double marginal_cumulant(int k) const;

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& means() const { return means_; }
  const std::vector<double>& sds() const { return sds_; }

 private:
  ShockSpec() = default;

  Kind kind_ = Kind::Gaussian;
  // Mixture parameters (component means/sds before standardization).
  std::vector<double> weights_, means_, sds_;
  double mix_mean_ = 0.0, mix_sd_ = 1.0;
  // Fleishman coefficients for user_moments: x = a + b z + c z^2 + d z^3.
  double fl_a_ = 0.0, fl_b_ = 1.0, fl_c_ = 0.0, fl_d_ = 0.0;
  double kappa3_ = 0.0, kappa4_ = 0.0;
};

}  // namespace ngdim

#endif
