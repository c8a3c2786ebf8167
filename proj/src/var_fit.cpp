#include "ngdim/var_fit.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "ngdim/errors.hpp"
#include "ngdim/lag_polynomial.hpp"

namespace ngdim {

double ReducedFormFit::companion_radius() const {
  if (ar_coeffs.empty()) return 0.0;
  return spectral_radius(companion_matrix(ar_coeffs));
}

namespace {

ReducedFormFit fit_var_window(const Matrix& data, int p, int t_start) {
  const int d = static_cast<int>(data.cols());
  const int T = static_cast<int>(data.rows());
  const int n_obs = T - t_start;
  const int n_reg = 1 + d * p;

  Matrix X(n_obs, n_reg);
  Matrix Y(n_obs, d);
  for (int i = 0; i < n_obs; ++i) {
    const int t = t_start + i;
    X(i, 0) = 1.0;
    for (int j = 1; j <= p; ++j)
      X.block(i, 1 + (j - 1) * d, 1, d) = data.row(t - j);
    Y.row(i) = data.row(t);
  }

  Matrix xtx = X.transpose() * X;
  Eigen::LDLT<Matrix> ldlt(xtx);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      ldlt.vectorD().minCoeff() <= 1e-10 * ldlt.vectorD().maxCoeff())
    throw NumericError("fit_var: singular regressor cross-product");
  Matrix beta = ldlt.solve(X.transpose() * Y);  // n_reg x d

  ReducedFormFit fit;
  fit.order_p = p;
  fit.intercept = beta.row(0);
  fit.ar_coeffs.reserve(static_cast<std::size_t>(p));
  for (int j = 1; j <= p; ++j)
    fit.ar_coeffs.push_back(beta.block(1 + (j - 1) * d, 0, d, d).transpose());
  fit.residuals = Y - X * beta;
  fit.sigma_u = fit.residuals.transpose() * fit.residuals /
                static_cast<double>(n_obs);
  fit.presample = data.topRows(p);
  return fit;
}

}  // namespace

ReducedFormFit fit_var(const Matrix& data, int p) {
  const int d = static_cast<int>(data.cols());
  const int T = static_cast<int>(data.rows());
  if (p < 1) throw ValidationError("fit_var: lag order must be >= 1");
  if (T <= d * p + d + 10)
    throw ValidationError("fit_var: sample too short for lag order " +
                          std::to_string(p));
  if (!data.allFinite())
    throw NumericError("fit_var: data contains non-finite values");
  return fit_var_window(data, p, p);
}

ReducedFormFit fit_var_auto(const Matrix& data, int max_p) {
  const int d = static_cast<int>(data.cols());
  const int T = static_cast<int>(data.rows());
  if (!data.allFinite())
    throw NumericError("fit_var: data contains non-finite values");
  int cap = max_p;
  while (cap > 1 && T <= d * cap + d + 10) --cap;

  int best_p = -1;
  double best_aic = std::numeric_limits<double>::infinity();
  for (int p = 1; p <= cap; ++p) {
    try {
      // Common effective sample across candidate orders.
      ReducedFormFit fit = fit_var_window(data, p, cap);
      const double n_eff = static_cast<double>(T - cap);
      const double log_det =
          Eigen::LDLT<Matrix>(fit.sigma_u).vectorD().array().log().sum();
      const double aic = log_det + 2.0 * (p * d * d + d) / n_eff;
      if (std::isfinite(aic) && aic < best_aic) {
        best_aic = aic;
        best_p = p;
      }
    } catch (const NumericError&) {
      // Candidate order unusable; skip.
    }
  }
  if (best_p < 0) {
    ReducedFormFit fit = fit_var(data, 1);
    fit.order_fallback = true;
    return fit;
  }
  return fit_var(data, best_p);
}

Matrix rebuild_series(const ReducedFormFit& fit, const Matrix& u_star,
                      const Matrix& init_block) {
  const int d = static_cast<int>(fit.sigma_u.rows());
  const int p = fit.order_p;
  if (init_block.rows() != p || init_block.cols() != d)
    throw ValidationError("rebuild_series: init block must be p x d");
  if (u_star.cols() != d)
    throw ValidationError("rebuild_series: innovation dimension mismatch");
  if (fit.companion_radius() >= 1.0)
    throw NumericError("rebuild_series: unstable fitted recursion");

  const int n = static_cast<int>(u_star.rows());
  Matrix y(p + n, d);
  y.topRows(p) = init_block;
  for (int i = 0; i < n; ++i) {
    const int t = p + i;
    Vector acc = fit.intercept + u_star.row(i).transpose();
    for (int j = 1; j <= p; ++j)
      acc += fit.ar_coeffs[static_cast<std::size_t>(j - 1)] *
             y.row(t - j).transpose();
    y.row(t) = acc;
  }
  if (!y.allFinite())
    throw NumericError("rebuild_series: propagation produced non-finite values");
  return y;
}

}  // namespace ngdim
