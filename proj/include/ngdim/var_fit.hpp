#ifndef NGDIM_VAR_FIT_HPP
#define NGDIM_VAR_FIT_HPP

#include <vector>

#include "ngdim/types.hpp"

namespace ngdim {

/// Least-squares VAR(p) fit with intercept:
///   y_t = c + sum_j Phi_j y_{t-j} + u_t.
struct ReducedFormFit {
  std::vector<Matrix> ar_coeffs;  // Phi_1 .. Phi_p
  Vector intercept;
  Matrix residuals;   // (T - p) x d, rows t = p+1 .. T
  Matrix sigma_u;     // residual covariance, divide by T - p
  int order_p = 0;
  bool order_fallback = false;  // auto selection failed, fell back to p = 1
  Matrix presample;   // first p rows of the fitted sample (rebuild init)

  double companion_radius() const;
};

/// Equation-by-equation OLS at a fixed lag order.
ReducedFormFit fit_var(const Matrix& data, int p);

/// Lag order chosen by AIC over 1..max_p on a common effective sample;
/// falls back to p = 1 (with the fallback flag set) if selection fails.
ReducedFormFit fit_var_auto(const Matrix& data, int max_p = 8);

/// Rebuilds observables from innovations through the fitted recursion:
///   y*_t = c + sum_j Phi_j y*_{t-j} + u*_t,
/// seeded with init_block (p rows). Output stacks init_block on top of the
/// recursion, one output row per innovation row.
Matrix rebuild_series(const ReducedFormFit& fit, const Matrix& u_star,
                      const Matrix& init_block);

}  // namespace ngdim

#endif
