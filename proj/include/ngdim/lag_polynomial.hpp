#ifndef NGDIM_LAG_POLYNOMIAL_HPP
#define NGDIM_LAG_POLYNOMIAL_HPP

#include <vector>

#include "ngdim/types.hpp"

namespace ngdim {

/// Matrix lag polynomial I + sign * sum_j coeff_j z^j. The autoregressive
/// convention is Phi(z) = I - sum Phi_j z^j (sign -1); the moving-average
/// convention is Theta(z) = I + sum Theta_j z^j (sign +1).
struct LagPolynomial {
  std::vector<Matrix> coefficients;
  double sign = 1.0;

  static LagPolynomial ar(std::vector<Matrix> coeffs);
  static LagPolynomial ma(std::vector<Matrix> coeffs);

  int dim() const;
  int degree() const { return static_cast<int>(coefficients.size()); }
  bool empty() const { return coefficients.empty(); }

  ComplexMatrix value(Complex z) const;
};

/// Minimum of |det Phi(z) det Theta(z)| over an equispaced grid on the
/// unit circle. Values below 1e-6 indicate a (numerical) unit root.
double min_unit_circle_determinant(const LagPolynomial& ar,
                                   const LagPolynomial& ma,
                                   int grid_points = 512);

/// Companion matrix of the recursion y_t = sum_j A_j y_{t-j}.
Matrix companion_matrix(const std::vector<Matrix>& coeffs);

double spectral_radius(const Matrix& m);

}  // namespace ngdim

#endif
