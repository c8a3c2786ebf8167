#include "ngdim/lag_polynomial.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "ngdim/errors.hpp"

namespace ngdim {

namespace {

void check_square_same_dim(const std::vector<Matrix>& coeffs) {
  for (const auto& c : coeffs) {
    if (c.rows() != c.cols() || c.rows() != coeffs.front().rows())
      throw ValidationError(
          "LagPolynomial: coefficients must be square matrices of one size");
  }
}

}  // namespace

LagPolynomial LagPolynomial::ar(std::vector<Matrix> coeffs) {
  check_square_same_dim(coeffs);
  return LagPolynomial{std::move(coeffs), -1.0};
}

LagPolynomial LagPolynomial::ma(std::vector<Matrix> coeffs) {
  check_square_same_dim(coeffs);
  return LagPolynomial{std::move(coeffs), +1.0};
}

int LagPolynomial::dim() const {
  return coefficients.empty() ? 0
                              : static_cast<int>(coefficients.front().rows());
}

ComplexMatrix LagPolynomial::value(Complex z) const {
  if (coefficients.empty())
    throw ValidationError("LagPolynomial::value on empty polynomial");
  const int d = dim();
  ComplexMatrix out = ComplexMatrix::Identity(d, d);
  Complex zp = 1.0;
  for (const auto& c : coefficients) {
    zp *= z;
    out += sign * zp * c.cast<Complex>();
  }
  return out;
}

double min_unit_circle_determinant(const LagPolynomial& ar,
                                   const LagPolynomial& ma, int grid_points) {
  double min_abs = std::numeric_limits<double>::infinity();
  for (int g = 0; g < grid_points; ++g) {
    const double omega = 2.0 * M_PI * g / grid_points;
    const Complex z(std::cos(omega), std::sin(omega));
    Complex det = 1.0;
    if (!ar.empty()) det *= ar.value(z).determinant();
    if (!ma.empty()) det *= ma.value(z).determinant();
    min_abs = std::min(min_abs, std::abs(det));
  }
  return min_abs;
}

Matrix companion_matrix(const std::vector<Matrix>& coeffs) {
  if (coeffs.empty()) throw ValidationError("companion_matrix: empty");
  const int d = static_cast<int>(coeffs.front().rows());
  const int p = static_cast<int>(coeffs.size());
  Matrix comp = Matrix::Zero(d * p, d * p);
  for (int j = 0; j < p; ++j) comp.block(0, j * d, d, d) = coeffs[j];
  if (p > 1)
    comp.block(d, 0, d * (p - 1), d * (p - 1)) =
        Matrix::Identity(d * (p - 1), d * (p - 1));
  return comp;
}

double spectral_radius(const Matrix& m) {
  Eigen::EigenSolver<Matrix> solver(m, /*computeEigenvectors=*/false);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace ngdim
