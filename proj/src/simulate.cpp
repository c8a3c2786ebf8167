#include "ngdim/simulate.hpp"

#include <cmath>

#include "ngdim/errors.hpp"
#include "ngdim/rng.hpp"

namespace ngdim {

namespace {

constexpr int kBurnIn = 500;
constexpr int kInitialTruncation = 200;

Matrix draw_shocks(const StructuralModel& model, int n, Rng& rng) {
  const int d = model.dim();
  Matrix eps(n, d);
  // Draw column-by-column so each component consumes its own substream
  // order deterministically.
  for (int j = 0; j < d; ++j)
    for (int t = 0; t < n; ++t)
      eps(t, j) = model.shocks[static_cast<std::size_t>(j)].sample(rng);
  return eps;
}

bool ar_is_causal(const StructuralModel& model) {
  if (model.ar.empty()) return true;
  return spectral_radius(companion_matrix(model.ar.coefficients)) < 1.0;
}

// y_t = sum Phi_j y_{t-j} + B eps_t + sum Theta_j B eps_{t-j}
Matrix simulate_causal(const StructuralModel& model, int T, Rng& rng) {
  const int d = model.dim();
  const int p = model.ar.degree();
  const int q = model.ma.degree();
  const int total = T + kBurnIn;
  Matrix eps = draw_shocks(model, total, rng);
  Matrix innov = eps * model.mixing.transpose();
  Matrix y = Matrix::Zero(total, d);
  for (int t = 0; t < total; ++t) {
    Vector acc = innov.row(t);
    for (int j = 1; j <= q && t - j >= 0; ++j)
      acc += model.ma.coefficients[static_cast<std::size_t>(j - 1)] *
             innov.row(t - j).transpose();
    for (int j = 1; j <= p && t - j >= 0; ++j)
      acc += model.ar.coefficients[static_cast<std::size_t>(j - 1)] *
             y.row(t - j).transpose();
    y.row(t) = acc;
  }
  return y.bottomRows(T);
}

Matrix simulate_two_sided(const StructuralModel& model, int T, Rng& rng) {
  int J = kInitialTruncation;
  std::vector<Matrix> weights;
  for (;;) {
    weights = two_sided_ma_weights(model, J);
    const double tail =
        std::max(weights.front().cwiseAbs().maxCoeff(),
                 weights.back().cwiseAbs().maxCoeff());
    if (tail < 1e-10) break;
    if (J >= 6400)
      throw NumericError(
          "simulate_svarma: two-sided weights do not decay; model is too "
          "close to a unit root");
    J *= 2;
  }
  const int d = model.dim();
  Matrix eps = draw_shocks(model, T + 2 * J, rng);
  Matrix y = Matrix::Zero(T, d);
  for (int t = 0; t < T; ++t) {
    Vector acc = Vector::Zero(d);
    // eps index for lag j: position t + J - j in the extended path.
    for (int j = -J; j <= J; ++j)
      acc += weights[static_cast<std::size_t>(j + J)] *
             eps.row(t + J - j).transpose();
    y.row(t) = acc;
  }
  return y;
}

}  // namespace

std::vector<Matrix> two_sided_ma_weights(const StructuralModel& model,
                                         int truncation) {
  const int d = model.dim();
  int n = 1;
  while (n < 8 * truncation) n *= 2;
  // Evaluate Psi(z) B on the circle, then recover Laurent coefficients.
  std::vector<ComplexMatrix> values(static_cast<std::size_t>(n));
  for (int g = 0; g < n; ++g) {
    const double omega = 2.0 * M_PI * g / n;
    const Complex z(std::cos(omega), std::sin(omega));
    ComplexMatrix phi = model.ar.empty() ? ComplexMatrix::Identity(d, d)
                                         : model.ar.value(z);
    ComplexMatrix theta = model.ma.empty() ? ComplexMatrix::Identity(d, d)
                                           : model.ma.value(z);
    values[static_cast<std::size_t>(g)] =
        phi.partialPivLu().solve(theta * model.mixing.cast<Complex>());
  }
  std::vector<Matrix> weights;
  weights.reserve(static_cast<std::size_t>(2 * truncation + 1));
  for (int j = -truncation; j <= truncation; ++j) {
    ComplexMatrix acc = ComplexMatrix::Zero(d, d);
    for (int g = 0; g < n; ++g) {
      const double omega = 2.0 * M_PI * g / n;
      const Complex rot(std::cos(omega * j), std::sin(omega * j));
      acc += rot * values[static_cast<std::size_t>(g)];
    }
    weights.push_back((acc / static_cast<double>(n)).real());
  }
  return weights;
}

Matrix simulate_svarma(const StructuralModel& model, int T,
                       std::uint64_t seed) {
  model.validate();
  if (T < 50) throw ValidationError("simulate_svarma: T must be >= 50");
  Rng rng = make_rng(seed);
  Matrix y = ar_is_causal(model) ? simulate_causal(model, T, rng)
                                 : simulate_two_sided(model, T, rng);
  if (!y.allFinite())
    throw NumericError("simulate_svarma: non-finite values in sample path");
  return y;
}

}  // namespace ngdim
