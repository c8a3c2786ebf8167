#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "ngdim/bootstrap.hpp"
#include "ngdim/errors.hpp"
#include "ngdim/simulate.hpp"
#include "ngdim/var_fit.hpp"

using ngdim::Matrix;
using ngdim::ShockSpec;
using ngdim::StructuralModel;
using ngdim::Vector;

namespace {

StructuralModel ar1_model(const Matrix& phi, const Matrix& b,
                          std::vector<ShockSpec> shocks) {
  StructuralModel m;
  m.ar = ngdim::LagPolynomial::ar({phi});
  m.mixing = b;
  m.shocks = std::move(shocks);
  return m;
}

double lag1_autocorr(const Vector& x) {
  const auto n = x.size();
  const double mean = x.mean();
  double num = 0.0, den = 0.0;
  for (Eigen::Index t = 0; t < n; ++t) {
    den += (x(t) - mean) * (x(t) - mean);
    if (t > 0) num += (x(t) - mean) * (x(t - 1) - mean);
  }
  return num / den;
}

double max_residual_autocorr(const Matrix& u, int max_lag) {
  double worst = 0.0;
  for (Eigen::Index c = 0; c < u.cols(); ++c) {
    const Vector x = u.col(c);
    const double mean = x.mean();
    double den = (x.array() - mean).square().sum();
    for (int lag = 1; lag <= max_lag; ++lag) {
      double num = 0.0;
      for (Eigen::Index t = lag; t < x.size(); ++t)
        num += (x(t) - mean) * (x(t - lag) - mean);
      worst = std::max(worst, std::abs(num / den));
    }
  }
  return worst;
}

}  // namespace

TEST_SUITE("varma") {
  TEST_CASE("pure noise with identity mixing is iid N(0, I)") {
    auto model = ar1_model(Matrix::Zero(2, 2), Matrix::Identity(2, 2),
                           {ShockSpec::gaussian(), ShockSpec::gaussian()});
    Matrix y = ngdim::simulate_svarma(model, 5000, 42);
    REQUIRE(y.rows() == 5000);
    Matrix centered = y.rowwise() - y.colwise().mean();
    Matrix cov = centered.transpose() * centered / 5000.0;
    CHECK((cov - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 0.1);
  }

  TEST_CASE("causal AR(1) shows the implied lag-1 autocorrelation") {
    auto model = ar1_model(0.5 * Matrix::Identity(2, 2),
                           Matrix::Identity(2, 2),
                           {ShockSpec::gaussian(), ShockSpec::gaussian()});
    Matrix y = ngdim::simulate_svarma(model, 5000, 7);
    CHECK(lag1_autocorr(y.col(0)) == doctest::Approx(0.5).epsilon(0.1));
    CHECK(lag1_autocorr(y.col(1)) == doctest::Approx(0.5).epsilon(0.1));
  }

  TEST_CASE("same seed gives bitwise-identical paths") {
    auto model = ngdim::preset_model("mixed2");
    Matrix a = ngdim::simulate_svarma(model, 300, 99);
    Matrix b = ngdim::simulate_svarma(model, 300, 99);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
    Matrix c = ngdim::simulate_svarma(model, 300, 100);
    CHECK((a - c).cwiseAbs().maxCoeff() > 0.0);
  }

  TEST_CASE("unit roots are rejected") {
    auto model = ar1_model(Matrix::Identity(2, 2), Matrix::Identity(2, 2),
                           {ShockSpec::gaussian(), ShockSpec::gaussian()});
    CHECK_THROWS_AS(ngdim::simulate_svarma(model, 200, 1),
                    ngdim::ValidationError);
    auto singular = ar1_model(0.5 * Matrix::Identity(2, 2), Matrix::Zero(2, 2),
                              {ShockSpec::gaussian(), ShockSpec::gaussian()});
    CHECK_THROWS_AS(ngdim::simulate_svarma(singular, 200, 1),
                    ngdim::ValidationError);
  }

  TEST_CASE("two-sided weights decay for the non-causal preset") {
    auto model = ngdim::preset_model("noncausal2");
    auto weights = ngdim::two_sided_ma_weights(model, 200);
    REQUIRE(weights.size() == 401);
    CHECK(weights.front().cwiseAbs().maxCoeff() < 1e-10);
    CHECK(weights.back().cwiseAbs().maxCoeff() < 1e-10);
    // Non-causal lead weights must actually be present.
    double lead_mass = 0.0;
    for (int j = 0; j < 200; ++j)
      lead_mass += weights[static_cast<std::size_t>(j)].cwiseAbs().sum();
    CHECK(lead_mass > 0.1);
    Matrix y = ngdim::simulate_svarma(model, 2000, 5);
    CHECK(y.allFinite());
  }

  TEST_CASE("all-pass property: non-causal DGP leaves white VAR residuals") {
    auto model = ngdim::preset_model("noncausal2");
    const int reps = 10, T = 1000;
    double avg_worst = 0.0;
    for (int r = 0; r < reps; ++r) {
      Matrix y = ngdim::simulate_svarma(model, T, 1000 + r);
      auto fit = ngdim::fit_var(y, 1);
      avg_worst += max_residual_autocorr(fit.residuals, 10);
    }
    avg_worst /= reps;
    CHECK(avg_worst < 3.0 / std::sqrt(static_cast<double>(T)));
  }

  TEST_CASE("fit_var recovers known coefficients") {
    Matrix phi(2, 2);
    phi << 0.5, 0.2, -0.1, 0.3;
    auto model = ar1_model(phi, Matrix::Identity(2, 2),
                           {ShockSpec::gaussian(), ShockSpec::gaussian()});
    Matrix y = ngdim::simulate_svarma(model, 5000, 15);
    auto fit = ngdim::fit_var(y, 1);
    CHECK((fit.ar_coeffs[0] - phi).cwiseAbs().maxCoeff() < 0.05);
    CHECK(fit.residuals.colwise().mean().cwiseAbs().maxCoeff() < 1e-8);
    CHECK(fit.companion_radius() < 1.0);
    // whiteness of residuals from the correctly specified fit
    CHECK(max_residual_autocorr(fit.residuals, 5) <
          2.0 / std::sqrt(5000.0));
    // symmetric positive definite residual covariance
    CHECK((fit.sigma_u - fit.sigma_u.transpose()).cwiseAbs().maxCoeff() <
          1e-12);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(fit.sigma_u);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
  }

  TEST_CASE("white noise fits to near-zero coefficients") {
    auto model = ar1_model(Matrix::Zero(2, 2), Matrix::Identity(2, 2),
                           {ShockSpec::gaussian(), ShockSpec::gaussian()});
    Matrix y = ngdim::simulate_svarma(model, 5000, 13);
    auto fit = ngdim::fit_var(y, 1);
    CHECK(fit.ar_coeffs[0].cwiseAbs().maxCoeff() < 0.05);
  }

  TEST_CASE("auto order selection lands near the true order") {
    Matrix phi(2, 2);
    phi << 0.6, 0.1, 0.0, 0.4;
    auto model = ar1_model(phi, Matrix::Identity(2, 2),
                           {ShockSpec::gaussian(), ShockSpec::gaussian()});
    Matrix y = ngdim::simulate_svarma(model, 2000, 18);
    auto fit = ngdim::fit_var_auto(y);
    CHECK(fit.order_p <= 2);
    CHECK(!fit.order_fallback);
  }

  TEST_CASE("fit_var validates input") {
    Matrix y = Matrix::Random(30, 2);
    CHECK_THROWS_AS(ngdim::fit_var(y, 12), ngdim::ValidationError);
    Matrix constant = Matrix::Ones(200, 2);  // collinear regressors
    CHECK_THROWS_AS(ngdim::fit_var(constant, 1), ngdim::NumericError);
  }

  TEST_CASE("rebuild_series inverts residual extraction exactly") {
    auto model = ngdim::preset_model("mixed2");
    Matrix y = ngdim::simulate_svarma(model, 400, 23);
    auto fit = ngdim::fit_var(y, 1);
    Matrix rebuilt = ngdim::rebuild_series(fit, fit.residuals, fit.presample);
    REQUIRE(rebuilt.rows() == y.rows());
    CHECK((rebuilt - y).cwiseAbs().maxCoeff() < 1e-10);
  }

  TEST_CASE("rebuild_series with zero innovations decays to the mean") {
    auto model = ngdim::preset_model("gaussian2");
    Matrix y = ngdim::simulate_svarma(model, 300, 29);
    auto fit = ngdim::fit_var(y, 1);
    Matrix zeros = Matrix::Zero(600, 2);
    Matrix path = ngdim::rebuild_series(fit, zeros, fit.presample);
    // Unconditional mean of the fitted recursion.
    Matrix eye = Matrix::Identity(2, 2);
    Vector mu = (eye - fit.ar_coeffs[0]).lu().solve(fit.intercept);
    CHECK((path.row(599).transpose() - mu).cwiseAbs().maxCoeff() < 1e-8);
  }

  TEST_CASE("bootstrap-style rebuild refits to similar coefficients") {
    auto model = ngdim::preset_model("gaussian2");
    Matrix y = ngdim::simulate_svarma(model, 2000, 31);
    auto fit = ngdim::fit_var(y, 1);
    Matrix avg = Matrix::Zero(2, 2);
    const int B = 20;
    for (int b = 0; b < B; ++b) {
      Matrix u_star = ngdim::stationary_bootstrap(
          fit.residuals, 0.1, static_cast<std::uint64_t>(500 + b));
      Matrix y_star = ngdim::rebuild_series(fit, u_star, fit.presample);
      auto refit = ngdim::fit_var(y_star, 1);
      avg += (refit.ar_coeffs[0] - fit.ar_coeffs[0]).cwiseAbs();
    }
    avg /= B;
    CHECK(avg.maxCoeff() < 0.15);
  }

  TEST_CASE("model JSON descriptors round-trip") {
    auto model = ngdim::preset_model("mn1-3d");
    auto j = model.to_json();
    auto back = StructuralModel::from_json(j);
    CHECK(back.dim() == 3);
    CHECK((back.mixing - model.mixing).cwiseAbs().maxCoeff() == 0.0);
    CHECK(back.shocks[0].kind_name() == "mixture");
    CHECK(back.shocks[0].marginal_cumulant(3) ==
          doctest::Approx(model.shocks[0].marginal_cumulant(3)));
    // identical simulated paths from the same seed
    Matrix a = ngdim::simulate_svarma(model, 200, 3);
    Matrix b = ngdim::simulate_svarma(back, 200, 3);
    CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("mn1 mixture is standardized with positive skewness") {
    auto model = ngdim::preset_model("mn1-3d");
    const auto& mn1 = model.shocks[0];
    CHECK(mn1.marginal_cumulant(3) > 0.5);
    ngdim::Rng rng = ngdim::make_rng(5);
    double sum = 0.0, sum2 = 0.0, sum3 = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
      const double x = mn1.sample(rng);
      sum += x;
      sum2 += x * x;
      sum3 += x * x * x;
    }
    CHECK(std::abs(sum / n) < 0.02);
    CHECK(sum2 / n == doctest::Approx(1.0).epsilon(0.03));
    CHECK(sum3 / n == doctest::Approx(mn1.marginal_cumulant(3)).epsilon(0.15));
  }

  TEST_CASE("user-moments shocks match their requested cumulants") {
    auto shock = ShockSpec::user_moments(1.0, 2.0);
    CHECK(shock.marginal_cumulant(3) == 1.0);
    ngdim::Rng rng = ngdim::make_rng(8);
    double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    const int n = 400000;
    for (int i = 0; i < n; ++i) {
      const double x = shock.sample(rng);
      s1 += x;
      s2 += x * x;
      s3 += x * x * x;
      s4 += x * x * x * x;
    }
    CHECK(std::abs(s1 / n) < 0.02);
    CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.03));
    CHECK(s3 / n == doctest::Approx(1.0).epsilon(0.15));
    CHECK(s4 / n - 3.0 == doctest::Approx(2.0).epsilon(0.25));
    CHECK_THROWS_AS(ShockSpec::user_moments(4.0, 0.0),
                    ngdim::ValidationError);
  }
}
