#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "ngdim/errors.hpp"
#include "ngdim/shocks.hpp"
#include "ngdim/spectra.hpp"

using ngdim::Complex;
using ngdim::ComplexVector;
using ngdim::FrequencyTuple;
using ngdim::Matrix;
using ngdim::MultiIndex;
using ngdim::SmoothingConfig;
using ngdim::Vector;

namespace {

Matrix iid_panel(int T, int d, unsigned seed, bool exponential = false) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::exponential_distribution<double> ed(1.0);
  Matrix x(T, d);
  for (int j = 0; j < d; ++j)
    for (int t = 0; t < T; ++t)
      x(t, j) = exponential ? ed(rng) - 1.0 : nd(rng);
  return x;
}

// O(T^2) reference transform.
ComplexVector direct_dft(const Vector& x, int n) {
  ComplexVector z = ComplexVector::Zero(n);
  for (int j = 0; j < n; ++j)
    for (int t = 0; t < x.size(); ++t)
      z(j) += x(t) * std::exp(Complex(0.0, -2.0 * M_PI * j * t / n));
  return z;
}

}  // namespace

TEST_SUITE("spectra") {
  TEST_CASE("dft basics: constant, impulse, single tone") {
    SmoothingConfig cfg;
    Vector constant = Vector::Constant(64, 3.5);
    auto z = ngdim::dft(constant, cfg);
    CHECK(std::abs(z(0) - Complex(64 * 3.5, 0.0)) < 1e-9);

    Vector impulse = Vector::Zero(64);
    impulse(0) = 1.0;
    z = ngdim::dft(impulse, cfg);
    for (int j = 0; j < 64; ++j) CHECK(std::abs(z(j) - 1.0) < 1e-12);

    const int T = 128;
    Vector tone(T);
    for (int t = 0; t < T; ++t) tone(t) = std::cos(2.0 * M_PI * 5 * t / T);
    z = ngdim::dft(tone, cfg);
    CHECK(std::abs(z(5)) == doctest::Approx(T / 2.0).epsilon(1e-9));
    CHECK(std::abs(z(17)) < 1e-9);
    auto oracle = direct_dft(tone, T);
    CHECK((z - oracle).cwiseAbs().maxCoeff() < 1e-8);
  }

  TEST_CASE("dft zero-pads odd lengths to even grids") {
    SmoothingConfig cfg;
    Vector x = iid_panel(251, 1, 3).col(0);
    auto z = ngdim::dft(x, cfg);
    CHECK(z.size() == 252);
    auto oracle = direct_dft(x, 252);
    CHECK((z - oracle).cwiseAbs().maxCoeff() < 1e-7);
  }

  TEST_CASE("periodogram at k=2 reduces to the univariate periodogram") {
    Matrix x = iid_panel(200, 2, 5);
    SmoothingConfig cfg;
    const int n = 200;
    for (int j : {1, 17, 63}) {
      const double lambda = 2.0 * M_PI * j / n;
      auto value = ngdim::periodogram_k(x, MultiIndex({2, 2}),
                                        FrequencyTuple::for_scalar(2, lambda),
                                        cfg);
      auto z = ngdim::dft(x.col(1), cfg);
      const Complex expected = z(j) * z(n - j) / (2.0 * M_PI * 200.0);
      CHECK(std::abs(value - expected) < 1e-12);
      CHECK(std::abs(value.imag()) < 1e-9);  // |z|^2 is real
    }
  }

  TEST_CASE("periodogram of an all-zero panel is zero") {
    Matrix x = Matrix::Zero(128, 2);
    auto value = ngdim::periodogram_k(
        x, MultiIndex({1, 2, 1}),
        FrequencyTuple::for_scalar(3, 2.0 * M_PI * 10 / 128),
        SmoothingConfig{});
    CHECK(std::abs(value) == 0.0);
    // off-grid frequencies violate the zero-sum grid constraint
    FrequencyTuple off;
    off.order = 3;
    off.entries = {0.5, 0.0};
    CHECK_THROWS_AS(
        ngdim::periodogram_k(x, MultiIndex({1, 2, 1}), off, SmoothingConfig{}),
        ngdim::ValidationError);
  }

  TEST_CASE("periodogram at the zero triple equals the product of sums") {
    Matrix x = iid_panel(150, 3, 9);
    SmoothingConfig cfg;
    auto value = ngdim::periodogram_k(x, MultiIndex({1, 2, 3}),
                                      FrequencyTuple::for_scalar(3, 0.0), cfg);
    const double expected = x.col(0).sum() * x.col(1).sum() * x.col(2).sum() /
                            (std::pow(2.0 * M_PI, 2) * 150.0);
    CHECK(std::abs(value - Complex(expected, 0.0)) < 1e-10);
  }

  TEST_CASE("periodogram rejects off-grid frequencies") {
    Matrix x = iid_panel(100, 1, 1);
    FrequencyTuple f;
    f.order = 2;
    f.entries = {0.1234};  // not a multiple of 2*pi/100
    CHECK_THROWS_AS(
        ngdim::periodogram_k(x, MultiIndex({1, 1}), f, SmoothingConfig{}),
        ngdim::ValidationError);
  }

  TEST_CASE("white-noise second-order spectrum is flat at Sigma/(2 pi)") {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> nd(0.0, 1.0);
    Matrix b(2, 2);
    b << 1.0, 0.0, 0.7, 0.5;
    const Matrix sigma = b * b.transpose();
    const int T = 5000;
    Matrix x(T, 2);
    for (int t = 0; t < T; ++t) {
      Eigen::Vector2d e(nd(rng), nd(rng));
      x.row(t) = (b * e).transpose();
    }
    ngdim::SpectrumEstimator estimator(x, SmoothingConfig{});
    for (double lambda : {0.0, M_PI / 2, 3.0}) {
      auto s = estimator.estimate(2, FrequencyTuple::for_scalar(2, lambda));
      Matrix re = s.values.real();
      CHECK((re - sigma / (2.0 * M_PI)).cwiseAbs().maxCoeff() <
            0.1 * sigma.cwiseAbs().maxCoeff());
      CHECK(s.values.imag().cwiseAbs().maxCoeff() < 0.05);
    }
  }

  TEST_CASE("second-order spectrum integrates back to the covariance") {
    Matrix x = iid_panel(5000, 2, 77);
    ngdim::SpectrumEstimator estimator(x, SmoothingConfig{});
    Matrix avg = Matrix::Zero(2, 2);
    const int points = 100;
    for (int i = 0; i < points; ++i) {
      const double lambda = -M_PI + 2.0 * M_PI * (i + 0.5) / points;
      avg += estimator.estimate(2, FrequencyTuple::for_scalar(2, lambda))
                 .values.real();
    }
    avg *= 2.0 * M_PI / points;
    Matrix centered = x.rowwise() - x.colwise().mean();
    Matrix cov = centered.transpose() * centered / 5000.0;
    CHECK((avg - cov).cwiseAbs().maxCoeff() < 0.05 * cov.cwiseAbs().maxCoeff());
  }

  TEST_CASE("gaussian third-order spectrum vanishes (MC median)") {
    std::vector<double> maxima;
    for (unsigned seed = 1; seed <= 5; ++seed) {
      Matrix x = iid_panel(5000, 2, seed);
      auto s = ngdim::estimate_spectrum(
          x, 3, FrequencyTuple::for_scalar(3, 0.0), SmoothingConfig{});
      maxima.push_back(s.values.cwiseAbs().maxCoeff());
    }
    std::sort(maxima.begin(), maxima.end());
    CHECK(maxima[2] < 0.15);
  }

  TEST_CASE("iid exponential bispectrum hits kappa3/(2 pi)^2") {
    const double expected = 2.0 / std::pow(2.0 * M_PI, 2);
    std::vector<double> values;
    for (unsigned seed = 1; seed <= 5; ++seed) {
      Matrix x = iid_panel(5000, 1, seed, /*exponential=*/true);
      auto s = ngdim::estimate_spectrum(
          x, 3, FrequencyTuple::for_scalar(3, 0.0), SmoothingConfig{});
      values.push_back(s.values(0, 0).real());
      CHECK(std::abs(s.values(0, 0).imag()) < 1e-10);
    }
    std::sort(values.begin(), values.end());
    CHECK(std::abs(values[2] - expected) < 0.35 * expected);
  }

  TEST_CASE("fourth-order estimator separates mesokurtic from heavy tails") {
    // Excess-kurtosis-20 shocks against Gaussian ones; the pair-sum
    // submanifold exclusion keeps the Gaussian median near zero.
    SmoothingConfig cfg;
    cfg.span = 96;
    auto heavy = ngdim::ShockSpec::user_moments(0.0, 20.0);
    std::vector<double> gauss_vals, heavy_vals;
    for (unsigned seed = 1; seed <= 9; ++seed) {
      ngdim::Rng rng = ngdim::make_rng(seed * 7);
      std::normal_distribution<double> nd(0.0, 1.0);
      Matrix g(1024, 1), h(1024, 1);
      for (int t = 0; t < 1024; ++t) g(t, 0) = nd(rng);
      for (int t = 0; t < 1024; ++t) h(t, 0) = heavy.sample(rng);
      gauss_vals.push_back(
          ngdim::estimate_spectrum(g, 4, FrequencyTuple::for_scalar(4, 0.0),
                                   cfg)
              .values(0, 0)
              .real());
      heavy_vals.push_back(
          ngdim::estimate_spectrum(h, 4, FrequencyTuple::for_scalar(4, 0.0),
                                   cfg)
              .values(0, 0)
              .real());
    }
    std::sort(gauss_vals.begin(), gauss_vals.end());
    std::sort(heavy_vals.begin(), heavy_vals.end());
    CHECK(std::abs(gauss_vals[4]) < 0.02);
    CHECK(heavy_vals[4] > 0.02);
  }

  TEST_CASE("conjugation symmetry at negated tuples") {
    Matrix x = iid_panel(300, 2, 13, /*exponential=*/true);
    SmoothingConfig cfg;
    FrequencyTuple f;
    f.order = 3;
    const int n = 300;
    f.entries = {2.0 * M_PI * 30 / n, 2.0 * M_PI * 45 / n};
    FrequencyTuple neg;
    neg.order = 3;
    neg.entries = {-f.entries[0], -f.entries[1]};
    auto a = ngdim::estimate_spectrum(x, 3, f, cfg);
    auto b = ngdim::estimate_spectrum(x, 3, neg, cfg);
    CHECK((a.values.conjugate() - b.values).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("rank target is real at lambda 0 and pi") {
    Matrix x = iid_panel(400, 2, 19, /*exponential=*/true);
    ngdim::SpectrumEstimator estimator(x, SmoothingConfig{});
    for (double lambda : {0.0, M_PI}) {
      auto s = estimator.estimate(3, FrequencyTuple::for_scalar(3, lambda));
      ngdim::ComplexMatrix g2 = s.values.adjoint() * s.values;
      CHECK(g2.imag().cwiseAbs().maxCoeff() < 1e-10);
    }
  }

  TEST_CASE("population rank identity through an exact cumulant matrix") {
    // Identity filter: the spectrum matrix is the cumulant matrix itself.
    Vector marginals(3);
    marginals << 2.0, 0.0, 0.0;
    auto v3 = ngdim::cumulant_matrix_from_marginals(3, marginals);
    ngdim::SpectralArray s;
    s.order = 3;
    s.frequency = FrequencyTuple::for_scalar(3, 0.0);
    s.values = v3.values.cast<Complex>();
    s.a_T = 1.0;
    auto target = ngdim::target_matrix(s);
    CHECK(ngdim::numerical_rank(target.values) == 1);
    CHECK(target.order_tag == 3);

    s.values.setZero();
    auto zero_target = ngdim::target_matrix(s);
    CHECK(zero_target.values.cwiseAbs().maxCoeff() == 0.0);
    CHECK(ngdim::numerical_rank(zero_target.values) == 0);
  }

  TEST_CASE("targets are symmetric positive semidefinite") {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      ngdim::SpectralArray s;
      s.order = 3;
      s.frequency = FrequencyTuple::for_scalar(3, 0.7);
      s.values.resize(9, 3);
      for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 3; ++j)
          s.values(i, j) = Complex(nd(rng), nd(rng));
      auto target = ngdim::target_matrix(s);
      const Matrix& pi = target.values;
      CHECK((pi - pi.transpose()).cwiseAbs().maxCoeff() < 1e-12);
      Eigen::SelfAdjointEigenSolver<Matrix> eig(pi);
      CHECK(eig.eigenvalues().minCoeff() >
            -1e-8 * eig.eigenvalues().maxCoeff());
    }
  }

  TEST_CASE("stacked target normalizes blocks and checks frequencies") {
    Matrix x = iid_panel(256, 2, 29, /*exponential=*/true);
    SmoothingConfig cfg;
    cfg.span = 32;
    ngdim::SpectrumEstimator estimator(x, cfg);
    auto t34 = estimator.target(34, 0.0);
    REQUIRE(t34.values.rows() == 4);
    REQUIRE(t34.values.cols() == 2);
    CHECK(t34.order_tag == 34);
    // each block scale-normalized to unit top singular value
    CHECK(t34.values.topRows(2).jacobiSvd().singularValues()(0) ==
          doctest::Approx(1.0));
    CHECK(t34.values.bottomRows(2).jacobiSvd().singularValues()(0) ==
          doctest::Approx(1.0));
    auto g3 = estimator.estimate(3, FrequencyTuple::for_scalar(3, 0.0));
    auto g4 = estimator.estimate(4, FrequencyTuple::for_scalar(4, M_PI / 2));
    CHECK_THROWS_AS(ngdim::target_matrix(g3, g4), ngdim::ValidationError);
  }

  TEST_CASE("smoothing configuration is validated") {
    Matrix x = iid_panel(100, 1, 3);
    SmoothingConfig bad;
    bad.span = 60;  // 2*60+1 > 100
    CHECK_THROWS_AS(
        ngdim::estimate_spectrum(x, 3, FrequencyTuple::for_scalar(3, 0.0),
                                 bad),
        ngdim::ValidationError);
    SmoothingConfig small_dft;
    small_dft.n_dft = 50;
    CHECK_THROWS_AS(
        ngdim::estimate_spectrum(x, 2, FrequencyTuple::for_scalar(2, 0.0),
                                 small_dft),
        ngdim::ValidationError);
  }

  TEST_CASE("default smoothing rule: even DFT length, span T/4") {
    SmoothingConfig cfg;
    CHECK(cfg.resolve_n_dft(250) == 250);
    CHECK(cfg.resolve_n_dft(251) == 252);
    CHECK(cfg.resolve_span(250) == 62);
    CHECK(cfg.bandwidth(250) == doctest::Approx(2.0 * M_PI * 62 / 250));
  }
}
