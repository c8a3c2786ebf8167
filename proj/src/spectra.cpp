#include "ngdim/spectra.hpp"

#include <cmath>

#include <Eigen/SVD>
#include <unsupported/Eigen/FFT>

#include "ngdim/errors.hpp"

namespace ngdim {

namespace {

double wrap_to_pi(double x) {
  const double two_pi = 2.0 * M_PI;
  double w = std::fmod(x, two_pi);
  if (w <= -M_PI) w += two_pi;
  if (w > M_PI) w -= two_pi;
  return w;
}

double parzen(double x) {
  const double a = std::abs(x);
  if (a <= 0.5) return 1.0 - 6.0 * a * a + 6.0 * a * a * a;
  if (a <= 1.0) {
    const double b = 1.0 - a;
    return 2.0 * b * b * b;
  }
  return 0.0;
}

int grid_index(double lambda, int n) {
  const double pos = lambda * n / (2.0 * M_PI);
  long j = std::lround(pos);
  long m = j % n;
  if (m < 0) m += n;
  return static_cast<int>(m);
}

void check_grid_aligned(double lambda, int n) {
  const double pos = lambda * n / (2.0 * M_PI);
  if (std::abs(pos - std::lround(pos)) > 1e-9)
    throw ValidationError(
        "frequency not aligned with the Fourier grid (violates the "
        "zero-sum constraint on grid tuples)");
}

}  // namespace

double FrequencyTuple::implied() const {
  double s = 0.0;
  for (double e : entries) s += e;
  return wrap_to_pi(-s);
}

FrequencyTuple FrequencyTuple::for_scalar(int order, double lambda) {
  if (order < 2 || order > 4)
    throw ValidationError("FrequencyTuple: order must be 2, 3 or 4");
  FrequencyTuple f;
  f.order = order;
  f.entries.assign(static_cast<std::size_t>(order - 1), 0.0);
  f.entries[0] = wrap_to_pi(lambda);
  return f;
}

int SmoothingConfig::resolve_n_dft(int T) const {
  if (n_dft > 0) {
    if (n_dft < T)
      throw ValidationError("SmoothingConfig: n_dft must be >= T");
    return n_dft;
  }
  return (T % 2 == 0) ? T : T + 1;
}

int SmoothingConfig::resolve_span(int T) const {
  const int s = span > 0 ? span : T / 4;
  const int n = resolve_n_dft(T);
  if (s < 1)
    throw ValidationError("SmoothingConfig: smoothing span must be >= 1");
  if (2 * s + 1 > n)
    throw ValidationError("SmoothingConfig: span larger than Fourier grid");
  return s;
}

double SmoothingConfig::bandwidth(int T) const {
  return 2.0 * M_PI * resolve_span(T) / resolve_n_dft(T);
}

ComplexVector dft(const Vector& series, const SmoothingConfig& config) {
  if (!series.allFinite())
    throw NumericError("dft: series contains non-finite values");
  const int T = static_cast<int>(series.size());
  const int n = config.resolve_n_dft(T);
  std::vector<Complex> input(static_cast<std::size_t>(n), Complex(0.0, 0.0));
  for (int t = 0; t < T; ++t)
    input[static_cast<std::size_t>(t)] = Complex(series(t), 0.0);
  std::vector<Complex> output;
  Eigen::FFT<double> fft;
  fft.fwd(output, input);
  return Eigen::Map<const ComplexVector>(output.data(), n);
}

Complex periodogram_k(const Matrix& residuals, const MultiIndex& c,
                      const FrequencyTuple& freqs,
                      const SmoothingConfig& config) {
  const int k = freqs.order;
  if (c.order != k)
    throw ValidationError("periodogram_k: index and tuple order mismatch");
  const int T = static_cast<int>(residuals.rows());
  const int d = static_cast<int>(residuals.cols());
  const int n = config.resolve_n_dft(T);

  std::vector<int> idx;
  for (double lambda : freqs.entries) {
    check_grid_aligned(lambda, n);
    idx.push_back(grid_index(lambda, n));
  }
  int sum = 0;
  for (int j : idx) sum += j;
  idx.push_back(((n - sum % n) % n + n) % n);

  ComplexMatrix z(n, d);
  for (int col = 0; col < d; ++col)
    z.col(col) = dft(residuals.col(col), config);

  Complex prod(1.0, 0.0);
  for (int j = 0; j < k; ++j)
    prod *= z(idx[static_cast<std::size_t>(j)],
              c.entries[static_cast<std::size_t>(j)] - 1);
  const double norm =
      std::pow(2.0 * M_PI, -(k - 1)) / static_cast<double>(T);
  return norm * prod;
}

SpectrumEstimator::SpectrumEstimator(const Matrix& residuals,
                                     const SmoothingConfig& config) {
  if (!residuals.allFinite())
    throw NumericError("SpectrumEstimator: non-finite residuals");
  T_ = static_cast<int>(residuals.rows());
  d_ = static_cast<int>(residuals.cols());
  if (T_ < 20) throw ValidationError("SpectrumEstimator: sample too short");
  n_ = config.resolve_n_dft(T_);
  span_ = config.resolve_span(T_);
  bandwidth_ = 2.0 * M_PI * span_ / n_;

  SmoothingConfig resolved;
  resolved.n_dft = n_;
  resolved.span = span_;
  dft_raw_.resize(n_, d_);
  dft_demeaned_.resize(n_, d_);
  for (int col = 0; col < d_; ++col) {
    Vector column = residuals.col(col);
    dft_raw_.col(col) = dft(column, resolved);
    Vector centered = column.array() - column.mean();
    dft_demeaned_.col(col) = dft(centered, resolved);
  }
}

double SpectrumEstimator::rate(int k) const {
  return std::sqrt(std::pow(bandwidth_, k - 1) * T_);
}

double SpectrumEstimator::rate_for_tag(int tag) const {
  if (tag == 3 || tag == 4) return rate(tag);
  if (tag == 34) return std::min(rate(3), rate(4));
  throw ValidationError("rate_for_tag: order tag must be 3, 4 or 34");
}

SpectralArray SpectrumEstimator::estimate(int k,
                                          const FrequencyTuple& freqs) const {
  if (k < 2 || k > 4)
    throw ValidationError("estimate_spectrum: order must be 2, 3 or 4");
  if (freqs.order != k)
    throw ValidationError("estimate_spectrum: tuple order mismatch");
  const int n = n_;
  const int d = d_;
  const ComplexMatrix& z = (k == 2) ? dft_raw_ : dft_demeaned_;

  // Snap the target tuple to the Fourier grid.
  std::vector<int> center;
  FrequencyTuple snapped;
  snapped.order = k;
  for (double lambda : freqs.entries) {
    const int j = grid_index(lambda, n);
    center.push_back(j);
    snapped.entries.push_back(wrap_to_pi(2.0 * M_PI * j / n));
  }

  std::vector<double> kernel(static_cast<std::size_t>(2 * span_ + 1));
  for (int o = -span_; o <= span_; ++o)
    kernel[static_cast<std::size_t>(o + span_)] =
        parzen(static_cast<double>(o) / span_);

  long long rows = 1;
  for (int i = 0; i < k - 1; ++i) rows *= d;
  ComplexMatrix acc =
      ComplexMatrix::Zero(static_cast<Eigen::Index>(rows), d);
  double weight_sum = 0.0;

  auto wrap = [n](int t) {
    int m = t % n;
    return m < 0 ? m + n : m;
  };

  if (k == 2) {
    const int c0 = center[0];
    for (int o = -span_; o <= span_; ++o) {
      const double w = kernel[static_cast<std::size_t>(o + span_)];
      if (w == 0.0) continue;
      const int t1 = wrap(c0 + o);
      const int t2 = wrap(-t1);
      if (t1 == 0) continue;
      weight_sum += w;
      // column binds the implied slot t2, row binds t1
      acc.noalias() += w * (z.row(t1).transpose() * z.row(t2));
    }
  } else if (k == 3) {
    const int c0 = center[0], c1 = center[1];
    ComplexVector row_factor(d * d);
    for (int o1 = -span_; o1 <= span_; ++o1) {
      const double w1 = kernel[static_cast<std::size_t>(o1 + span_)];
      if (w1 == 0.0) continue;
      const int t1 = wrap(c0 + o1);
      if (t1 == 0) continue;
      for (int o2 = -span_; o2 <= span_; ++o2) {
        const double w = w1 * kernel[static_cast<std::size_t>(o2 + span_)];
        if (w == 0.0) continue;
        const int t2 = wrap(c1 + o2);
        const int t3 = wrap(-t1 - t2);
        if (t2 == 0 || t3 == 0) continue;
        weight_sum += w;
        // rows bind (t2 slow, t1 fast); column binds the implied t3
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b)
            row_factor(a * d + b) = z(t2, a) * z(t1, b);
        acc.noalias() += w * (row_factor * z.row(t3));
      }
    }
  } else {
    const int c0 = center[0], c1 = center[1], c2 = center[2];
    ComplexVector row_factor(d * d * d);
    for (int o1 = -span_; o1 <= span_; ++o1) {
      const double w1 = kernel[static_cast<std::size_t>(o1 + span_)];
      if (w1 == 0.0) continue;
      const int t1 = wrap(c0 + o1);
      if (t1 == 0) continue;
      for (int o2 = -span_; o2 <= span_; ++o2) {
        const double w2 = w1 * kernel[static_cast<std::size_t>(o2 + span_)];
        if (w2 == 0.0) continue;
        const int t2 = wrap(c1 + o2);
        if (t2 == 0 || (t1 + t2) % n == 0) continue;
        for (int o3 = -span_; o3 <= span_; ++o3) {
          const double w = w2 * kernel[static_cast<std::size_t>(o3 + span_)];
          if (w == 0.0) continue;
          const int t3 = wrap(c2 + o3);
          const int t4 = wrap(-t1 - t2 - t3);
          // Exclude lower-order submanifolds: any zero coordinate or any
          // pair summing to zero (pairs and their complements coincide).
          if (t3 == 0 || t4 == 0) continue;
          if ((t1 + t3) % n == 0 || (t2 + t3) % n == 0) continue;
          weight_sum += w;
          for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
              for (int c = 0; c < d; ++c)
                row_factor((a * d + b) * d + c) =
                    z(t3, a) * z(t2, b) * z(t1, c);
          acc.noalias() += w * (row_factor * z.row(t4));
        }
      }
    }
  }

  if (weight_sum <= 0.0)
    throw NumericError("estimate_spectrum: empty smoothing set");
  const double norm = std::pow(2.0 * M_PI, -(k - 1)) /
                      (static_cast<double>(T_) * weight_sum);

  SpectralArray out;
  out.order = k;
  out.frequency = snapped;
  out.values = norm * acc;
  out.a_T = rate(k);
  return out;
}

TargetMatrix SpectrumEstimator::target(int order_tag, double lambda) const {
  if (order_tag == 3 || order_tag == 4)
    return target_matrix(
        estimate(order_tag, FrequencyTuple::for_scalar(order_tag, lambda)));
  if (order_tag == 34)
    return target_matrix(estimate(3, FrequencyTuple::for_scalar(3, lambda)),
                         estimate(4, FrequencyTuple::for_scalar(4, lambda)));
  throw ValidationError("target: order tag must be 3, 4 or 34");
}

SpectralArray estimate_spectrum(const Matrix& residuals, int k,
                                const FrequencyTuple& freqs,
                                const SmoothingConfig& config) {
  return SpectrumEstimator(residuals, config).estimate(k, freqs);
}

namespace {

Matrix gram_real(const SpectralArray& spec) {
  ComplexMatrix g2 = spec.values.adjoint() * spec.values;
  Matrix pi = g2.real();
  return 0.5 * (pi + pi.transpose());
}

}  // namespace

TargetMatrix target_matrix(const SpectralArray& spec) {
  if (spec.order != 3 && spec.order != 4)
    throw ValidationError("target_matrix: single-order targets use k=3 or 4");
  TargetMatrix out;
  out.values = gram_real(spec);
  out.source_frequency = spec.frequency.entries.empty()
                             ? 0.0
                             : spec.frequency.entries.front();
  out.order_tag = spec.order;
  return out;
}

TargetMatrix target_matrix(const SpectralArray& g3, const SpectralArray& g4) {
  if (g3.order != 3 || g4.order != 4)
    throw ValidationError("target_matrix: stacked form needs orders 3 and 4");
  if (g3.values.cols() != g4.values.cols())
    throw ValidationError("target_matrix: dimension mismatch across orders");
  if (std::abs(wrap_to_pi(g3.frequency.implied() - g4.frequency.implied())) >
      1e-9)
    throw ValidationError(
        "target_matrix: implied scalar frequencies differ across orders");
  Matrix pi3 = gram_real(g3);
  Matrix pi4 = gram_real(g4);
  // Units differ across blocks; normalize each by its top singular value.
  auto normalize = [](Matrix& m) {
    const double top = m.jacobiSvd().singularValues()(0);
    if (top > 1e-300) m /= top;
  };
  normalize(pi3);
  normalize(pi4);
  const auto d = pi3.cols();
  TargetMatrix out;
  out.values.resize(2 * d, d);
  out.values.topRows(d) = pi3;
  out.values.bottomRows(d) = pi4;
  out.source_frequency = g3.frequency.entries.front();
  out.order_tag = 34;
  return out;
}

int numerical_rank(const Matrix& m, double rel_tol) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const Vector& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cutoff = rel_tol * sv(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;
  return rank;
}

}  // namespace ngdim
