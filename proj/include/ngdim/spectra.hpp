#ifndef NGDIM_SPECTRA_HPP
#define NGDIM_SPECTRA_HPP

#include <vector>

#include "ngdim/cumulants.hpp"
#include "ngdim/types.hpp"

namespace ngdim {

/// Frequency tuple (lambda_1 .. lambda_{k-1}) for an order-k spectrum;
/// the k-th coordinate is implied by the zero-sum constraint.
struct FrequencyTuple {
  int order = 0;
  std::vector<double> entries;  // k-1 free frequencies in [-pi, pi]

  /// Implied lambda_k = -sum(entries), wrapped to (-pi, pi].
  double implied() const;

  /// Tuple (lambda, 0, ..., 0) whose implied scalar frequency is -lambda;
  /// by conjugation symmetry the rank target at -lambda equals the one
  /// at +lambda.
  static FrequencyTuple for_scalar(int order, double lambda);
};

/// Smoothing parameters for the k-fold periodogram average. Defaults follow
/// the rule: DFT length is the smallest even integer >= T and the smoothing
/// span is floor(T/4) Fourier indices, i.e. bandwidth H = 2*pi*span/n_dft.
/// Users overriding the span should keep H -> 0 with T*H^(k-1) -> infinity;
/// a span proportional to T^(4/5) (H proportional to T^(-1/5)) satisfies
/// both conditions.
struct SmoothingConfig {
  int n_dft = 0;  // 0: smallest even integer >= T
  int span = 0;   // 0: floor(T/4)

  int resolve_n_dft(int T) const;
  int resolve_span(int T) const;
  double bandwidth(int T) const;
};

/// Order-k cumulant spectrum estimate at one frequency tuple. values is the
/// d^(k-1) x d matricization whose column index binds the implied k-th
/// frequency slot; a_T = sqrt(H^(k-1) T) is the convergence-rate scalar.
struct SpectralArray {
  int order = 0;
  FrequencyTuple frequency;
  ComplexMatrix values;
  double a_T = 0.0;
};

/// Rank target Pi = Re(G_k* G_k), real d x d for a single order, or the
/// 2d x d vertical stack of the order-3 and order-4 targets (each block
/// scale-normalized by its largest singular value) for order_tag 34.
struct TargetMatrix {
  Matrix values;
  double source_frequency = 0.0;
  int order_tag = 0;  // 3, 4 or 34
};

/// Zero-padded discrete Fourier transform on the n_dft grid:
/// z(2*pi*j/n) = sum_t x_t exp(-i 2*pi*j*t/n).
ComplexVector dft(const Vector& series, const SmoothingConfig& config);

/// Sample k-fold periodogram for one component tuple (Eq.-19 convention:
/// the j-th component index binds the j-th tuple frequency).
Complex periodogram_k(const Matrix& residuals, const MultiIndex& c,
                      const FrequencyTuple& freqs,
                      const SmoothingConfig& config);

/// Caches the column DFTs of one residual panel so spectra at many
/// frequencies and orders reuse them. Thread-safe for concurrent reads.
class SpectrumEstimator {
 public:
  SpectrumEstimator(const Matrix& residuals, const SmoothingConfig& config);

  /// Kernel-weighted average of the k-fold periodogram over Fourier tuples
  /// in the smoothing span around freqs (entries snapped to the grid).
  /// Weights are a product Parzen window over the free coordinates,
  /// renormalized to sum one; tuples on lower-order submanifolds (any zero
  /// coordinate, or a zero pair sum when k = 4) are excluded.
  SpectralArray estimate(int k, const FrequencyTuple& freqs) const;

  /// Rank target at a scalar frequency for order tag 3, 4 or 34.
  TargetMatrix target(int order_tag, double lambda) const;

  double rate(int k) const;          // a_T = sqrt(H^(k-1) T)
  double rate_for_tag(int tag) const;
  int n_dft() const { return n_; }
  int span() const { return span_; }
  double bandwidth() const { return bandwidth_; }

 private:
  int T_ = 0, d_ = 0, n_ = 0, span_ = 0;
  double bandwidth_ = 0.0;
  ComplexMatrix dft_raw_;       // n x d, raw columns (order 2)
  ComplexMatrix dft_demeaned_;  // n x d, demeaned columns (orders 3, 4)
};

SpectralArray estimate_spectrum(const Matrix& residuals, int k,
                                const FrequencyTuple& freqs,
                                const SmoothingConfig& config);

TargetMatrix target_matrix(const SpectralArray& spec);
TargetMatrix target_matrix(const SpectralArray& g3, const SpectralArray& g4);

/// Singular values below rel_tol times the largest count as zero.
/// Diagnostic only; the rank decision is the KP bootstrap test.
int numerical_rank(const Matrix& m, double rel_tol = 1e-8);

}  // namespace ngdim

#endif
