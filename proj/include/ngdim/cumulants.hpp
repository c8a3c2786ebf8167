#ifndef NGDIM_CUMULANTS_HPP
#define NGDIM_CUMULANTS_HPP

#include <map>
#include <vector>

#include "ngdim/types.hpp"

namespace ngdim {

/// A k-tuple of component indices, each in {1..d}. Enumeration over all
/// tuples for fixed (d, k) is row-major with the first entry slowest, so
/// position() is consistent with column-stacked vectorization throughout.
struct MultiIndex {
  int order = 0;
  std::vector<int> entries;  // 1-based component indices

  MultiIndex() = default;
  MultiIndex(std::vector<int> e);

  /// Flat position of this tuple in the (d, k) enumeration, 0-based.
  int position(int dim) const;

  /// All d^k tuples in enumeration order.
  static std::vector<MultiIndex> enumerate(int dim, int order);
};

/// Number of order-equivalent (multiset-distinct) tuples: C(d+k-1, k).
long long count_distinct_multisets(int dim, int order);

/// All order-k cumulants of a d-dimensional vector, stacked in MultiIndex
/// enumeration order (length d^k). Symmetric in the tuple entries.
struct CumulantVector {
  int order = 0;
  int dim = 0;
  Vector values;
};

/// The d^(k-1) x d matricization: column-stacking reproduces the vector.
/// Column index corresponds to the first tuple entry.
struct CumulantMatrix {
  int order = 0;
  int dim = 0;
  Matrix values;
};

/// Joint moments keyed by the sorted multiset of component indices,
/// e.g. {1,1,2} -> E[x1^2 x2].
using MomentMap = std::map<std::vector<int>, double>;

/// Moment-to-cumulant partition formula:
///   sum over set partitions p of (|p|-1)! (-1)^(|p|-1) prod_blocks E[prod].
/// Throws if a required moment entry is missing.
double cumulant_from_moments(const MomentMap& joint_moments,
                             const MultiIndex& idx);

/// Plug-in sample cumulants of order k in {2,3,4} from a T x d panel.
/// Sample moments use the divide-by-T convention.
CumulantVector sample_cumulants(const Matrix& data, int order);

/// Reshape the length-d^k vector into d^(k-1) x d with vec(result) == v.
CumulantMatrix matricize(const CumulantVector& v);

/// Inverse of matricize.
CumulantVector vec(const CumulantMatrix& m);

/// Population cumulant matrix of a vector with mutually independent
/// standardized components: column m is kappa_m times the (k-1)-fold
/// Kronecker power of the m-th canonical vector.
CumulantMatrix cumulant_matrix_from_marginals(int order,
                                              const Vector& marginals);

}  // namespace ngdim

#endif
