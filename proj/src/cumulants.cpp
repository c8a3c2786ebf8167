#include "ngdim/cumulants.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ngdim/errors.hpp"
#include "ngdim/partitions.hpp"

namespace ngdim {

MultiIndex::MultiIndex(std::vector<int> e)
    : order(static_cast<int>(e.size())), entries(std::move(e)) {}

int MultiIndex::position(int dim) const {
  int pos = 0;
  for (int e : entries) {
    if (e < 1 || e > dim)
      throw ValidationError("MultiIndex entry " + std::to_string(e) +
                            " outside [1," + std::to_string(dim) + "]");
    pos = pos * dim + (e - 1);
  }
  return pos;
}

std::vector<MultiIndex> MultiIndex::enumerate(int dim, int order) {
  if (dim < 1 || order < 1)
    throw ValidationError("MultiIndex::enumerate: dim and order must be >= 1");
  long long total = 1;
  for (int i = 0; i < order; ++i) total *= dim;
  std::vector<MultiIndex> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<int> entries(static_cast<std::size_t>(order), 1);
  for (long long n = 0; n < total; ++n) {
    out.emplace_back(entries);
    for (int j = order - 1; j >= 0; --j) {
      if (++entries[static_cast<std::size_t>(j)] <= dim) break;
      entries[static_cast<std::size_t>(j)] = 1;
    }
  }
  return out;
}

long long count_distinct_multisets(int dim, int order) {
  // C(d+k-1, k)
  long long n = dim + order - 1;
  long long result = 1;
  for (int i = 1; i <= order; ++i) result = result * (n - order + i) / i;
  return result;
}

double cumulant_from_moments(const MomentMap& joint_moments,
                             const MultiIndex& idx) {
  int k = idx.order;
  const auto partitions = enumerate_partitions(k);
  double total = 0.0;
  for (const auto& partition : partitions) {
    int blocks = static_cast<int>(partition.size());
    double coeff = (blocks % 2 == 1) ? 1.0 : -1.0;
    for (int i = 2; i < blocks; ++i) coeff *= i;  // (|p|-1)!
    double prod = coeff;
    for (const auto& block : partition) {
      std::vector<int> key;
      key.reserve(block.size());
      for (int slot : block)
        key.push_back(idx.entries[static_cast<std::size_t>(slot - 1)]);
      std::sort(key.begin(), key.end());
      auto it = joint_moments.find(key);
      if (it == joint_moments.end()) {
        std::string name;
        for (int c : key) name += std::to_string(c) + ",";
        throw ValidationError("cumulant_from_moments: missing moment entry {" +
                              name + "}");
      }
      prod *= it->second;
    }
    total += prod;
  }
  return total;
}

namespace {

// Sample mean of the product of the named columns (1-based multiset).
double sample_moment(const Matrix& data, const std::vector<int>& key) {
  const auto T = data.rows();
  Eigen::ArrayXd prod = Eigen::ArrayXd::Ones(T);
  for (int c : key) prod *= data.col(c - 1).array();
  return prod.sum() / static_cast<double>(T);
}

}  // namespace

CumulantVector sample_cumulants(const Matrix& data, int order) {
  const int d = static_cast<int>(data.cols());
  const auto T = data.rows();
  if (order < 2 || order > 4)
    throw ValidationError("sample_cumulants: order must be 2, 3 or 4");
  if (T < 10 * d)
    throw ValidationError("sample_cumulants: need T >= 10*d rows");
  if (!data.allFinite())
    throw NumericError("sample_cumulants: data contains non-finite values");

  // Cache every sub-multiset moment once; indices sharing a multiset reuse
  // the same cumulant value, which also enforces exact permutation symmetry.
  MomentMap moments;
  std::map<std::vector<int>, double> by_multiset;
  auto indices = MultiIndex::enumerate(d, order);
  CumulantVector out;
  out.order = order;
  out.dim = d;
  out.values.resize(static_cast<Eigen::Index>(indices.size()));
  for (const auto& idx : indices) {
    std::vector<int> multiset = idx.entries;
    std::sort(multiset.begin(), multiset.end());
    auto found = by_multiset.find(multiset);
    double value;
    if (found != by_multiset.end()) {
      value = found->second;
    } else {
      for (const auto& partition : enumerate_partitions(order)) {
        for (const auto& block : partition) {
          std::vector<int> key;
          for (int slot : block)
            key.push_back(idx.entries[static_cast<std::size_t>(slot - 1)]);
          std::sort(key.begin(), key.end());
          if (!moments.count(key)) moments[key] = sample_moment(data, key);
        }
      }
      value = cumulant_from_moments(moments, idx);
      by_multiset[multiset] = value;
    }
    out.values(idx.position(d)) = value;
  }
  return out;
}

CumulantMatrix matricize(const CumulantVector& v) {
  const int d = v.dim;
  long long expect = 1;
  for (int i = 0; i < v.order; ++i) expect *= d;
  if (v.values.size() != expect)
    throw ValidationError("matricize: value length " +
                          std::to_string(v.values.size()) +
                          " does not equal dim^order");
  CumulantMatrix out;
  out.order = v.order;
  out.dim = d;
  const auto rows = static_cast<Eigen::Index>(expect / d);
  out.values = Eigen::Map<const Matrix>(v.values.data(), rows, d);
  return out;
}

CumulantVector vec(const CumulantMatrix& m) {
  CumulantVector out;
  out.order = m.order;
  out.dim = m.dim;
  out.values =
      Eigen::Map<const Vector>(m.values.data(), m.values.size());
  return out;
}

CumulantMatrix cumulant_matrix_from_marginals(int order,
                                              const Vector& marginals) {
  const int d = static_cast<int>(marginals.size());
  if (order < 2 || order > 4)
    throw ValidationError("cumulant_matrix_from_marginals: order in [2,4]");
  long long rows = 1;
  for (int i = 0; i < order - 1; ++i) rows *= d;
  CumulantMatrix out;
  out.order = order;
  out.dim = d;
  out.values = Matrix::Zero(static_cast<Eigen::Index>(rows), d);
  for (int m = 0; m < d; ++m) {
    // Row position of e_m^{(k-1 fold Kronecker)}: digits all equal to m.
    long long row = 0;
    for (int i = 0; i < order - 1; ++i) row = row * d + m;
    out.values(static_cast<Eigen::Index>(row), m) = marginals(m);
  }
  return out;
}

}  // namespace ngdim
