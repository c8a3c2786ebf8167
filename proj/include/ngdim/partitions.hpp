#ifndef NGDIM_PARTITIONS_HPP
#define NGDIM_PARTITIONS_HPP

#include <vector>

namespace ngdim {

/// A partition of {1..k} into disjoint nonempty blocks. Blocks and the
/// elements inside each block are sorted ascending.
using SetPartition = std::vector<std::vector<int>>;

/// All set partitions of {1..k}; cardinality is the k-th Bell number
/// (2, 5, 15 for k = 2, 3, 4). Only orders 1..4 are supported.
std::vector<SetPartition> enumerate_partitions(int k);

}  // namespace ngdim

#endif
