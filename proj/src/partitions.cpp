#include "ngdim/partitions.hpp"

#include <algorithm>

#include "ngdim/errors.hpp"

namespace ngdim {

namespace {

void grow(int next, int k, SetPartition& current,
          std::vector<SetPartition>& out) {
  if (next > k) {
    SetPartition sorted = current;
    std::sort(sorted.begin(), sorted.end());
    out.push_back(std::move(sorted));
    return;
  }
  // Index-based loop: recursion may reallocate `current`.
  const std::size_t n_blocks = current.size();
  for (std::size_t i = 0; i < n_blocks; ++i) {
    current[i].push_back(next);
    grow(next + 1, k, current, out);
    current[i].pop_back();
  }
  current.push_back({next});
  grow(next + 1, k, current, out);
  current.pop_back();
}

}  // namespace

std::vector<SetPartition> enumerate_partitions(int k) {
  if (k < 1 || k > 4)
    throw ValidationError("enumerate_partitions: unsupported order " +
                          std::to_string(k) + " (must be in [1,4])");
  std::vector<SetPartition> out;
  SetPartition current;
  grow(1, k, current, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ngdim
