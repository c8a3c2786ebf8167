#ifndef NGDIM_RNG_HPP
#define NGDIM_RNG_HPP

#include <cstdint>
#include <random>

namespace ngdim {

using Rng = std::mt19937_64;

/// splitmix64 mixing step; used to derive independent stream seeds from a
/// root seed so that parallel replicates stay deterministic.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t split_seed(std::uint64_t root, std::uint64_t stream) {
  return mix_seed(mix_seed(root) ^ stream);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(mix_seed(seed)); }

}  // namespace ngdim

#endif
