#ifndef NGDIM_SIMULATE_HPP
#define NGDIM_SIMULATE_HPP

#include <cstdint>

#include "ngdim/structural_model.hpp"
#include "ngdim/types.hpp"

namespace ngdim {

/// Draws a T x d sample path of the stationary solution of the structural
/// model. A model with all autoregressive roots outside the unit circle is
/// simulated by forward recursion with a 500-period burn-in; a model with
/// roots inside the circle goes through the truncated two-sided moving
/// average representation (truncation grown until the tail coefficient
/// norm falls below 1e-10). Identical seeds give identical output.
Matrix simulate_svarma(const StructuralModel& model, int T,
                       std::uint64_t seed);

/// Two-sided moving-average weights Psi_j B for j in [-J, J], computed by
/// evaluating Phi(z)^{-1} Theta(z) B on a fine unit-circle grid and
/// inverting the transform. Exposed for diagnostics and tests.
std::vector<Matrix> two_sided_ma_weights(const StructuralModel& model,
                                         int truncation);

}  // namespace ngdim

#endif
