#ifndef NGDIM_STRUCTURAL_MODEL_HPP
#define NGDIM_STRUCTURAL_MODEL_HPP

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ngdim/lag_polynomial.hpp"
#include "ngdim/shocks.hpp"
#include "ngdim/types.hpp"

namespace ngdim {

/// Structural VARMA data-generating process
///   Phi(L) y_t = Theta(L) B eps_t
/// with full-rank mixing matrix B and mutually independent standardized
/// shocks. AR or MA parts may be empty (orders p = 0 or q = 0).
struct StructuralModel {
  LagPolynomial ar = LagPolynomial::ar({});
  LagPolynomial ma = LagPolynomial::ma({});
  Matrix mixing;
  std::vector<ShockSpec> shocks;

  int dim() const { return static_cast<int>(mixing.rows()); }

  /// Checks dimensions, |det B| > 0 and the no-unit-root condition on a
  /// 512-point unit-circle grid. Throws ValidationError on failure.
  void validate() const;

  nlohmann::json to_json() const;
  static StructuralModel from_json(const nlohmann::json& j);
};

/// Named example models used by the command line tool and tests.
/// Recognized: gaussian2, mixed2, skewed2, noncausal2, mn1-3d.
StructuralModel preset_model(const std::string& name);

std::vector<std::string> preset_model_names();

}  // namespace ngdim

#endif
