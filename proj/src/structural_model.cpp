#include "ngdim/structural_model.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "ngdim/errors.hpp"

namespace ngdim {

using nlohmann::json;

void StructuralModel::validate() const {
  const int d = dim();
  if (d == 0 || mixing.rows() != mixing.cols())
    throw ValidationError("StructuralModel: B must be square and nonempty");
  if (static_cast<int>(shocks.size()) != d)
    throw ValidationError("StructuralModel: one shock spec per component");
  for (const auto& c : ar.coefficients)
    if (c.rows() != d)
      throw ValidationError("StructuralModel: AR coefficient dimension");
  for (const auto& c : ma.coefficients)
    if (c.rows() != d)
      throw ValidationError("StructuralModel: MA coefficient dimension");
  if (std::abs(mixing.determinant()) <= 1e-12)
    throw ValidationError("StructuralModel: mixing matrix B is singular");
  if (!ar.empty() || !ma.empty()) {
    const double min_det = min_unit_circle_determinant(ar, ma);
    if (min_det < 1e-6)
      throw ValidationError(
          "StructuralModel: unit root detected (min |det| on circle = " +
          std::to_string(min_det) + ")");
  }
}

namespace {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw ValidationError("model descriptor: expected matrix as array of rows");
  const auto rows = j.size();
  const auto cols = j.front().size();
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (j[i].size() != cols)
      throw ValidationError("model descriptor: ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          j[i][c].get<double>();
  }
  return m;
}

json shock_to_json(const ShockSpec& s) {
  json out;
  out["kind"] = s.kind_name();
  if (s.kind() == ShockSpec::Kind::Mixture) {
    out["weights"] = s.weights();
    out["means"] = s.means();
    out["sds"] = s.sds();
  } else if (s.kind() == ShockSpec::Kind::UserMoments) {
    out["kappa3"] = s.marginal_cumulant(3);
    out["kappa4"] = s.marginal_cumulant(4);
  }
  return out;
}

ShockSpec shock_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "gaussian") return ShockSpec::gaussian();
  if (kind == "exponential") return ShockSpec::exponential();
  if (kind == "mixture")
    return ShockSpec::mixture(j.at("weights").get<std::vector<double>>(),
                              j.at("means").get<std::vector<double>>(),
                              j.at("sds").get<std::vector<double>>());
  if (kind == "user_moments")
    return ShockSpec::user_moments(j.at("kappa3").get<double>(),
                                   j.at("kappa4").get<double>());
  throw ValidationError("model descriptor: unknown shock kind '" + kind + "'");
}

std::vector<Matrix> coeffs_from_json(const json& j) {
  std::vector<Matrix> out;
  if (j.is_null()) return out;
  for (const auto& item : j) out.push_back(matrix_from_json(item));
  return out;
}

}  // namespace

json StructuralModel::to_json() const {
  json out;
  json ar_j = json::array();
  for (const auto& c : ar.coefficients) ar_j.push_back(matrix_to_json(c));
  json ma_j = json::array();
  for (const auto& c : ma.coefficients) ma_j.push_back(matrix_to_json(c));
  out["ar"] = ar_j;
  out["ma"] = ma_j;
  out["b"] = matrix_to_json(mixing);
  json shocks_j = json::array();
  for (const auto& s : shocks) shocks_j.push_back(shock_to_json(s));
  out["shocks"] = shocks_j;
  return out;
}

StructuralModel StructuralModel::from_json(const json& j) {
  StructuralModel model;
  model.ar = LagPolynomial::ar(
      coeffs_from_json(j.contains("ar") ? j["ar"] : json()));
  model.ma = LagPolynomial::ma(
      coeffs_from_json(j.contains("ma") ? j["ma"] : json()));
  model.mixing = matrix_from_json(j.at("b"));
  for (const auto& s : j.at("shocks")) model.shocks.push_back(shock_from_json(s));
  model.validate();
  return model;
}

namespace {

// The skewed mixture named MN1: two normal components with weights chosen
// so the standardized distribution has positive skewness.
ShockSpec mn1_shock() {
  auto s =
      ShockSpec::mixture({0.2, 0.8}, {10.0, -2.0}, {std::sqrt(0.75), 2.0});
  if (s.marginal_cumulant(3) <= 0.0)
    throw ValidationError("mn1 mixture lost its positive skewness");
  return s;
}

Matrix default_phi2() {
  Matrix phi(2, 2);
  phi << 0.5, 0.1, 0.0, 0.3;
  return phi;
}

Matrix default_b2() {
  Matrix b(2, 2);
  b << 1.0, 0.0, 0.5, 1.0;
  return b;
}

}  // namespace

StructuralModel preset_model(const std::string& name) {
  StructuralModel model;
  if (name == "gaussian2") {
    model.ar = LagPolynomial::ar({default_phi2()});
    model.mixing = default_b2();
    model.shocks = {ShockSpec::gaussian(), ShockSpec::gaussian()};
  } else if (name == "mixed2") {
    model.ar = LagPolynomial::ar({default_phi2()});
    model.mixing = default_b2();
    model.shocks = {ShockSpec::exponential(), ShockSpec::gaussian()};
  } else if (name == "skewed2") {
    model.ar = LagPolynomial::ar({default_phi2()});
    model.mixing = default_b2();
    model.shocks = {ShockSpec::exponential(), ShockSpec::exponential()};
  } else if (name == "noncausal2") {
    // One autoregressive root at 0.5, inside the unit circle.
    Matrix phi(2, 2);
    phi << 2.0, 0.0, 0.0, 0.5;
    model.ar = LagPolynomial::ar({phi});
    model.mixing = default_b2();
    model.shocks = {ShockSpec::exponential(), ShockSpec::gaussian()};
  } else if (name == "mn1-3d") {
    Matrix phi = Matrix::Zero(3, 3);
    phi.diagonal() << 0.5, 0.3, 0.2;
    Matrix b = Matrix::Identity(3, 3);
    b(1, 0) = 0.4;
    b(2, 1) = 0.3;
    model.ar = LagPolynomial::ar({phi});
    model.mixing = b;
    model.shocks = {mn1_shock(), mn1_shock(), ShockSpec::gaussian()};
  } else {
    throw ValidationError("unknown model preset '" + name + "'");
  }
  model.validate();
  return model;
}

std::vector<std::string> preset_model_names() {
  return {"gaussian2", "mixed2", "skewed2", "noncausal2", "mn1-3d"};
}

}  // namespace ngdim
