#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "sfc/calculus.hpp"
#include "sfc/operator.hpp"
#include "sfc/slicefun.hpp"
#include "sfc/spectrum.hpp"

namespace sfc::io {

/// Multivectors travel as flat arrays of basis coefficients in blade order;
/// paravectors as their point coordinates.
nlohmann::json multivector_to_json(const Multivector& m);
Multivector multivector_from_json(const Algebra& alg, const nlohmann::json& j);
nlohmann::json paravector_to_json(const Paravector& x);
Paravector paravector_from_json(const Algebra& alg, const nlohmann::json& j);

/// Operator documents: {"n": ..., "d": ..., "components": [[row-major]...]}
/// with n+1 component matrices; the optional "algebra" key selects
/// "clifford" (default) or "quaternion" scalars.
nlohmann::json operator_to_json(const ParavectorOperator& T);
ParavectorOperator operator_from_json(const nlohmann::json& j);

/// Spectrum documents: {"source": "S", "spheres": [{"u","v","mult"}...]}.
nlohmann::json spectrum_to_json(const Spectrum& s);
Spectrum spectrum_from_json(const nlohmann::json& j);

/// Function descriptors: {"named": "exp"|"sin"|"cos"} or {"kind": "series",
/// "side": "left"|"right"|"intrinsic", "series": [[blade coeffs]...]},
/// {"kind": "polynomial", "coeffs": [...]}, or {"kind": "rational",
/// "num": [...], "den": [...]}.
SliceFunction function_from_json(const Algebra& alg, const nlohmann::json& j);

/// Calculus results: {"value": [[row-major]], "err_estimate": ..., "nodes": ...}.
nlohmann::json calculus_to_json(const CalculusResult& r);

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const nlohmann::json& j);

/// Contour dump: one CSV row per node as circle_id, theta, re, im_0, ....
std::string contour_to_csv(const Contour& c);

/// Projector report rows: subset (indices joined by '|'), idempotency and
/// commutation residuals.
struct ProjectorRow {
  std::vector<int> subset;
  double idempotency = 0.0;
  double commutation = 0.0;
};
std::string projectors_to_csv(const std::vector<ProjectorRow>& rows);

/// File plumbing; parse problems surface as InputError with a diagnostic.
nlohmann::json load_json_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& content);

/// Fixed shortest-round-trip formatting for CSV payloads.
std::string format_double(double x);

}  // namespace sfc::io
