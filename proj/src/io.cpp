#include "sfc/io.hpp"

#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "sfc/errors.hpp"

namespace sfc::io {
namespace {

using nlohmann::json;

double require_number(const json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
  return j.get<double>();
}

int require_int(const json& j, const char* what) {
  if (!j.is_number_integer())
    throw InputError(std::string(what) + " must be an integer");
  return j.get<int>();
}

const json& require_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::vector<double> number_array(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const json& e : j) out.push_back(require_number(e, what));
  return out;
}

}  // namespace

json multivector_to_json(const Multivector& m) {
  json out = json::array();
  for (int i = 0; i < m.algebra().dim(); ++i) out.push_back(m.coeff(i));
  return out;
}

Multivector multivector_from_json(const Algebra& alg, const json& j) {
  const std::vector<double> c = number_array(j, "multivector");
  if (static_cast<int>(c.size()) != alg.dim())
    throw InputError("multivector needs one coefficient per basis blade");
  Multivector m = Multivector::zero(alg);
  for (int i = 0; i < alg.dim(); ++i)
    m += Multivector::basis(alg, i) * c[static_cast<std::size_t>(i)];
  return m;
}

json paravector_to_json(const Paravector& x) {
  json out = json::array();
  for (int i = 0; i < x.algebra().point_dim(); ++i) out.push_back(x.parts()(i));
  return out;
}

Paravector paravector_from_json(const Algebra& alg, const json& j) {
  const std::vector<double> c = number_array(j, "paravector");
  if (static_cast<int>(c.size()) != alg.point_dim())
    throw InputError("paravector needs one coordinate per point dimension");
  Eigen::VectorXd parts(alg.point_dim());
  for (int i = 0; i < alg.point_dim(); ++i) parts(i) = c[static_cast<std::size_t>(i)];
  return Paravector(alg, parts);
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw InputError("matrix must be a non-empty array of rows");
  const std::size_t cols = j.at(0).is_array() ? j.at(0).size() : 0;
  if (cols == 0) throw InputError("matrix rows must be non-empty arrays");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()),
                    static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::vector<double> row = number_array(j.at(r), "matrix row");
    if (row.size() != cols) throw InputError("matrix rows differ in length");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c];
  }
  return m;
}

json operator_to_json(const ParavectorOperator& T) {
  json out;
  out["n"] = T.algebra().point_dim() - 1;
  out["d"] = T.block_dim();
  if (T.algebra().is_quaternionic()) out["algebra"] = "quaternion";
  json comps = json::array();
  for (const Eigen::MatrixXd& m : T.components()) {
    json flat = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) flat.push_back(m(i, j));
    comps.push_back(std::move(flat));
  }
  out["components"] = std::move(comps);
  return out;
}

ParavectorOperator operator_from_json(const json& j) {
  const int n = require_int(require_field(j, "n"), "n");
  const int d = require_int(require_field(j, "d"), "d");
  if (d < 1) throw InputError("d must be positive");
  std::string kind = "clifford";
  if (j.contains("algebra")) {
    if (!j.at("algebra").is_string())
      throw InputError("algebra must be \"clifford\" or \"quaternion\"");
    kind = j.at("algebra").get<std::string>();
  }
  const Algebra alg = [&]() -> Algebra {
    if (kind == "quaternion") {
      if (n != 3) throw InputError("quaternionic operators carry n = 3");
      return Algebra::quaternions();
    }
    if (kind == "clifford") {
      if (n < 1 || n > 5) throw InputError("n must lie in 1..5");
      return Algebra::clifford(n);
    }
    throw InputError("algebra must be \"clifford\" or \"quaternion\"");
  }();

  const json& comps = require_field(j, "components");
  if (!comps.is_array() || static_cast<int>(comps.size()) != n + 1)
    throw InputError("components must hold n+1 matrices");
  std::vector<Eigen::MatrixXd> mats;
  for (const json& c : comps) {
    const std::vector<double> flat = number_array(c, "component");
    if (static_cast<int>(flat.size()) != d * d)
      throw InputError("each component must hold d*d row-major entries");
    Eigen::MatrixXd m(d, d);
    for (int r = 0; r < d; ++r)
      for (int col = 0; col < d; ++col)
        m(r, col) = flat[static_cast<std::size_t>(r * d + col)];
    mats.push_back(std::move(m));
  }
  return ParavectorOperator(alg, std::move(mats));
}

json spectrum_to_json(const Spectrum& s) {
  json out;
  out["source"] = s.source;
  json spheres = json::array();
  for (const SpectralSphere& sp : s.spheres) {
    json e;
    e["u"] = sp.u;
    e["v"] = sp.v;
    e["mult"] = sp.multiplicity;
    spheres.push_back(std::move(e));
  }
  out["spheres"] = std::move(spheres);
  return out;
}

Spectrum spectrum_from_json(const json& j) {
  Spectrum out;
  if (j.contains("source")) {
    if (!j.at("source").is_string()) throw InputError("source must be a string");
    out.source = j.at("source").get<std::string>();
  }
  const json& spheres = require_field(j, "spheres");
  if (!spheres.is_array()) throw InputError("spheres must be an array");
  for (const json& e : spheres) {
    SpectralSphere s;
    s.u = require_number(require_field(e, "u"), "u");
    s.v = require_number(require_field(e, "v"), "v");
    s.multiplicity = e.contains("mult") ? require_int(e.at("mult"), "mult") : 1;
    if (s.v < 0.0 || s.multiplicity < 1) throw InputError("malformed sphere");
    out.spheres.push_back(s);
  }
  return out;
}

SliceFunction function_from_json(const Algebra& alg, const json& j) {
  if (!j.is_object()) throw InputError("function descriptor must be an object");
  if (j.contains("named")) {
    if (!j.at("named").is_string())
      throw InputError("named function must be a string");
    const std::string name = j.at("named").get<std::string>();
    if (name == "exp") return SliceFunction::exponential(alg);
    if (name == "sin") return SliceFunction::sine(alg);
    if (name == "cos") return SliceFunction::cosine(alg);
    throw InputError("unknown named function \"" + name + "\"");
  }
  const json& kindj = require_field(j, "kind");
  if (!kindj.is_string()) throw InputError("kind must be a string");
  const std::string kind = kindj.get<std::string>();
  if (kind == "polynomial")
    return SliceFunction::polynomial(
        alg, number_array(require_field(j, "coeffs"), "coeffs"));
  if (kind == "rational")
    return SliceFunction::rational(
        alg, number_array(require_field(j, "num"), "num"),
        number_array(require_field(j, "den"), "den"));
  if (kind == "series") {
    FunctionSide side = FunctionSide::left;
    if (j.contains("side")) {
      if (!j.at("side").is_string()) throw InputError("side must be a string");
      const std::string s = j.at("side").get<std::string>();
      if (s == "left") side = FunctionSide::left;
      else if (s == "right") side = FunctionSide::right;
      else if (s == "intrinsic") side = FunctionSide::intrinsic;
      else throw InputError("side must be left, right, or intrinsic");
    }
    const json& coeffs = require_field(j, "series");
    if (!coeffs.is_array() || coeffs.empty())
      throw InputError("series must be a non-empty array of coefficients");
    std::vector<Multivector> ms;
    for (const json& c : coeffs) ms.push_back(multivector_from_json(alg, c));
    return SliceFunction::series(side, std::move(ms));
  }
  throw InputError("unknown function kind \"" + kind + "\"");
}

json calculus_to_json(const CalculusResult& r) {
  json out;
  out["value"] = matrix_to_json(r.value.matrix());
  out["err_estimate"] = r.err_estimate;
  out["nodes"] = r.nodes;
  return out;
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string contour_to_csv(const Contour& c) {
  const int imag = c.unit.algebra().point_dim() - 1;
  std::ostringstream out;
  out << "circle_id,theta";
  out << ",re";
  for (int i = 0; i < imag; ++i) out << ",im_" << i;
  out << "\n";
  const int per = c.nodes_per_circle;
  int k = 0;
  for (const ContourNode& node : contour_nodes(c)) {
    const double theta =
        2.0 * std::numbers::pi * static_cast<double>(k % per) / per;
    out << node.circle << ',' << format_double(theta);
    for (int i = 0; i < node.point.algebra().point_dim(); ++i)
      out << ',' << format_double(node.point.parts()(i));
    out << "\n";
    ++k;
  }
  return out.str();
}

std::string projectors_to_csv(const std::vector<ProjectorRow>& rows) {
  std::ostringstream out;
  out << "subset,idempotency,commutation\n";
  for (const ProjectorRow& r : rows) {
    for (std::size_t i = 0; i < r.subset.size(); ++i)
      out << (i ? "|" : "") << r.subset[i];
    out << ',' << format_double(r.idempotency) << ','
        << format_double(r.commutation) << "\n";
  }
  return out.str();
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open \"" + path + "\"");
  json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw InputError("invalid JSON in \"" + path + "\"");
  return j;
}

void save_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write \"" + path + "\"");
  out << content;
}

}  // namespace sfc::io
