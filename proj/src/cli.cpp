#include "sfc/cli.hpp"

#include <cstdio>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sfc/calculus.hpp"
#include "sfc/errors.hpp"
#include "sfc/io.hpp"
#include "sfc/spectrum.hpp"
#include "sfc/verify.hpp"

namespace sfc::cli {
namespace {

using nlohmann::json;

const std::set<std::string> kConfigKeys = {
    "command",  "input",      "function", "output", "seed",
    "instances", "tol",       "nodes",    "slice_unit",
    "radius",   "format",     "verbosity", "subset"};

// Writes the finished report in one shot, honoring the output path.
void emit_report(const RunConfig& cfg, std::ostream& out,
                 const std::string& report) {
  if (cfg.output_path.empty())
    out << report;
  else
    io::save_text_file(cfg.output_path, report);
}

std::string spectrum_report(const Spectrum& spec, const std::string& format) {
  if (format == "csv") {
    std::string csv = "u,v,mult\n";
    for (const SpectralSphere& s : spec.spheres) {
      csv += io::format_double(s.u);
      csv += ',';
      csv += io::format_double(s.v);
      csv += ',';
      csv += std::to_string(s.multiplicity);
      csv += '\n';
    }
    return csv;
  }
  return io::spectrum_to_json(spec).dump() + "\n";
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  const ParavectorOperator T =
      io::operator_from_json(io::load_json_file(cfg.input_path));
  const Spectrum spec = s_spectrum(T);
  const double bound = operator_norm_bound(T);
  const double reach = spec.bounding_radius();
  const bool ok = reach <= bound + 1e-9;
  char line[160];
  std::snprintf(line, sizeof line,
                "compactness bound: max sphere norm %.6e <= operator norm "
                "bound %.6e: %s\n",
                reach, bound, ok ? "ok" : "VIOLATED");
  diag << line;
  if (!ok) return exit_numerical_error;
  emit_report(cfg, out, spectrum_report(spec, cfg.format));
  return exit_ok;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  VerifyConfig vc;
  vc.seed = cfg.seed;
  vc.instances = cfg.instances;
  vc.nodes = cfg.nodes;
  vc.tol_override = cfg.tol_override;
  const std::vector<VerifyRecord> records = run_verification(vc);

  std::string report;
  if (cfg.format == "csv") {
    report = "identity,seed,residual,cond,tol,pass\n";
    for (const VerifyRecord& r : records) {
      report += r.identity;
      report += ',';
      report += std::to_string(r.seed);
      report += ',';
      report += io::format_double(r.residual);
      report += ',';
      report += io::format_double(r.cond);
      report += ',';
      report += io::format_double(r.tol);
      report += ',';
      report += r.pass ? '1' : '0';
      report += '\n';
    }
  } else {
    report = report_to_string(records);
  }

  int failures = 0;
  for (const VerifyRecord& r : records) failures += r.pass ? 0 : 1;
  if (cfg.verbosity > 0 || failures > 0)
    diag << "verification: " << records.size() << " records, " << failures
         << " failed\n";
  if (failures > 0)
    for (const VerifyRecord& r : records)
      if (!r.pass)
        diag << "  fail " << r.identity << " residual "
             << io::format_double(r.residual) << " tol "
             << io::format_double(r.tol) << "\n";

  emit_report(cfg, out, report);
  return failures == 0 ? exit_ok : exit_verification_failure;
}

// Whole-spectrum contour for the plain functional calculus.
Contour full_contour(const ParavectorOperator& T, const Spectrum& spec,
                     const RunConfig& cfg) {
  std::vector<int> all(spec.spheres.size());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = static_cast<int>(k);
  const ImaginaryUnit I = parse_slice_unit(T.algebra(), cfg.slice_unit);
  return build_contour(spec, all, I, cfg.radius_cap, cfg.nodes);
}

int cmd_funcalc(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  if (cfg.function_path.empty())
    throw InputError("funcalc needs a --function descriptor");
  const ParavectorOperator T =
      io::operator_from_json(io::load_json_file(cfg.input_path));
  const SliceFunction f =
      io::function_from_json(T.algebra(), io::load_json_file(cfg.function_path));
  const Spectrum spec = s_spectrum(T);
  const Contour contour = full_contour(T, spec, cfg);
  const CalculusResult result = func_calc(T, f, contour, Side::left);
  if (cfg.verbosity > 0)
    diag << "funcalc: " << contour.circles.size() << " circles, "
         << result.nodes << " nodes per circle, error estimate "
         << io::format_double(result.err_estimate) << "\n";

  std::string report;
  if (cfg.format == "csv") {
    report = "# err_estimate " + io::format_double(result.err_estimate) +
             "\n# nodes " + std::to_string(result.nodes) + "\n";
    const Eigen::MatrixXd& m = result.value.matrix();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (j > 0) report += ',';
        report += io::format_double(m(i, j));
      }
      report += '\n';
    }
  } else {
    report = io::calculus_to_json(result).dump() + "\n";
  }
  emit_report(cfg, out, report);
  return exit_ok;
}

int cmd_riesz(const RunConfig& cfg, std::ostream& out, std::ostream& diag) {
  if (cfg.subset.empty())
    throw InputError("riesz needs a nonempty --subset of sphere indices");
  const ParavectorOperator T =
      io::operator_from_json(io::load_json_file(cfg.input_path));
  const ImaginaryUnit I = parse_slice_unit(T.algebra(), cfg.slice_unit);
  const RieszData data =
      riesz_projector(T, cfg.subset, I, cfg.radius_cap, cfg.nodes);

  const OperatorMatrix& P = data.projector.value;
  const OperatorMatrix rm = rep_matrix(T);
  const double idempotency = two_norm_estimate(P * P - P);
  const double commutation = two_norm_estimate(P * rm - rm * P);
  if (cfg.verbosity > 0)
    diag << "riesz: idempotency " << io::format_double(idempotency)
         << ", commutation " << io::format_double(commutation) << "\n";

  std::string report;
  if (cfg.format == "csv") {
    io::ProjectorRow row;
    row.subset = cfg.subset;
    row.idempotency = idempotency;
    row.commutation = commutation;
    report = io::projectors_to_csv({row});
  } else {
    json j;
    j["subset"] = cfg.subset;
    j["idempotency"] = idempotency;
    j["commutation"] = commutation;
    j["projector"] = io::calculus_to_json(data.projector);
    j["compression"] = io::calculus_to_json(data.compression);
    report = j.dump() + "\n";
  }
  emit_report(cfg, out, report);
  return exit_ok;
}

}  // namespace

json config_to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["input"] = c.input_path;
  j["function"] = c.function_path;
  j["output"] = c.output_path;
  j["seed"] = c.seed;
  j["instances"] = c.instances;
  if (c.tol_override) j["tol"] = *c.tol_override;
  j["nodes"] = c.nodes;
  j["slice_unit"] = c.slice_unit;
  j["radius"] = c.radius_cap;
  j["format"] = c.format;
  j["verbosity"] = c.verbosity;
  j["subset"] = c.subset;
  return j;
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw InputError("run config must be a JSON object");
  for (const auto& item : j.items())
    if (!kConfigKeys.count(item.key()))
      throw InputError("run config has unknown key '" + item.key() + "'");
  RunConfig c;
  const auto str = [&](const char* key, std::string& into) {
    if (!j.contains(key)) return;
    if (!j[key].is_string())
      throw InputError(std::string("config key '") + key + "' must be a string");
    into = j[key].get<std::string>();
  };
  str("command", c.command);
  str("input", c.input_path);
  str("function", c.function_path);
  str("output", c.output_path);
  str("slice_unit", c.slice_unit);
  str("format", c.format);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned())
      throw InputError("config key 'seed' must be a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  const auto integer = [&](const char* key, int& into) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer())
      throw InputError(std::string("config key '") + key +
                       "' must be an integer");
    into = j[key].get<int>();
  };
  integer("instances", c.instances);
  integer("nodes", c.nodes);
  integer("verbosity", c.verbosity);
  if (j.contains("tol")) {
    if (!j["tol"].is_number())
      throw InputError("config key 'tol' must be a number");
    c.tol_override = j["tol"].get<double>();
  }
  if (j.contains("radius")) {
    if (!j["radius"].is_number())
      throw InputError("config key 'radius' must be a number");
    c.radius_cap = j["radius"].get<double>();
  }
  if (j.contains("subset")) {
    if (!j["subset"].is_array())
      throw InputError("config key 'subset' must be an array of indices");
    c.subset.clear();
    for (const auto& e : j["subset"]) {
      if (!e.is_number_integer())
        throw InputError("config key 'subset' must hold integers");
      c.subset.push_back(e.get<int>());
    }
  }
  return c;
}

ImaginaryUnit parse_slice_unit(const Algebra& alg, const std::string& text) {
  if (text.empty()) throw InputError("slice unit must not be empty");
  const int n = alg.point_dim() - 1;
  if (text[0] == 'e' && text.find(',') == std::string::npos) {
    int j = 0;
    try {
      std::size_t used = 0;
      j = std::stoi(text.substr(1), &used);
      if (used + 1 != text.size()) throw InputError("trailing characters");
    } catch (const std::exception&) {
      throw InputError("slice unit '" + text +
                       "' is not of the form e<j> or a component list");
    }
    if (j < 1 || j > n)
      throw InputError("slice unit axis out of range for this algebra");
    return ImaginaryUnit::axis(alg, j);
  }
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw InputError("trailing characters");
    } catch (const std::exception&) {
      throw InputError("slice unit component '" + item + "' is not a number");
    }
  }
  if (static_cast<int>(parts.size()) != n)
    throw InputError("slice unit needs exactly " + std::to_string(n) +
                     " components for this algebra");
  Eigen::VectorXd dir(n);
  for (int i = 0; i < n; ++i) dir(i) = parts[static_cast<std::size_t>(i)];
  return ImaginaryUnit::normalized(alg, dir);
}

int run_command(const RunConfig& config, std::ostream& out,
                std::ostream& diag) {
  try {
    if (config.format != "json" && config.format != "csv")
      throw InputError("format must be json or csv");
    if (config.command == "spectrum") return cmd_spectrum(config, out, diag);
    if (config.command == "verify") return cmd_verify(config, out, diag);
    if (config.command == "funcalc") return cmd_funcalc(config, out, diag);
    if (config.command == "riesz") return cmd_riesz(config, out, diag);
    throw InputError("unknown command '" + config.command + "'");
  } catch (const InputError& e) {
    diag << "input error: " << e.what() << "\n";
    return exit_input_error;
  } catch (const DimensionError& e) {
    diag << "input error: " << e.what() << "\n";
    return exit_input_error;
  } catch (const InvalidUnitError& e) {
    diag << "input error: " << e.what() << "\n";
    return exit_input_error;
  } catch (const GeometryError& e) {
    diag << "geometry error: " << e.what() << "\n";
    return exit_geometry_error;
  } catch (const Error& e) {
    diag << "numerical error: " << e.what() << "\n";
    return exit_numerical_error;
  } catch (const std::exception& e) {
    diag << "numerical error: " << e.what() << "\n";
    return exit_numerical_error;
  }
}

}  // namespace sfc::cli
