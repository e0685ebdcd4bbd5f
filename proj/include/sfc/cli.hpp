#pragma once

#include <cstdint>
#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "sfc/hypercomplex.hpp"

namespace sfc::cli {

/// Exit codes shared by every command.
enum ExitCode : int {
  exit_ok = 0,
  exit_verification_failure = 1,
  exit_input_error = 2,
  exit_numerical_error = 3,
  exit_geometry_error = 4,
};

/// One run of the tool: the command, where the inputs live, and the numeric
/// knobs.  Unset fields keep these defaults, and a config round-trips
/// through JSON unchanged.
struct RunConfig {
  std::string command;     // "spectrum" | "verify" | "funcalc" | "riesz"
  std::string input_path;  // operator JSON document
  std::string function_path;  // function JSON document (funcalc)
  std::string output_path;    // empty writes the report to the out stream
  std::uint64_t seed = 42;
  int instances = 20;
  std::optional<double> tol_override;  // replaces documented base tolerances
  int nodes = 512;
  std::string slice_unit = "e1";  // "e<j>" or comma-separated components
  double radius_cap = 0.25;
  std::string format = "json";  // "json" | "csv"
  int verbosity = 0;
  std::vector<int> subset;  // riesz: indices into the spectral sphere list

  bool operator==(const RunConfig&) const = default;
};

/// Serialization of a run configuration; missing keys fall back to the
/// defaults above, unknown keys raise InputError.
nlohmann::json config_to_json(const RunConfig& c);
RunConfig config_from_json(const nlohmann::json& j);

/// "e<j>" (the j-th imaginary coordinate axis) or a comma-separated list of
/// the n imaginary components, normalized to a unit.  Malformed text raises
/// InputError, a null direction InvalidUnitError.
ImaginaryUnit parse_slice_unit(const Algebra& alg, const std::string& text);

/// Runs the configured command.  The report is written once at the end, to
/// the config's output path when set and to `out` otherwise; diagnostics
/// (the spectrum compactness check, verbose progress, error messages) go to
/// `diag`.  Returns the exit code; no partial report survives a failure.
int run_command(const RunConfig& config, std::ostream& out, std::ostream& diag);

}  // namespace sfc::cli
