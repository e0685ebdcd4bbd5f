// Command-line front end: parses flags into a RunConfig and hands off to the
// library-level command runner, so every code path stays testable in-process.
#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "sfc/cli.hpp"

namespace {

// Shared numeric and output flags; each subcommand opts into the set that
// makes sense for it.
void add_output_flags(CLI::App* sub, sfc::cli::RunConfig& cfg) {
  sub->add_option("--format", cfg.format, "report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--output", cfg.output_path,
                  "write the report to this file instead of stdout");
  sub->add_flag_function(
      "-v,--verbose",
      [&cfg](std::int64_t count) { cfg.verbosity = static_cast<int>(count); },
      "print progress diagnostics to stderr");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Numerical laboratory for the S-functional calculus of operator "
      "tuples: spectra, resolvents, contour calculus, Riesz projectors, and "
      "a randomized identity-verification suite."};
  app.require_subcommand(1);

  sfc::cli::RunConfig cfg;
  double tol_value = 0.0;

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "Compute the S-spectrum of an operator tuple");
  spectrum->add_option("--input", cfg.input_path, "operator JSON document")
      ->required();
  add_output_flags(spectrum, cfg);

  CLI::App* verify = app.add_subcommand(
      "verify", "Run every operator identity on randomized instances");
  verify->add_option("--seed", cfg.seed, "root seed of the instance family");
  verify->add_option("--instances", cfg.instances,
                     "number of randomized instances")
      ->check(CLI::PositiveNumber);
  CLI::Option* tol_opt = verify->add_option(
      "--tol", tol_value,
      "tolerance override replacing the documented per-identity bases");
  verify->add_option("--nodes", cfg.nodes, "quadrature nodes per circle")
      ->check(CLI::PositiveNumber);
  add_output_flags(verify, cfg);

  CLI::App* funcalc = app.add_subcommand(
      "funcalc", "Evaluate f(T) by slice contour quadrature");
  funcalc->add_option("--input", cfg.input_path, "operator JSON document")
      ->required();
  funcalc->add_option("--function", cfg.function_path,
                      "function JSON descriptor")
      ->required();
  funcalc->add_option("--nodes", cfg.nodes, "quadrature nodes per circle")
      ->check(CLI::PositiveNumber);
  funcalc->add_option("--slice-unit", cfg.slice_unit,
                      "slice plane: e<j> or comma-separated components");
  funcalc->add_option("--radius", cfg.radius_cap,
                      "cap on the contour circle radii")
      ->check(CLI::PositiveNumber);
  add_output_flags(funcalc, cfg);

  CLI::App* riesz = app.add_subcommand(
      "riesz", "Riesz projector of a subset of spectral spheres");
  riesz->add_option("--input", cfg.input_path, "operator JSON document")
      ->required();
  riesz->add_option("--subset", cfg.subset,
                    "indices into the sphere list of the S-spectrum")
      ->required()
      ->delimiter(',');
  riesz->add_option("--nodes", cfg.nodes, "quadrature nodes per circle")
      ->check(CLI::PositiveNumber);
  riesz->add_option("--slice-unit", cfg.slice_unit,
                    "slice plane: e<j> or comma-separated components");
  riesz->add_option("--radius", cfg.radius_cap,
                    "cap on the contour circle radii")
      ->check(CLI::PositiveNumber);
  add_output_flags(riesz, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return sfc::cli::exit_input_error;
  }

  for (CLI::App* sub : {spectrum, verify, funcalc, riesz})
    if (sub->parsed()) cfg.command = sub->get_name();
  if (tol_opt->count() > 0) cfg.tol_override = tol_value;

  return sfc::cli::run_command(cfg, std::cout, std::cerr);
}
