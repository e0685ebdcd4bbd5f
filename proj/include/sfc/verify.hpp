#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "sfc/operator.hpp"

namespace sfc {

/// One identity checked on one randomized instance.  `tol` is the bound the
/// residual was compared against (conditioning already folded in), `s` and
/// `p` identify the probe scalars when the identity has them.
struct VerifyRecord {
  std::string identity;
  std::uint64_t seed = 0;
  std::optional<Paravector> s;
  std::optional<Paravector> p;
  double residual = 0.0;
  double cond = 1.0;
  double tol = 0.0;
  bool pass = false;
};

struct VerifyConfig {
  std::uint64_t seed = 42;
  int instances = 20;
  int nodes = 512;
  int scalars_per_instance = 5;
  /// Replaces the documented base tolerance of every identity when set
  /// (condition-number scaling still applies where documented).
  std::optional<double> tol_override;
};

/// Runs the full identity suite: classical one-sided resolvent equations,
/// both forms of the two-sided equation and their mutual agreement,
/// pseudo-resolvent commutation, the finite geometric sums, kernel form
/// equality, commuting-tuple cross-checks (symmetric resolvent and the
/// companion spectrum), reproducing integrals, Riesz projectors, the product
/// rule, the Laplace representation, and slice independence of the calculus.
/// Instances cycle through d in {2,3,4} and scalars in {R_1, R_2, R_3, H};
/// every draw derives from config.seed, so reports are reproducible.
std::vector<VerifyRecord> run_verification(const VerifyConfig& config);

bool all_pass(const std::vector<VerifyRecord>& records);

nlohmann::json records_to_json(const std::vector<VerifyRecord>& records);

/// Canonical report: compact JSON array, one trailing newline.
std::string report_to_string(const std::vector<VerifyRecord>& records);

}  // namespace sfc
