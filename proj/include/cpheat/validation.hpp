#pragma once

// Executable checks of the library's identities, grouped into the numbered
// criteria of the acceptance suite. Shared by `cpheat validate` and the
// acceptance test.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace cpheat {

struct CheckResult {
  std::string check_name;
  nlohmann::json params;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct CriterionReport {
  int id = 0;
  std::string name;
  std::vector<CheckResult> checks;

  [[nodiscard]] bool pass() const;
  /// The failing check with the largest measured / tolerance, or the
  /// tightest passing one.
  [[nodiscard]] const CheckResult* worst() const;
};

enum class Tier { quick, full };

struct ValidationOptions {
  Tier tier = Tier::quick;
  std::uint64_t seed = 20240611;
  int threads = 1;
};

/// Monte Carlo sizes for a tier.
struct MonteCarloPlan {
  long paths = 0;
  double dt = 0.0;
};
MonteCarloPlan monte_carlo_plan(Tier tier);

CriterionReport validate_coefficients();
CriterionReport validate_neumann();
CriterionReport validate_density_1d();
CriterionReport validate_density_2d();
CriterionReport validate_operators();
CriterionReport validate_heat_residual();
CriterionReport validate_boundary_terms(std::uint64_t seed);
CriterionReport validate_laplace();
CriterionReport validate_monte_carlo(const ValidationOptions& opts);

/// Criteria 1 through 9 in order.
std::vector<CriterionReport> run_validation(const ValidationOptions& opts);

/// Deterministic report: no timings, doubles at round-trip precision.
nlohmann::json report_to_json(const ValidationOptions& opts,
                              const std::vector<CriterionReport>& reports);

std::string tier_name(Tier tier);
Tier parse_tier(const std::string& name);

}  // namespace cpheat
