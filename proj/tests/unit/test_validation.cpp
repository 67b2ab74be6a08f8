#include <doctest.h>

#include "cpheat/validation.hpp"

using namespace cpheat;

TEST_CASE("tier names") {
  CHECK(parse_tier("quick") == Tier::quick);
  CHECK(parse_tier("full") == Tier::full);
  CHECK(tier_name(Tier::full) == "full");
  CHECK_THROWS_AS(parse_tier("medium"), std::invalid_argument);
  CHECK(monte_carlo_plan(Tier::full).paths > monte_carlo_plan(Tier::quick).paths);
  CHECK(monte_carlo_plan(Tier::full).dt < monte_carlo_plan(Tier::quick).dt);
}

TEST_CASE("worst check") {
  CriterionReport r{1, "demo", {}};
  CHECK(r.worst() == nullptr);
  r.checks.push_back({"a", {}, 1.0, 10.0, true});
  r.checks.push_back({"b", {}, 9.0, 10.0, true});
  CHECK(r.pass());
  CHECK(r.worst()->check_name == "b");
  r.checks.push_back({"c", {}, 11.0, 10.0, false});
  r.checks.push_back({"d", {}, 50.0, 10.0, false});
  CHECK_FALSE(r.pass());
  CHECK(r.worst()->check_name == "d");
}

TEST_CASE("deterministic criteria pass") {
  for (const auto& rep : {validate_coefficients(), validate_neumann(), validate_operators(),
                          validate_boundary_terms(1), validate_laplace()}) {
    CAPTURE(rep.id);
    CHECK(rep.pass());
    CHECK_FALSE(rep.checks.empty());
  }
}

TEST_CASE("report JSON is reproducible") {
  const ValidationOptions opts{Tier::quick, 7, 1};
  const std::vector<CriterionReport> reps{validate_coefficients(), validate_boundary_terms(7)};
  const auto a = report_to_json(opts, reps);
  const auto b = report_to_json(opts, {validate_coefficients(), validate_boundary_terms(7)});
  CHECK(a.dump() == b.dump());
  CHECK(a["tier"] == "quick");
  CHECK(a["seed"] == 7);
  CHECK(a["criteria"].size() == 2);
  CHECK(a["pass"] == true);
}
