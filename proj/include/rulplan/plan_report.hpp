#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "rulplan/ga.hpp"
#include "rulplan/problem.hpp"
#include "rulplan/timestamp.hpp"

namespace rulplan {

struct PlanVisit {
  std::string asset_id;
  double arrival_time = 0.0;  // hours
  double deadline = 0.0;      // the asset's RUL
  double slack = 0.0;         // deadline - arrival_time

  bool operator==(const PlanVisit&) const = default;
};

struct PlanCosts {
  double travel_time = 0.0;
  double labor_cost = 0.0;  // hourly_wage * (travel_time + total service)
  double parts_cost = 0.0;
  double total_cost = 0.0;

  bool operator==(const PlanCosts&) const = default;
};

struct GaSummary {
  GenerationStats final_generation;
  std::uint64_t seed = 0;

  bool operator==(const GaSummary&) const = default;
};

struct PlanReport {
  std::string plan_id;
  Timestamp created_at{};
  std::vector<PlanVisit> visits;
  double total_distance = 0.0;
  bool feasible = false;
  PlanCosts costs;
  GaSummary ga_summary;

  bool operator==(const PlanReport&) const = default;
};

/// Costs are reported on the chosen route, not optimised.
PlanCosts annotate_plan_cost(const RouteEvaluation& evaluation,
                             const ProblemInstance& instance);

PlanReport build_plan_report(const ProblemInstance& instance,
                             const GaRunResult& result, std::string plan_id,
                             Timestamp created_at);

nlohmann::json to_json(const PlanReport& plan);
PlanReport plan_from_json(const nlohmann::json& doc);

/// Recomputes arrivals of the plan's visit order against `instance`
/// directly from coordinates and checks every stored arrival, slack and
/// the feasible flag. Returns the mismatches found; empty when the plan
/// is consistent.
std::vector<std::string> audit_plan(const PlanReport& plan,
                                    const ProblemInstance& instance,
                                    double tolerance = 1e-9);

}  // namespace rulplan
