#include "rulplan/plan_report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json_fields.hpp"

namespace rulplan {

using nlohmann::json;

PlanCosts annotate_plan_cost(const RouteEvaluation& evaluation,
                             const ProblemInstance& instance) {
  double service_total = 0.0;
  double parts = 0.0;
  for (const auto& a : instance.assets) {
    service_total += a.service_time;
    parts += a.component_cost;
  }
  PlanCosts c;
  c.travel_time = evaluation.total_distance / instance.travel_speed;
  c.labor_cost = instance.hourly_wage * (c.travel_time + service_total);
  c.parts_cost = parts;
  c.total_cost = c.labor_cost + c.parts_cost;
  return c;
}

PlanReport build_plan_report(const ProblemInstance& instance,
                             const GaRunResult& result, std::string plan_id,
                             Timestamp created_at) {
  PlanReport plan;
  plan.plan_id = std::move(plan_id);
  plan.created_at = created_at;
  const auto& ev = result.best_evaluation;
  plan.visits.reserve(result.best_route.size());
  for (std::size_t k = 0; k < result.best_route.size(); ++k) {
    const auto& asset = instance.assets[result.best_route.order[k]];
    plan.visits.push_back({asset.id, ev.arrival_times[k], asset.rul,
                           asset.rul - ev.arrival_times[k]});
  }
  plan.total_distance = ev.total_distance;
  plan.feasible = ev.feasible;
  plan.costs = annotate_plan_cost(ev, instance);
  plan.ga_summary = {result.history.back(), result.seed};
  return plan;
}

json to_json(const PlanReport& plan) {
  json visits = json::array();
  for (const auto& v : plan.visits) {
    visits.push_back({{"asset_id", v.asset_id},
                      {"arrival_time", v.arrival_time},
                      {"deadline", v.deadline},
                      {"slack", v.slack}});
  }
  json summary = to_json(plan.ga_summary.final_generation);
  summary["seed"] = plan.ga_summary.seed;
  return {{"plan_id", plan.plan_id},
          {"created_at", format_rfc3339(plan.created_at)},
          {"visits", std::move(visits)},
          {"total_distance", plan.total_distance},
          {"feasible", plan.feasible},
          {"travel_time", plan.costs.travel_time},
          {"labor_cost", plan.costs.labor_cost},
          {"parts_cost", plan.costs.parts_cost},
          {"total_cost", plan.costs.total_cost},
          {"ga_summary", std::move(summary)}};
}

PlanReport plan_from_json(const json& doc) {
  std::vector<Violation> out;
  PlanReport plan;
  detail::FieldReader r(doc, "", out,
                        {"plan_id", "created_at", "visits", "total_distance",
                         "feasible", "travel_time", "labor_cost", "parts_cost",
                         "total_cost", "ga_summary"});
  plan.plan_id = r.string("plan_id", true).value_or("");
  if (auto ts = r.string("created_at", true)) {
    if (auto parsed = parse_rfc3339(*ts)) {
      plan.created_at = *parsed;
    } else {
      r.report("created_at", "must be an RFC 3339 timestamp");
    }
  }
  if (const auto* visits = r.find("visits", true)) {
    if (!visits->is_array()) {
      r.report("visits", "must be an array");
    } else {
      for (std::size_t i = 0; i < visits->size(); ++i) {
        detail::FieldReader v((*visits)[i], "visits[" + std::to_string(i) + "]",
                              out,
                              {"asset_id", "arrival_time", "deadline", "slack"});
        plan.visits.push_back({v.string("asset_id", true).value_or(""),
                               v.number("arrival_time", true).value_or(0.0),
                               v.number("deadline", true).value_or(0.0),
                               v.number("slack", true).value_or(0.0)});
      }
    }
  }
  plan.total_distance = r.number("total_distance", true).value_or(0.0);
  plan.feasible = r.boolean("feasible", true).value_or(false);
  plan.costs.travel_time = r.number("travel_time", true).value_or(0.0);
  plan.costs.labor_cost = r.number("labor_cost", true).value_or(0.0);
  plan.costs.parts_cost = r.number("parts_cost", true).value_or(0.0);
  plan.costs.total_cost = r.number("total_cost", true).value_or(0.0);
  if (const auto* s = r.find("ga_summary", true)) {
    detail::FieldReader g(*s, "ga_summary", out,
                          {"generation", "best_fitness", "mean_fitness",
                           "worst_fitness", "best_distance", "best_feasible",
                           "seed"});
    auto& f = plan.ga_summary.final_generation;
    f.generation = g.count("generation", true).value_or(0);
    f.best_fitness = g.number("best_fitness", true).value_or(0.0);
    f.mean_fitness = g.number("mean_fitness", true).value_or(0.0);
    f.worst_fitness = g.number("worst_fitness", true).value_or(0.0);
    f.best_distance = g.number("best_distance", true).value_or(0.0);
    f.best_feasible = g.boolean("best_feasible", true).value_or(false);
    plan.ga_summary.seed = g.count("seed", true).value_or(0);
  }
  if (!out.empty()) throw ValidationError(std::move(out));
  return plan;
}

std::vector<std::string> audit_plan(const PlanReport& plan,
                                    const ProblemInstance& instance,
                                    double tolerance) {
  std::vector<std::string> issues;
  std::vector<std::string> ids;
  for (const auto& v : plan.visits) ids.push_back(v.asset_id);
  Route route;
  try {
    route = route_from_ids(instance, ids);
  } catch (const Error& e) {
    issues.emplace_back(e.what());
    return issues;
  }

  auto off = [&](double a, double b) { return !(std::fabs(a - b) <= tolerance); };
  char buf[256];
  double path = 0.0;
  double service_before = 0.0;
  bool feasible = true;
  Point2D here = instance.center;
  for (std::size_t k = 0; k < route.size(); ++k) {
    const auto& asset = instance.assets[route.order[k]];
    const auto& visit = plan.visits[k];
    path += distance(here, asset.position);
    const double arrival = path / instance.travel_speed + service_before;
    const double slack = asset.rul - arrival;
    feasible = feasible && slack >= 0.0;
    if (off(arrival, visit.arrival_time)) {
      std::snprintf(buf, sizeof buf, "%s: arrival %.17g, plan says %.17g",
                    asset.id.c_str(), arrival, visit.arrival_time);
      issues.emplace_back(buf);
    }
    if (off(asset.rul, visit.deadline)) {
      std::snprintf(buf, sizeof buf, "%s: deadline %.17g, plan says %.17g",
                    asset.id.c_str(), asset.rul, visit.deadline);
      issues.emplace_back(buf);
    }
    if (off(slack, visit.slack)) {
      std::snprintf(buf, sizeof buf, "%s: slack %.17g, plan says %.17g",
                    asset.id.c_str(), slack, visit.slack);
      issues.emplace_back(buf);
    }
    service_before += asset.service_time;
    here = asset.position;
  }
  if (instance.return_to_center) path += distance(here, instance.center);
  if (off(path, plan.total_distance)) {
    std::snprintf(buf, sizeof buf, "total distance %.17g, plan says %.17g",
                  path, plan.total_distance);
    issues.emplace_back(buf);
  }
  RouteEvaluation recomputed;
  recomputed.total_distance = path;
  const auto costs = annotate_plan_cost(recomputed, instance);
  const std::pair<const char*, std::pair<double, double>> cost_fields[] = {
      {"travel_time", {costs.travel_time, plan.costs.travel_time}},
      {"labor_cost", {costs.labor_cost, plan.costs.labor_cost}},
      {"parts_cost", {costs.parts_cost, plan.costs.parts_cost}},
      {"total_cost", {costs.total_cost, plan.costs.total_cost}}};
  for (const auto& [name, values] : cost_fields) {
    // money scales with the wage, so compare relative to magnitude
    const double scale = std::max(1.0, std::fabs(values.first));
    if (!(std::fabs(values.first - values.second) <= tolerance * scale)) {
      std::snprintf(buf, sizeof buf, "%s %.17g, plan says %.17g", name,
                    values.first, values.second);
      issues.emplace_back(buf);
    }
  }
  if (feasible != plan.feasible) {
    issues.emplace_back(std::string("feasible flag is ") +
                        (plan.feasible ? "true" : "false") +
                        " but recomputed arrivals say " +
                        (feasible ? "true" : "false"));
  }
  return issues;
}

}  // namespace rulplan
