#include "rulplan/evaluation.hpp"

#include <string>
#include <unordered_map>

namespace rulplan {

namespace {

// Single source of the route arithmetic for evaluate_route and
// score_route. `on_visit(k, asset_index, arrival, lateness)` fires per
// visit; returns total distance and summed lateness.
template <class OnVisit>
std::pair<double, double> walk_route(const ProblemInstance& instance,
                                     std::span<const std::size_t> order,
                                     OnVisit&& on_visit) {
  double path = 0.0;
  double service_before = 0.0;
  double lateness_sum = 0.0;
  Point2D here = instance.center;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const AssetRecord& asset = instance.assets[order[k]];
    path += distance(here, asset.position);
    const double arrival = path / instance.travel_speed + service_before;
    const double lateness = arrival > asset.rul ? arrival - asset.rul : 0.0;
    lateness_sum += lateness;
    on_visit(k, order[k], arrival, lateness);
    service_before += asset.service_time;
    here = asset.position;
  }
  if (instance.return_to_center && !order.empty()) {
    path += distance(here, instance.center);
  }
  return {path, lateness_sum};
}

}  // namespace

bool is_permutation_of(std::span<const std::size_t> order, std::size_t n) {
  if (order.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (const auto v : order) {
    if (v >= n || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

void require_permutation(const Route& route, std::size_t n) {
  if (route.size() != n) {
    throw PermutationError("route has " + std::to_string(route.size()) +
                           " entries, expected " + std::to_string(n));
  }
  std::vector<bool> seen(n, false);
  for (const auto v : route.order) {
    if (v >= n) {
      throw PermutationError("route index " + std::to_string(v) +
                             " out of range");
    }
    if (seen[v]) {
      throw PermutationError("route visits index " + std::to_string(v) +
                             " twice");
    }
    seen[v] = true;
  }
}

RouteEvaluation evaluate_route(const ProblemInstance& instance,
                               const Route& route,
                               double penalty_coefficient) {
  require_permutation(route, instance.size());
  RouteEvaluation ev;
  ev.arrival_times.resize(route.size());
  const auto [path, lateness_sum] = walk_route(
      instance, route.order,
      [&](std::size_t k, std::size_t idx, double arrival, double lateness) {
        ev.arrival_times[k] = arrival;
        if (lateness > 0.0) {
          ev.violations.push_back({instance.assets[idx].id, lateness});
        }
      });
  ev.total_distance = path;
  ev.feasible = ev.violations.empty();
  ev.fitness = path + penalty_coefficient * lateness_sum;
  return ev;
}

RouteScore score_route(const ProblemInstance& instance,
                       std::span<const std::size_t> order,
                       double penalty_coefficient) noexcept {
  bool feasible = true;
  const auto [path, lateness_sum] = walk_route(
      instance, order, [&](std::size_t, std::size_t, double, double lateness) {
        feasible = feasible && !(lateness > 0.0);
      });
  return {path + penalty_coefficient * lateness_sum, path, feasible};
}

Route route_from_ids(const ProblemInstance& instance,
                     const std::vector<std::string>& ids) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < instance.assets.size(); ++i) {
    index.emplace(instance.assets[i].id, i);
  }
  Route route;
  route.order.reserve(ids.size());
  std::vector<bool> seen(instance.size(), false);
  for (const auto& id : ids) {
    auto it = index.find(id);
    if (it == index.end()) throw UnknownIdError("unknown asset id \"" + id + "\"");
    if (seen[it->second]) {
      throw PermutationError("asset id \"" + id + "\" listed twice");
    }
    seen[it->second] = true;
    route.order.push_back(it->second);
  }
  if (route.size() != instance.size()) {
    throw PermutationError("route lists " + std::to_string(route.size()) +
                           " of " + std::to_string(instance.size()) +
                           " assets");
  }
  return route;
}

nlohmann::json to_json(const RouteEvaluation& evaluation) {
  nlohmann::json violations = nlohmann::json::array();
  for (const auto& v : evaluation.violations) {
    violations.push_back({{"asset_id", v.asset_id}, {"lateness", v.lateness}});
  }
  return {{"total_distance", evaluation.total_distance},
          {"arrival_times", evaluation.arrival_times},
          {"violations", std::move(violations)},
          {"feasible", evaluation.feasible},
          {"fitness", evaluation.fitness}};
}

}  // namespace rulplan
