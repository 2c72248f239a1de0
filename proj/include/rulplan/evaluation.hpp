#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rulplan/problem.hpp"

namespace rulplan {

/// Visiting order as indices into ProblemInstance::assets.
struct Route {
  std::vector<std::size_t> order;

  std::size_t size() const noexcept { return order.size(); }
  auto operator<=>(const Route&) const = default;
};

struct LateVisit {
  std::string asset_id;
  double lateness = 0.0;  // hours, > 0

  bool operator==(const LateVisit&) const = default;
};

struct RouteEvaluation {
  double total_distance = 0.0;
  std::vector<double> arrival_times;  // visit order
  std::vector<LateVisit> violations;
  bool feasible = true;
  double fitness = 0.0;

  bool operator==(const RouteEvaluation&) const = default;
};

/// The scalar part of an evaluation; what the population kernels produce.
struct RouteScore {
  double fitness = 0.0;
  double total_distance = 0.0;
  bool feasible = true;

  bool operator==(const RouteScore&) const = default;
};

inline constexpr double kDefaultPenalty = 1e4;

bool is_permutation_of(std::span<const std::size_t> order, std::size_t n);

/// Throws PermutationError unless `route` is a permutation of 0..n-1.
void require_permutation(const Route& route, std::size_t n);

/// Arrival at the k-th visit is the cumulative leg distance divided by
/// speed plus the service time of the k-1 earlier visits. A visit is late
/// when arrival > rul; ties are on time. Fitness is
/// distance + penalty * total lateness.
RouteEvaluation evaluate_route(const ProblemInstance& instance,
                               const Route& route,
                               double penalty_coefficient = kDefaultPenalty);

/// Same arithmetic as evaluate_route without the per-visit vectors or the
/// permutation check. Fitness and distance are bit-identical to it.
RouteScore score_route(const ProblemInstance& instance,
                       std::span<const std::size_t> order,
                       double penalty_coefficient) noexcept;

/// Maps asset ids to their instance indices. Throws UnknownIdError or
/// PermutationError.
Route route_from_ids(const ProblemInstance& instance,
                     const std::vector<std::string>& ids);

nlohmann::json to_json(const RouteEvaluation& evaluation);

}  // namespace rulplan
