#include <algorithm>
#include <numeric>

#include "rulplan/kernels.hpp"

namespace rulplan::kernels {

void score_population_serial(const ProblemInstance& instance,
                             std::span<const Route> population,
                             double penalty_coefficient,
                             std::span<RouteScore> scores) {
  if (scores.size() != population.size()) {
    throw LengthMismatchError("score buffer does not match population");
  }
  for (std::size_t i = 0; i < population.size(); ++i) {
    scores[i] = score_route(instance, population[i].order, penalty_coefficient);
  }
}

std::optional<ExhaustiveBest> exhaustive_search_serial(
    const ProblemInstance& instance) {
  std::vector<std::size_t> order(instance.size());
  std::iota(order.begin(), order.end(), 0);
  std::optional<ExhaustiveBest> best;
  do {
    const RouteScore s = score_route(instance, order, 0.0);
    if (s.feasible && (!best || s.total_distance < best->total_distance)) {
      best = ExhaustiveBest{order, s.total_distance};
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace rulplan::kernels
