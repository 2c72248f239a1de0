#include <omp.h>

#include <algorithm>
#include <numeric>

#include "rulplan/kernels.hpp"

namespace rulplan::kernels {

void score_population_omp(const ProblemInstance& instance,
                          std::span<const Route> population,
                          double penalty_coefficient,
                          std::span<RouteScore> scores) {
  if (scores.size() != population.size()) {
    throw LengthMismatchError("score buffer does not match population");
  }
  const auto count = static_cast<std::ptrdiff_t>(population.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    scores[i] = score_route(instance, population[i].order, penalty_coefficient);
  }
}

std::optional<ExhaustiveBest> exhaustive_search_omp(
    const ProblemInstance& instance) {
  const auto n = static_cast<std::ptrdiff_t>(instance.size());
  std::vector<std::optional<ExhaustiveBest>> branch_best(instance.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t first = 0; first < n; ++first) {
    // Lexicographically smallest order starting with `first`, then every
    // order of the remaining indices in lexicographic sequence.
    std::vector<std::size_t> order;
    order.reserve(instance.size());
    order.push_back(static_cast<std::size_t>(first));
    for (std::ptrdiff_t v = 0; v < n; ++v) {
      if (v != first) order.push_back(static_cast<std::size_t>(v));
    }
    std::optional<ExhaustiveBest> best;
    do {
      const RouteScore s = score_route(instance, order, 0.0);
      if (s.feasible && (!best || s.total_distance < best->total_distance)) {
        best = ExhaustiveBest{order, s.total_distance};
      }
    } while (std::next_permutation(order.begin() + 1, order.end()));
    branch_best[first] = std::move(best);
  }

  // Branches are in lexicographic order, so keeping the first strict
  // minimum matches the serial scan.
  std::optional<ExhaustiveBest> best;
  for (auto& b : branch_best) {
    if (b && (!best || b->total_distance < best->total_distance)) {
      best = std::move(b);
    }
  }
  return best;
}

}  // namespace rulplan::kernels
