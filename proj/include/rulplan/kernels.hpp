#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "rulplan/evaluation.hpp"
#include "rulplan/problem.hpp"

// Data-parallel kernels. Each has a serial reference and an OpenMP
// version; both write results by index and reduce in a fixed order, so
// they are bit-identical and tests compare them directly.

namespace rulplan {

enum class Execution { serial, parallel };

namespace kernels {

/// scores[i] = score_route(instance, population[i], penalty).
void score_population_serial(const ProblemInstance& instance,
                             std::span<const Route> population,
                             double penalty_coefficient,
                             std::span<RouteScore> scores);

void score_population_omp(const ProblemInstance& instance,
                          std::span<const Route> population,
                          double penalty_coefficient,
                          std::span<RouteScore> scores);

/// Best feasible order by (total distance, lexicographic order) over all
/// n! orders. Empty when no order is feasible.
struct ExhaustiveBest {
  std::vector<std::size_t> order;
  double total_distance = 0.0;
};

std::optional<ExhaustiveBest> exhaustive_search_serial(
    const ProblemInstance& instance);

/// Splits the search by first visit and reduces the per-branch winners
/// in branch order.
std::optional<ExhaustiveBest> exhaustive_search_omp(
    const ProblemInstance& instance);

}  // namespace kernels

inline void score_population(const ProblemInstance& instance,
                             std::span<const Route> population,
                             double penalty_coefficient,
                             std::span<RouteScore> scores, Execution mode) {
  if (mode == Execution::parallel) {
    kernels::score_population_omp(instance, population, penalty_coefficient,
                                  scores);
  } else {
    kernels::score_population_serial(instance, population,
                                     penalty_coefficient, scores);
  }
}

}  // namespace rulplan
