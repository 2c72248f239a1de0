#pragma once

#include <optional>

#include "json.hpp"

#include "rulplan/evaluation.hpp"
#include "rulplan/kernels.hpp"
#include "rulplan/problem.hpp"

// Exact solvers for small instances, used as ground truth for the GA.

namespace rulplan {

enum class OracleStatus { optimal_feasible, no_feasible_route, instance_too_large };

const char* to_string(OracleStatus status) noexcept;

struct OracleResult {
  std::optional<Route> best_route;
  std::optional<RouteEvaluation> best_evaluation;
  OracleStatus status = OracleStatus::no_feasible_route;
};

inline constexpr std::size_t kExhaustiveMaxN = 10;
inline constexpr std::size_t kHeldKarpMaxN = 18;

/// Minimum-distance deadline-feasible order over all n! orders; ties go
/// to the lexicographically smallest order.
OracleResult solve_exhaustive(const ProblemInstance& instance,
                              std::size_t max_n = kExhaustiveMaxN,
                              Execution mode = Execution::parallel);

/// Subset dynamic programme with deadline pruning. Same optimum as
/// solve_exhaustive; among equal-distance optima the chosen order may
/// differ.
OracleResult solve_held_karp(const ProblemInstance& instance,
                             std::size_t max_n = kHeldKarpMaxN,
                             Execution mode = Execution::parallel);

nlohmann::json to_json(const OracleResult& result,
                       const ProblemInstance& instance);

}  // namespace rulplan
