#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "rulplan/evaluation.hpp"
#include "rulplan/kernels.hpp"
#include "rulplan/problem.hpp"

namespace rulplan {

struct GaConfig {
  std::size_t population_size = 100;
  std::size_t generations = 30;
  double crossover_prob = 0.9;
  double crossover_swap_prob = 0.2;
  double mutation_prob = 0.2;
  double mutation_swap_prob = 0.05;
  std::size_t tournament_size = 3;
  std::size_t elitism_count = 1;
  double penalty_coefficient = kDefaultPenalty;
  std::uint64_t seed = 0;

  bool operator==(const GaConfig&) const = default;
};

std::vector<Violation> check_config(const GaConfig& config);

struct GenerationStats {
  std::size_t generation = 0;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  double worst_fitness = 0.0;
  double best_distance = 0.0;
  bool best_feasible = false;

  bool operator==(const GenerationStats&) const = default;
};

struct GaRunResult {
  Route best_route;
  RouteEvaluation best_evaluation;
  std::vector<GenerationStats> history;  // generations + 1 entries
  GaConfig config;
  std::uint64_t seed = 0;

  bool operator==(const GaRunResult&) const = default;
};

/// Generational GA over visiting orders.
///
/// One Rng seeded with config.seed drives the run. Draw order:
///   1. init_population (Fisher-Yates per individual).
///   2. Per generation, for the population_size - elitism_count offspring
///      slots: all tournaments; then per consecutive pair one unit() for
///      the crossover decision plus the crossover's own draws; then per
///      offspring one unit() for the mutation decision plus the
///      mutation's draws. An odd last offspring skips crossover.
/// The elitism_count lowest-fitness individuals (ties by index) are
/// copied unchanged to the front of the next population. History rows
/// describe each generation's population; the returned best is the best
/// individual seen in any generation, earliest on ties.
/// Sees every generation's population right after it is scored.
using GenerationObserver =
    std::function<void(std::size_t generation, std::span<const Route> population,
                       std::span<const RouteScore> scores)>;

/// `mode` picks the population scoring kernel and never changes results.
GaRunResult run_ga(const ProblemInstance& instance, const GaConfig& config,
                   Execution mode = Execution::parallel,
                   const GenerationObserver& observer = {});

/// CSV with header
/// generation,best_fitness,mean_fitness,worst_fitness,best_distance,best_feasible
std::string history_csv(const std::vector<GenerationStats>& history);

nlohmann::json to_json(const GaConfig& config);
nlohmann::json to_json(const GenerationStats& stats);
nlohmann::json to_json(const GaRunResult& result,
                       const ProblemInstance& instance);

/// Applies the keys present in `overrides` to `base`. Unknown keys and
/// bad types are ValidationErrors; the merged config is checked too.
GaConfig apply_overrides(GaConfig base, const nlohmann::json& overrides);

}  // namespace rulplan
