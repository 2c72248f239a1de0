#include "rulplan/ga.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "json_fields.hpp"
#include "rulplan/ga_operators.hpp"
#include "rulplan/rng.hpp"

namespace rulplan {

using nlohmann::json;

std::vector<Violation> check_config(const GaConfig& c) {
  std::vector<Violation> out;
  if (c.population_size < 2) {
    out.push_back({"population_size", "must be >= 2"});
  }
  if (c.generations < 1) out.push_back({"generations", "must be >= 1"});
  auto prob = [&](const char* name, double p) {
    if (!(p >= 0.0 && p <= 1.0)) out.push_back({name, "must be in [0, 1]"});
  };
  prob("crossover_prob", c.crossover_prob);
  prob("crossover_swap_prob", c.crossover_swap_prob);
  prob("mutation_prob", c.mutation_prob);
  prob("mutation_swap_prob", c.mutation_swap_prob);
  if (c.tournament_size < 1 || c.tournament_size > c.population_size) {
    out.push_back({"tournament_size", "must be in [1, population_size]"});
  }
  if (c.elitism_count >= c.population_size) {
    out.push_back({"elitism_count", "must be < population_size"});
  }
  if (!(c.penalty_coefficient >= 0.0) || !std::isfinite(c.penalty_coefficient)) {
    out.push_back({"penalty_coefficient", "must be finite and >= 0"});
  }
  return out;
}

namespace {

GenerationStats summarize(std::size_t generation,
                          std::span<const RouteScore> scores,
                          std::size_t& best_index) {
  best_index = 0;
  double sum = 0.0;
  double worst = scores[0].fitness;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (scores[i].fitness < scores[best_index].fitness) best_index = i;
    worst = std::max(worst, scores[i].fitness);
    sum += scores[i].fitness;
  }
  const auto& best = scores[best_index];
  // Clamp so rounding in the sum cannot put the mean outside [best, worst].
  const double mean = std::clamp(sum / static_cast<double>(scores.size()),
                                 best.fitness, worst);
  return {generation, best.fitness, mean, worst, best.total_distance,
          best.feasible};
}

}  // namespace

GaRunResult run_ga(const ProblemInstance& instance, const GaConfig& config,
                   Execution mode, const GenerationObserver& observer) {
  require_valid(instance);
  if (auto bad = check_config(config); !bad.empty()) {
    throw ValidationError(std::move(bad));
  }

  const std::size_t pop_size = config.population_size;
  Rng rng(config.seed);
  std::vector<Route> population =
      init_population(instance.size(), pop_size, rng);
  std::vector<RouteScore> scores(pop_size);
  std::vector<double> fitness(pop_size);

  GaRunResult result;
  result.config = config;
  result.seed = config.seed;
  result.history.reserve(config.generations + 1);

  RouteScore best_score;
  bool have_best = false;

  auto evaluate_generation = [&](std::size_t generation) {
    score_population(instance, population, config.penalty_coefficient, scores,
                     mode);
    if (observer) observer(generation, population, scores);
    std::size_t best_index = 0;
    result.history.push_back(summarize(generation, scores, best_index));
    if (!have_best || scores[best_index].fitness < best_score.fitness) {
      best_score = scores[best_index];
      result.best_route = population[best_index];
      have_best = true;
    }
    for (std::size_t i = 0; i < pop_size; ++i) fitness[i] = scores[i].fitness;
  };

  evaluate_generation(0);

  std::vector<std::size_t> ranking(pop_size);
  for (std::size_t gen = 1; gen <= config.generations; ++gen) {
    std::vector<Route> next;
    next.reserve(pop_size);

    if (config.elitism_count > 0) {
      std::iota(ranking.begin(), ranking.end(), 0);
      std::stable_sort(ranking.begin(), ranking.end(),
                       [&](std::size_t a, std::size_t b) {
                         return fitness[a] < fitness[b];
                       });
      for (std::size_t e = 0; e < config.elitism_count; ++e) {
        next.push_back(population[ranking[e]]);
      }
    }

    const std::size_t offspring_count = pop_size - config.elitism_count;
    std::vector<Route> offspring = tournament_select(
        std::span<const Route>(population), std::span<const double>(fitness),
        config.tournament_size, offspring_count, rng);

    for (std::size_t i = 0; i + 1 < offspring_count; i += 2) {
      if (rng.unit() < config.crossover_prob) {
        auto [a, b] = uniform_pmx_crossover(offspring[i], offspring[i + 1],
                                            config.crossover_swap_prob, rng);
        offspring[i] = std::move(a);
        offspring[i + 1] = std::move(b);
      }
    }
    for (auto& child : offspring) {
      if (rng.unit() < config.mutation_prob) {
        child = uniform_swap_mutation(child, config.mutation_swap_prob, rng);
      }
    }

    for (auto& child : offspring) {
      next.push_back(std::move(child));
    }
#ifndef NDEBUG
    for (const auto& r : next) require_permutation(r, instance.size());
#endif
    population = std::move(next);
    evaluate_generation(gen);
  }

  result.best_evaluation =
      evaluate_route(instance, result.best_route, config.penalty_coefficient);
  return result;
}

std::string history_csv(const std::vector<GenerationStats>& history) {
  std::string out =
      "generation,best_fitness,mean_fitness,worst_fitness,best_distance,"
      "best_feasible\n";
  char line[256];
  for (const auto& h : history) {
    // %.17g round-trips doubles exactly.
    std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g,%.17g,%s\n",
                  h.generation, h.best_fitness, h.mean_fitness,
                  h.worst_fitness, h.best_distance,
                  h.best_feasible ? "true" : "false");
    out += line;
  }
  return out;
}

json to_json(const GaConfig& c) {
  return {{"population_size", c.population_size},
          {"generations", c.generations},
          {"crossover_prob", c.crossover_prob},
          {"crossover_swap_prob", c.crossover_swap_prob},
          {"mutation_prob", c.mutation_prob},
          {"mutation_swap_prob", c.mutation_swap_prob},
          {"tournament_size", c.tournament_size},
          {"elitism_count", c.elitism_count},
          {"penalty_coefficient", c.penalty_coefficient},
          {"seed", c.seed}};
}

json to_json(const GenerationStats& s) {
  return {{"generation", s.generation},
          {"best_fitness", s.best_fitness},
          {"mean_fitness", s.mean_fitness},
          {"worst_fitness", s.worst_fitness},
          {"best_distance", s.best_distance},
          {"best_feasible", s.best_feasible}};
}

json to_json(const GaRunResult& r, const ProblemInstance& instance) {
  json ids = json::array();
  for (const auto idx : r.best_route.order) ids.push_back(instance.assets[idx].id);
  json history = json::array();
  for (const auto& h : r.history) history.push_back(to_json(h));
  return {{"best_route", r.best_route.order},
          {"best_route_ids", std::move(ids)},
          {"best_evaluation", to_json(r.best_evaluation)},
          {"history", std::move(history)},
          {"config", to_json(r.config)},
          {"seed", r.seed}};
}

GaConfig apply_overrides(GaConfig base, const json& overrides) {
  std::vector<Violation> out;
  detail::FieldReader r(overrides, "ga", out,
                        {"population_size", "generations", "crossover_prob",
                         "crossover_swap_prob", "mutation_prob",
                         "mutation_swap_prob", "tournament_size",
                         "elitism_count", "penalty_coefficient", "seed"});
  auto set_count = [&](const char* key, std::size_t& field) {
    if (auto v = r.count(key, false)) field = static_cast<std::size_t>(*v);
  };
  auto set_number = [&](const char* key, double& field) {
    if (auto v = r.number(key, false)) field = *v;
  };
  set_count("population_size", base.population_size);
  set_count("generations", base.generations);
  set_number("crossover_prob", base.crossover_prob);
  set_number("crossover_swap_prob", base.crossover_swap_prob);
  set_number("mutation_prob", base.mutation_prob);
  set_number("mutation_swap_prob", base.mutation_swap_prob);
  set_count("tournament_size", base.tournament_size);
  set_count("elitism_count", base.elitism_count);
  set_number("penalty_coefficient", base.penalty_coefficient);
  if (auto v = r.count("seed", false)) base.seed = *v;

  if (out.empty()) {
    for (auto& v : check_config(base)) {
      v.path = "ga." + v.path;
      out.push_back(std::move(v));
    }
  }
  if (!out.empty()) throw ValidationError(std::move(out));
  return base;
}

}  // namespace rulplan
