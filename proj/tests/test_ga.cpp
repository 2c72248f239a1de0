#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "rulplan/ga.hpp"
#include "rulplan/oracle.hpp"
#include "support.hpp"

namespace rulplan {
namespace {

GaConfig small_config(std::uint64_t seed) {
  GaConfig c;
  c.population_size = 30;
  c.generations = 15;
  c.seed = seed;
  return c;
}

TEST(RunGa, SingleAssetSearchSpace) {
  ProblemInstance inst;
  inst.assets = {{"only", {6, 8}, 3, 0, 0}};
  for (std::uint64_t seed : {0u, 1u, 99u}) {
    GaConfig c = small_config(seed);
    c.mutation_prob = 1.0;
    const auto r = run_ga(inst, c);
    EXPECT_EQ(r.best_route.order, std::vector<std::size_t>{0});
    EXPECT_EQ(r.best_evaluation, evaluate_route(inst, Route{{0}}, c.penalty_coefficient));
    EXPECT_FALSE(r.best_evaluation.feasible);
  }
}

TEST(RunGa, DefaultConfiguration) {
  const GaConfig c;
  EXPECT_EQ(c.population_size, 100u);
  EXPECT_EQ(c.generations, 30u);
  EXPECT_EQ(c.elitism_count, 1u);
  EXPECT_EQ(c.penalty_coefficient, 1e4);
}

TEST(RunGa, SeedDeterminism) {
  InstanceSpec spec;
  spec.n = 9;
  spec.seed = 4;
  const auto inst = generate_instance(spec);
  GaConfig c;
  c.seed = 1234;
  const auto a = run_ga(inst, c);
  const auto b = run_ga(inst, c);
  EXPECT_EQ(a, b);
  EXPECT_EQ(to_json(a, inst).dump(), to_json(b, inst).dump());
  EXPECT_EQ(history_csv(a.history), history_csv(b.history));
}

TEST(RunGa, SerialAndParallelScoringAgree) {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto inst = testing::random_instance(gen, 3 + gen() % 12);
    GaConfig c = small_config(gen());
    EXPECT_EQ(run_ga(inst, c, Execution::serial), run_ga(inst, c, Execution::parallel));
  }
}

TEST(RunGa, HistoryShapeAndElitistDescent) {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = testing::random_instance(gen, 2 + gen() % 12, 30.0, 200.0);
    GaConfig c = small_config(gen());
    c.elitism_count = 1 + gen() % 3;
    const auto r = run_ga(inst, c);
    ASSERT_EQ(r.history.size(), c.generations + 1);
    for (std::size_t g = 0; g < r.history.size(); ++g) {
      const auto& h = r.history[g];
      ASSERT_EQ(h.generation, g);
      ASSERT_LE(h.best_fitness, h.mean_fitness);
      ASSERT_LE(h.mean_fitness, h.worst_fitness);
      if (g > 0) ASSERT_LE(h.best_fitness, r.history[g - 1].best_fitness);
    }
    ASSERT_EQ(r.history.back().best_fitness, r.best_evaluation.fitness);
    ASSERT_LE(r.best_evaluation.fitness, r.history.front().best_fitness);
  }
}

TEST(RunGa, BestEverWithoutElitism) {
  std::mt19937_64 gen(12);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = testing::random_instance(gen, 4 + gen() % 8);
    GaConfig c = small_config(gen());
    c.elitism_count = 0;
    c.mutation_prob = 1.0;
    c.mutation_swap_prob = 0.5;
    const auto r = run_ga(inst, c);
    double best = r.history[0].best_fitness;
    for (const auto& h : r.history) best = std::min(best, h.best_fitness);
    ASSERT_EQ(r.best_evaluation.fitness, best);
  }
}

TEST(RunGa, EveryIndividualIsAPermutation) {
  std::mt19937_64 gen(44);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = testing::random_instance(gen, 1 + gen() % 14);
    GaConfig c = small_config(gen());
    c.mutation_prob = 0.7;
    c.mutation_swap_prob = 0.3;
    c.crossover_swap_prob = 0.5;
    std::size_t seen = 0;
    run_ga(inst, c, Execution::parallel,
           [&](std::size_t, std::span<const Route> pop, std::span<const RouteScore>) {
             ++seen;
             ASSERT_EQ(pop.size(), c.population_size);
             for (const auto& r : pop) {
               ASSERT_TRUE(testing::is_valid_permutation(r.order, inst.size()));
             }
           });
    EXPECT_EQ(seen, c.generations + 1);
  }
}

// With no variation and no elitism each generation is a tournament
// resample of the previous one.
TEST(RunGa, ZeroProbabilityOperatorsOnlyResample) {
  InstanceSpec spec;
  spec.n = 8;
  spec.seed = 3;
  const auto inst = generate_instance(spec);
  GaConfig c = small_config(5);
  c.crossover_prob = 0.0;
  c.mutation_prob = 0.0;
  c.elitism_count = 0;
  std::vector<Route> previous;
  run_ga(inst, c, Execution::serial,
         [&](std::size_t g, std::span<const Route> pop, std::span<const RouteScore>) {
           if (g > 0) {
             for (const auto& r : pop) {
               ASSERT_NE(std::find(previous.begin(), previous.end(), r), previous.end());
             }
           }
           previous.assign(pop.begin(), pop.end());
         });
}

TEST(RunGa, RejectsBadConfig) {
  ProblemInstance inst;
  inst.assets = {{"a", {1, 1}, 10, 0, 0}};
  GaConfig c;
  c.population_size = 1;
  EXPECT_THROW(run_ga(inst, c), ValidationError);
  c = GaConfig{};
  c.tournament_size = 101;
  EXPECT_THROW(run_ga(inst, c), ValidationError);
  c = GaConfig{};
  c.elitism_count = 100;
  EXPECT_THROW(run_ga(inst, c), ValidationError);
  c = GaConfig{};
  c.mutation_prob = 1.5;
  EXPECT_THROW(run_ga(inst, c), ValidationError);
  c = GaConfig{};
  c.generations = 0;
  EXPECT_THROW(run_ga(inst, c), ValidationError);
  EXPECT_THROW(run_ga(ProblemInstance{}, GaConfig{}), ValidationError);
}

TEST(ApplyOverrides, MergesAndValidates) {
  const auto c = apply_overrides(GaConfig{}, nlohmann::json::parse(
                                                 R"({"population_size": 50, "mutation_prob": 0.4, "seed": 9})"));
  EXPECT_EQ(c.population_size, 50u);
  EXPECT_EQ(c.mutation_prob, 0.4);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.generations, 30u);
  EXPECT_THROW(apply_overrides(GaConfig{}, nlohmann::json::parse(R"({"popsize": 5})")),
               ValidationError);
  EXPECT_THROW(apply_overrides(GaConfig{}, nlohmann::json::parse(R"({"generations": -1})")),
               ValidationError);
  EXPECT_THROW(apply_overrides(GaConfig{}, nlohmann::json::parse(R"({"tournament_size": 0})")),
               ValidationError);
}

TEST(HistoryCsv, HeaderAndRows) {
  InstanceSpec spec;
  spec.n = 5;
  const auto inst = generate_instance(spec);
  const auto r = run_ga(inst, small_config(2));
  const std::string csv = history_csv(r.history);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "generation,best_fitness,mean_fitness,worst_fitness,best_distance,best_feasible");
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    std::istringstream fields(line);
    std::string gen_field, best;
    std::getline(fields, gen_field, ',');
    std::getline(fields, best, ',');
    EXPECT_EQ(std::stoul(gen_field), rows);
    EXPECT_EQ(std::stod(best), r.history[rows].best_fitness);  // %.17g round-trips
    ++rows;
  }
  EXPECT_EQ(rows, r.history.size());
}

// Seven assets, generous deadlines, default configuration, 20 seeds:
// the optimum should be found in at least 90% of runs.
TEST(RunGa, MatchesOracleOnSevenAssets) {
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    InstanceSpec spec;
    spec.n = 7;
    spec.seed = seed;
    spec.rul_min = 1000;
    spec.rul_max = 2000;
    const auto inst = generate_instance(spec);
    const auto best = testing::brute_force(inst);
    ASSERT_TRUE(best.any_feasible);
    GaConfig c;
    c.seed = seed;
    const auto r = run_ga(inst, c);
    ASSERT_TRUE(r.best_evaluation.feasible);
    ASSERT_GE(r.best_evaluation.total_distance, best.best_distance - 1e-9);
    if (r.best_evaluation.total_distance <= best.best_distance + 1e-9) ++hits;
  }
  EXPECT_GE(hits, 18) << "optimal in " << hits << " of 20 runs";
}

}  // namespace
}  // namespace rulplan
