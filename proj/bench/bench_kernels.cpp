#include <benchmark/benchmark.h>

#include "rulplan/ga.hpp"
#include "rulplan/ga_operators.hpp"
#include "rulplan/kernels.hpp"
#include "rulplan/oracle.hpp"

namespace {

using namespace rulplan;

ProblemInstance instance(std::size_t n, double rul_min = 1000, double rul_max = 2000) {
  InstanceSpec spec;
  spec.n = n;
  spec.seed = 42;
  spec.rul_min = rul_min;
  spec.rul_max = rul_max;
  return generate_instance(spec);
}

// args: assets, population size
template <Execution Mode>
void BM_ScorePopulation(benchmark::State& state) {
  const auto inst = instance(static_cast<std::size_t>(state.range(0)));
  Rng rng(1);
  const auto pop = init_population(inst.size(), static_cast<std::size_t>(state.range(1)), rng);
  std::vector<RouteScore> scores(pop.size());
  for (auto _ : state) {
    score_population(inst, pop, kDefaultPenalty, scores, Mode);
    benchmark::DoNotOptimize(scores.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(BM_ScorePopulation<Execution::serial>)
    ->Args({10, 100})->Args({50, 1000})->Args({200, 10000});
BENCHMARK(BM_ScorePopulation<Execution::parallel>)
    ->Args({10, 100})->Args({50, 1000})->Args({200, 10000});

void BM_ExhaustiveSerial(benchmark::State& state) {
  const auto inst = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::exhaustive_search_serial(inst));
}
void BM_ExhaustiveOmp(benchmark::State& state) {
  const auto inst = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::exhaustive_search_omp(inst));
}
BENCHMARK(BM_ExhaustiveSerial)->DenseRange(7, 9)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExhaustiveOmp)->DenseRange(7, 9)->Unit(benchmark::kMillisecond);

template <Execution Mode>
void BM_HeldKarp(benchmark::State& state) {
  const auto inst = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_held_karp(inst, kHeldKarpMaxN, Mode));
}
BENCHMARK(BM_HeldKarp<Execution::serial>)->Arg(12)->Arg(15)->Arg(18)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HeldKarp<Execution::parallel>)->Arg(12)->Arg(15)->Arg(18)->Unit(benchmark::kMillisecond);

template <Execution Mode>
void BM_RunGaDefaults(benchmark::State& state) {
  const auto inst = instance(static_cast<std::size_t>(state.range(0)));
  GaConfig config;
  config.seed = 3;
  for (auto _ : state) benchmark::DoNotOptimize(run_ga(inst, config, Mode));
}
BENCHMARK(BM_RunGaDefaults<Execution::serial>)->Arg(8)->Arg(30)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunGaDefaults<Execution::parallel>)->Arg(8)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
