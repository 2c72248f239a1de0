#pragma once

#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rulplan/errors.hpp"
#include "rulplan/evaluation.hpp"
#include "rulplan/rng.hpp"

// Permutation operators of the GA. Templated on the random source so
// tests can script the draws.

namespace rulplan {

/// `population_size` independent uniform permutations of 0..n_assets-1,
/// each built by a Fisher-Yates shuffle of the identity.
template <RandomSource R>
std::vector<Route> init_population(std::size_t n_assets,
                                   std::size_t population_size, R& rng) {
  std::vector<Violation> bad;
  if (n_assets < 1) bad.push_back({"n_assets", "must be >= 1"});
  if (population_size < 2) bad.push_back({"population_size", "must be >= 2"});
  if (!bad.empty()) throw ValidationError(std::move(bad));

  std::vector<Route> population(population_size);
  for (auto& individual : population) {
    individual.order.resize(n_assets);
    std::iota(individual.order.begin(), individual.order.end(), 0);
    for (std::size_t i = n_assets - 1; i > 0; --i) {
      const auto j = static_cast<std::size_t>(rng.below(i + 1));
      std::swap(individual.order[i], individual.order[j]);
    }
  }
  return population;
}

/// Uniform partially matched crossover. One unit() draw per position;
/// a selected position i exchanges the values a = c1[i], b = c2[i] by
/// swapping, in c1, position i with the position holding b, and in c2,
/// position i with the position holding a. Both children stay
/// permutations.
template <RandomSource R>
std::pair<Route, Route> uniform_pmx_crossover(const Route& parent1,
                                              const Route& parent2,
                                              double swap_prob, R& rng) {
  const std::size_t n = parent1.size();
  if (parent2.size() != n) {
    throw LengthMismatchError("crossover parents differ in length (" +
                              std::to_string(n) + " vs " +
                              std::to_string(parent2.size()) + ")");
  }
  require_permutation(parent1, n);
  require_permutation(parent2, n);

  Route c1 = parent1;
  Route c2 = parent2;
  std::vector<std::size_t> pos1(n);
  std::vector<std::size_t> pos2(n);
  for (std::size_t i = 0; i < n; ++i) {
    pos1[c1.order[i]] = i;
    pos2[c2.order[i]] = i;
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (rng.unit() >= swap_prob) continue;
    const std::size_t a = c1.order[i];
    const std::size_t b = c2.order[i];

    const std::size_t j1 = pos1[b];
    std::swap(c1.order[i], c1.order[j1]);
    pos1[c1.order[i]] = i;
    pos1[c1.order[j1]] = j1;

    const std::size_t j2 = pos2[a];
    std::swap(c2.order[i], c2.order[j2]);
    pos2[c2.order[i]] = i;
    pos2[c2.order[j2]] = j2;
  }
  return {std::move(c1), std::move(c2)};
}

/// Per-position swap mutation: position i is selected with probability
/// swap_prob and swapped with a partner drawn uniformly from the other
/// n-1 positions. Routes shorter than 2 are returned unchanged without
/// consuming draws.
template <RandomSource R>
Route uniform_swap_mutation(const Route& route, double swap_prob, R& rng) {
  Route out = route;
  const std::size_t n = out.size();
  if (n < 2) return out;
  for (std::size_t i = 0; i < n; ++i) {
    if (rng.unit() >= swap_prob) continue;
    auto j = static_cast<std::size_t>(rng.below(n - 1));
    if (j >= i) ++j;
    std::swap(out.order[i], out.order[j]);
  }
  return out;
}

/// Indices chosen by `count` tournaments of `tournament_size` draws with
/// replacement; each tournament yields its lowest-fitness entrant, ties
/// going to the lowest population index.
template <RandomSource R>
std::vector<std::size_t> tournament_indices(std::span<const double> fitnesses,
                                            std::size_t tournament_size,
                                            std::size_t count, R& rng) {
  const std::size_t pop = fitnesses.size();
  if (pop == 0) {
    throw ValidationError("population", "must not be empty");
  }
  if (tournament_size < 1 || tournament_size > pop) {
    throw ValidationError("tournament_size", "must be in [1, population size]");
  }
  std::vector<std::size_t> chosen;
  chosen.reserve(count);
  for (std::size_t t = 0; t < count; ++t) {
    auto best = static_cast<std::size_t>(rng.below(pop));
    for (std::size_t k = 1; k < tournament_size; ++k) {
      const auto cand = static_cast<std::size_t>(rng.below(pop));
      if (fitnesses[cand] < fitnesses[best] ||
          (fitnesses[cand] == fitnesses[best] && cand < best)) {
        best = cand;
      }
    }
    chosen.push_back(best);
  }
  return chosen;
}

template <RandomSource R>
std::vector<Route> tournament_select(std::span<const Route> population,
                                     std::span<const double> fitnesses,
                                     std::size_t tournament_size,
                                     std::size_t count, R& rng) {
  if (population.size() != fitnesses.size()) {
    throw LengthMismatchError("population and fitness lists are not aligned");
  }
  std::vector<Route> selected;
  selected.reserve(count);
  for (const auto idx :
       tournament_indices(fitnesses, tournament_size, count, rng)) {
    selected.push_back(population[idx]);
  }
  return selected;
}

}  // namespace rulplan
