#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "rulplan/ga_operators.hpp"
#include "support.hpp"

namespace rulplan {
namespace {

using testing::StubRng;
using Order = std::vector<std::size_t>;

TEST(InitPopulation, SingleAsset) {
  Rng rng(1);
  for (const auto& r : init_population(1, 10, rng)) EXPECT_EQ(r.order, Order{0});
}

TEST(InitPopulation, Deterministic) {
  Rng a(77), b(77);
  EXPECT_EQ(init_population(6, 100, a), init_population(6, 100, b));
}

TEST(InitPopulation, RejectsBadSizes) {
  Rng rng(1);
  EXPECT_THROW(init_population(0, 10, rng), ValidationError);
  EXPECT_THROW(init_population(3, 1, rng), ValidationError);
}

// Each of the 6 permutations of 3 has probability 1/6: expected 1000 of
// 6000, sigma = sqrt(6000 * 1/6 * 5/6) = 28.87.
TEST(InitPopulation, UniformOverPermutations) {
  Rng rng(2024);
  std::map<Order, int> counts;
  for (const auto& r : init_population(3, 6000, rng)) ++counts[r.order];
  ASSERT_EQ(counts.size(), 6u);
  const double sigma = std::sqrt(6000.0 * (1.0 / 6.0) * (5.0 / 6.0));
  for (const auto& [perm, c] : counts) {
    EXPECT_NEAR(c, 1000.0, 3.0 * sigma);
  }
}

TEST(UniformPmx, ZeroProbabilityCopiesParents) {
  Rng rng(3);
  const Route p1{{0, 1, 2, 3, 4}}, p2{{4, 2, 0, 3, 1}};
  const auto [c1, c2] = uniform_pmx_crossover(p1, p2, 0.0, rng);
  EXPECT_EQ(c1, p1);
  EXPECT_EQ(c2, p2);
}

// Only position 0 selected: a = 0, b = 3. c1 swaps positions 0 and 3
// (where 3 sits); c2 swaps positions 0 and 3 (where 0 sits).
TEST(UniformPmx, SinglePositionStepThrough) {
  StubRng rng({}, {0.0, 0.9, 0.9, 0.9});
  const auto [c1, c2] =
      uniform_pmx_crossover(Route{{0, 1, 2, 3}}, Route{{3, 2, 1, 0}}, 0.5, rng);
  EXPECT_EQ(c1.order, (Order{3, 1, 2, 0}));
  EXPECT_EQ(c2.order, (Order{0, 2, 1, 3}));
  EXPECT_EQ(rng.units_left(), 0u);
}

// Only position 1 selected: a = 1, b = 2. c1 swaps 1 with the slot of 2
// (index 2); c2 swaps 1 with the slot of 1 (index 0).
TEST(UniformPmx, SecondStepThrough) {
  StubRng rng({}, {0.9, 0.1, 0.9, 0.9});
  const auto [c1, c2] =
      uniform_pmx_crossover(Route{{0, 1, 2, 3}}, Route{{1, 2, 3, 0}}, 0.5, rng);
  EXPECT_EQ(c1.order, (Order{0, 2, 1, 3}));
  EXPECT_EQ(c2.order, (Order{2, 1, 3, 0}));
}

TEST(UniformPmx, LengthMismatch) {
  Rng rng(1);
  EXPECT_THROW(uniform_pmx_crossover(Route{{0, 1}}, Route{{0, 1, 2}}, 0.5, rng),
               LengthMismatchError);
}

TEST(UniformPmx, ClosureOnRandomParents) {
  std::mt19937_64 gen(17);
  Rng rng(17);
  for (int i = 0; i < 10000; ++i) {
    const std::size_t n = 1 + gen() % 15;
    const Route p1{testing::random_order(gen, n)}, p2{testing::random_order(gen, n)};
    const auto [c1, c2] = uniform_pmx_crossover(p1, p2, 0.5, rng);
    ASSERT_TRUE(testing::is_valid_permutation(c1.order, n));
    ASSERT_TRUE(testing::is_valid_permutation(c2.order, n));
  }
}

TEST(SwapMutation, ZeroProbabilityIsIdentity) {
  Rng rng(4);
  const Route r{{3, 0, 2, 1}};
  EXPECT_EQ(uniform_swap_mutation(r, 0.0, rng), r);
}

TEST(SwapMutation, SingleElementDrawsNothing) {
  StubRng rng({}, {});
  EXPECT_EQ(uniform_swap_mutation(Route{{0}}, 1.0, rng), Route{{0}});
}

// Position 0 selected, partner draw 2 maps to index 3 (skipping i = 0).
TEST(SwapMutation, StepThrough) {
  StubRng rng({2}, {0.0, 0.9, 0.9, 0.9});
  EXPECT_EQ(uniform_swap_mutation(Route{{0, 1, 2, 3}}, 0.5, rng).order,
            (Order{3, 1, 2, 0}));
}

TEST(SwapMutation, ClosureOnRandomRoutes) {
  std::mt19937_64 gen(23);
  Rng rng(23);
  for (int i = 0; i < 10000; ++i) {
    const std::size_t n = 1 + gen() % 15;
    const Route r{testing::random_order(gen, n)};
    const auto m = uniform_swap_mutation(r, 0.3, rng);
    ASSERT_TRUE(testing::is_valid_permutation(m.order, n));
  }
}

TEST(TournamentSelect, FullTournamentReturnsGlobalBest) {
  const std::vector<Route> pop{Route{{0, 1}}, Route{{1, 0}}, Route{{0, 1}}, Route{{1, 0}}};
  const std::vector<double> fit{5.0, 3.0, 9.0, 1.0};
  StubRng forward({0, 1, 2, 3}, {});
  EXPECT_EQ(tournament_indices(fit, 4, 1, forward), std::vector<std::size_t>{3});
  StubRng backward({3, 2, 1, 0}, {});
  EXPECT_EQ(tournament_indices(fit, 4, 1, backward), std::vector<std::size_t>{3});
  StubRng copy({2, 3, 0, 1}, {});
  EXPECT_EQ(tournament_select(std::span<const Route>(pop), fit, 4, 1, copy)[0], pop[3]);
}

TEST(TournamentSelect, TiesGoToLowestIndex) {
  const std::vector<double> fit{1.0, 1.0};
  StubRng a({1, 0}, {});
  EXPECT_EQ(tournament_indices(fit, 2, 1, a), std::vector<std::size_t>{0});
  StubRng b({0, 1}, {});
  EXPECT_EQ(tournament_indices(fit, 2, 1, b), std::vector<std::size_t>{0});
}

// Size-1 tournaments sample uniformly: chi-square over 10^5 draws, 9 dof.
TEST(TournamentSelect, SizeOneIsUniform) {
  std::vector<double> fit(10);
  for (std::size_t i = 0; i < fit.size(); ++i) fit[i] = static_cast<double>(i);
  Rng rng(99);
  std::vector<int> counts(10, 0);
  for (auto idx : tournament_indices(fit, 1, 100000, rng)) ++counts[idx];
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - 10000.0) * (c - 10000.0) / 10000.0;
  EXPECT_LT(chi2, 27.877);  // p = 0.001
}

TEST(TournamentSelect, Errors) {
  Rng rng(1);
  const std::vector<Route> pop{Route{{0}}, Route{{0}}};
  const std::vector<double> fit{1.0};
  EXPECT_THROW(tournament_select(std::span<const Route>(pop), fit, 1, 1, rng),
               LengthMismatchError);
  const std::vector<double> fit2{1.0, 2.0};
  EXPECT_THROW(tournament_select(std::span<const Route>(pop), fit2, 3, 1, rng),
               ValidationError);
  EXPECT_THROW(tournament_select(std::span<const Route>(pop), fit2, 0, 1, rng),
               ValidationError);
}

}  // namespace
}  // namespace rulplan
