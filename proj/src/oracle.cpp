#include "rulplan/oracle.hpp"

#include <omp.h>

#include <bit>
#include <cstdint>
#include <limits>
#include <vector>

namespace rulplan {

const char* to_string(OracleStatus status) noexcept {
  switch (status) {
    case OracleStatus::optimal_feasible:
      return "optimal-feasible";
    case OracleStatus::no_feasible_route:
      return "no-feasible-route";
    case OracleStatus::instance_too_large:
      return "instance-too-large";
  }
  return "unknown";
}

namespace {

OracleResult found(const ProblemInstance& instance, Route route) {
  OracleResult r;
  r.best_evaluation = evaluate_route(instance, route);
  r.best_route = std::move(route);
  r.status = OracleStatus::optimal_feasible;
  return r;
}

OracleResult with_status(OracleStatus status) {
  OracleResult r;
  r.status = status;
  return r;
}

}  // namespace

OracleResult solve_exhaustive(const ProblemInstance& instance,
                              std::size_t max_n, Execution mode) {
  require_valid(instance);
  if (instance.size() > max_n) {
    return with_status(OracleStatus::instance_too_large);
  }
  auto best = mode == Execution::parallel
                  ? kernels::exhaustive_search_omp(instance)
                  : kernels::exhaustive_search_serial(instance);
  if (!best) return with_status(OracleStatus::no_feasible_route);
  return found(instance, Route{std::move(best->order)});
}

// Held-Karp over (visited set, last asset) with deadline pruning.
//
// Correctness of the pruning: for a fixed visited set S ending at `last`,
// the arrival time at `last` is path_length / speed + (service of S minus
// service of last). The service term depends only on S, so arrival is a
// strictly increasing affine function of path length. Any completion of
// the tour shifts every later arrival by the same amount, so among all
// partial paths with the same (S, last) the shortest one is feasible for
// every completion the others are feasible for. Keeping only the minimum
// distance state and discarding states that arrive after `last`'s RUL is
// therefore exact.
OracleResult solve_held_karp(const ProblemInstance& instance,
                             std::size_t max_n, Execution mode) {
  require_valid(instance);
  constexpr std::size_t kHardLimit = 25;
  const std::size_t n = instance.size();
  if (n > max_n || n > kHardLimit) {
    return with_status(OracleStatus::instance_too_large);
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr std::uint8_t kNoParent = 0xff;
  const std::size_t full = (std::size_t{1} << n) - 1;
  const std::size_t states = (full + 1) * n;

  std::vector<double> leg(n * n);
  std::vector<double> from_center(n);
  for (std::size_t i = 0; i < n; ++i) {
    from_center[i] = distance(instance.center, instance.assets[i].position);
    for (std::size_t j = 0; j < n; ++j) {
      leg[i * n + j] =
          distance(instance.assets[i].position, instance.assets[j].position);
    }
  }
  std::vector<double> service_of(full + 1, 0.0);
  for (std::size_t mask = 1; mask <= full; ++mask) {
    const auto low = static_cast<std::size_t>(std::countr_zero(mask));
    service_of[mask] =
        service_of[mask & (mask - 1)] + instance.assets[low].service_time;
  }

  std::vector<double> dist(states, kInf);
  std::vector<std::uint8_t> parent(states, kNoParent);

  // Pull update: each state reads only states of the set without `last`,
  // which are finished before it, and is written by exactly one iteration.
  auto relax = [&](std::size_t mask) {
    for (std::size_t last = 0; last < n; ++last) {
      const std::size_t bit = std::size_t{1} << last;
      if ((mask & bit) == 0) continue;
      const std::size_t prev_mask = mask ^ bit;
      double best = kInf;
      std::uint8_t best_prev = kNoParent;
      if (prev_mask == 0) {
        best = from_center[last];
      } else {
        for (std::size_t prev = 0; prev < n; ++prev) {
          if ((prev_mask >> prev & 1) == 0) continue;
          const double d = dist[prev_mask * n + prev];
          if (d == kInf) continue;
          const double cand = d + leg[prev * n + last];
          if (cand < best) {
            best = cand;
            best_prev = static_cast<std::uint8_t>(prev);
          }
        }
      }
      if (best == kInf) continue;
      const double arrival =
          best / instance.travel_speed + service_of[prev_mask];
      if (arrival > instance.assets[last].rul) continue;
      dist[mask * n + last] = best;
      parent[mask * n + last] = best_prev;
    }
  };

  if (mode == Execution::parallel) {
    std::vector<std::vector<std::size_t>> by_size(n + 1);
    for (std::size_t mask = 1; mask <= full; ++mask) {
      by_size[static_cast<std::size_t>(std::popcount(mask))].push_back(mask);
    }
    for (std::size_t k = 1; k <= n; ++k) {
      const auto& layer = by_size[k];
      const auto count = static_cast<std::ptrdiff_t>(layer.size());
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t i = 0; i < count; ++i) relax(layer[i]);
    }
  } else {
    // Every proper subset of a mask is numerically smaller.
    for (std::size_t mask = 1; mask <= full; ++mask) relax(mask);
  }

  double best_total = kInf;
  std::size_t best_last = n;
  for (std::size_t last = 0; last < n; ++last) {
    const double d = dist[full * n + last];
    if (d == kInf) continue;
    const double total =
        instance.return_to_center
            ? d + distance(instance.assets[last].position, instance.center)
            : d;
    if (total < best_total) {
      best_total = total;
      best_last = last;
    }
  }
  if (best_last == n) return with_status(OracleStatus::no_feasible_route);

  Route route;
  route.order.resize(n);
  std::size_t mask = full;
  std::size_t last = best_last;
  for (std::size_t k = n; k-- > 0;) {
    route.order[k] = last;
    const std::uint8_t p = parent[mask * n + last];
    mask ^= std::size_t{1} << last;
    last = p;
  }
  return found(instance, std::move(route));
}

nlohmann::json to_json(const OracleResult& result,
                       const ProblemInstance& instance) {
  nlohmann::json doc = {{"status", to_string(result.status)}};
  if (result.best_route) {
    nlohmann::json ids = nlohmann::json::array();
    for (const auto idx : result.best_route->order) {
      ids.push_back(instance.assets[idx].id);
    }
    doc["best_route"] = result.best_route->order;
    doc["best_route_ids"] = std::move(ids);
  }
  if (result.best_evaluation) {
    doc["best_evaluation"] = to_json(*result.best_evaluation);
  }
  return doc;
}

}  // namespace rulplan
