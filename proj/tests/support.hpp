#pragma once

// Test-only oracles and generators. Nothing here calls into the
// implementation paths it is used to check.

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "rulplan/evaluation.hpp"
#include "rulplan/problem.hpp"

namespace rulplan::testing {

/// Random source that replays scripted draws.
class StubRng {
 public:
  StubRng(std::vector<std::uint64_t> integers, std::vector<double> units)
      : integers_(integers.begin(), integers.end()),
        units_(units.begin(), units.end()) {}

  std::uint64_t below(std::uint64_t bound) {
    if (integers_.empty()) throw std::logic_error("StubRng: out of integers");
    const auto v = integers_.front();
    integers_.pop_front();
    if (v >= bound) throw std::logic_error("StubRng: scripted value out of range");
    return v;
  }

  double unit() {
    if (units_.empty()) throw std::logic_error("StubRng: out of units");
    const double v = units_.front();
    units_.pop_front();
    return v;
  }

  std::size_t integers_left() const { return integers_.size(); }
  std::size_t units_left() const { return units_.size(); }

 private:
  std::deque<std::uint64_t> integers_;
  std::deque<double> units_;
};

inline bool is_valid_permutation(const std::vector<std::size_t>& order,
                                 std::size_t n) {
  std::vector<std::size_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] != i) return false;
  }
  return sorted.size() == n;
}

inline double euclid(const Point2D& a, const Point2D& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

/// Arrival at visit k recomputed from scratch for every k: legs 0..k
/// summed anew, divided by speed, plus service of visits 0..k-1.
inline std::vector<double> reference_arrivals(const ProblemInstance& inst,
                                              const std::vector<std::size_t>& order) {
  std::vector<double> out;
  for (std::size_t k = 0; k < order.size(); ++k) {
    double legs = euclid(inst.center, inst.assets[order[0]].position);
    for (std::size_t j = 1; j <= k; ++j) {
      legs += euclid(inst.assets[order[j - 1]].position,
                     inst.assets[order[j]].position);
    }
    double service = 0.0;
    for (std::size_t j = 0; j < k; ++j) service += inst.assets[order[j]].service_time;
    out.push_back(legs / inst.travel_speed + service);
  }
  return out;
}

inline double reference_distance(const ProblemInstance& inst,
                                 const std::vector<std::size_t>& order) {
  if (order.empty()) return 0.0;
  double d = euclid(inst.center, inst.assets[order[0]].position);
  for (std::size_t j = 1; j < order.size(); ++j) {
    d += euclid(inst.assets[order[j - 1]].position, inst.assets[order[j]].position);
  }
  if (inst.return_to_center) d += euclid(inst.assets[order.back()].position, inst.center);
  return d;
}

inline bool reference_feasible(const ProblemInstance& inst,
                               const std::vector<std::size_t>& order) {
  const auto arrivals = reference_arrivals(inst, order);
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (arrivals[k] > inst.assets[order[k]].rul) return false;
  }
  return true;
}

/// Calls `visit` on every permutation of 0..n-1 (recursive generation,
/// independent of std::next_permutation).
inline void for_each_permutation(
    std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> cur;
  std::vector<bool> used(n, false);
  std::function<void()> rec = [&] {
    if (cur.size() == n) {
      visit(cur);
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      used[i] = true;
      cur.push_back(i);
      rec();
      cur.pop_back();
      used[i] = false;
    }
  };
  rec();
}

struct BruteForce {
  bool any_feasible = false;
  double best_distance = INFINITY;
  std::vector<std::size_t> best_order;
};

inline BruteForce brute_force(const ProblemInstance& inst) {
  BruteForce bf;
  for_each_permutation(inst.size(), [&](const std::vector<std::size_t>& order) {
    if (!reference_feasible(inst, order)) return;
    const double d = reference_distance(inst, order);
    bf.any_feasible = true;
    if (d < bf.best_distance - 1e-12) {
      bf.best_distance = d;
      bf.best_order = order;
    }
  });
  return bf;
}

/// Instance from a test-local generator (std::mt19937_64), so property
/// tests do not depend on generate_instance.
inline ProblemInstance random_instance(std::mt19937_64& gen, std::size_t n,
                                       double rul_lo = 20.0, double rul_hi = 300.0,
                                       bool with_service = true) {
  std::uniform_real_distribution<double> coord(-50.0, 50.0);
  std::uniform_real_distribution<double> rul(rul_lo, rul_hi);
  std::uniform_real_distribution<double> service(0.0, 5.0);
  std::uniform_real_distribution<double> speed(0.5, 3.0);
  ProblemInstance inst;
  inst.center = {coord(gen), coord(gen)};
  inst.travel_speed = speed(gen);
  inst.return_to_center = (gen() & 1) != 0;
  inst.hourly_wage = 40.0;
  for (std::size_t i = 0; i < n; ++i) {
    AssetRecord a;
    a.id = "T" + std::to_string(i);
    a.position = {coord(gen), coord(gen)};
    a.rul = rul(gen);
    a.service_time = with_service ? service(gen) : 0.0;
    a.component_cost = 100.0 * static_cast<double>(i % 3);
    inst.assets.push_back(a);
  }
  return inst;
}

inline std::vector<std::size_t> random_order(std::mt19937_64& gen, std::size_t n) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), gen);
  return order;
}

}  // namespace rulplan::testing
