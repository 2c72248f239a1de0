#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "rulplan/errors.hpp"

namespace rulplan {

/// Planar position in kilometres.
struct Point2D {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point2D&) const = default;
};

/// Euclidean distance in kilometres.
double distance(const Point2D& a, const Point2D& b) noexcept;

/// One maintainable asset as reported by the prognostics stage.
struct AssetRecord {
  std::string id;
  Point2D position;
  double rul = 0.0;           // hours from tour start; hard arrival deadline
  double service_time = 0.0;  // hours spent on site
  double component_cost = 0.0;

  bool operator==(const AssetRecord&) const = default;
};

struct ProblemInstance {
  Point2D center;
  std::vector<AssetRecord> assets;
  double travel_speed = 1.0;  // km/h
  bool return_to_center = false;
  double hourly_wage = 0.0;

  std::size_t size() const noexcept { return assets.size(); }

  bool operator==(const ProblemInstance&) const = default;
};

/// Field-level violations of one asset, paths prefixed by `path`
/// (pass "" for bare field names).
std::vector<Violation> check_asset(const AssetRecord& asset,
                                   const std::string& path);

/// Every invariant violated by `instance`; empty when valid.
std::vector<Violation> check_instance(const ProblemInstance& instance);

/// Throws ValidationError listing every violation.
void require_valid(const ProblemInstance& instance);

/// Parses and validates the instance JSON document. Unknown fields and
/// wrong types are reported alongside invariant violations; optional
/// fields take their defaults.
ProblemInstance validate_instance(const nlohmann::json& candidate);

nlohmann::json to_json(const ProblemInstance& instance);

struct Area {
  double x_min = 0.0;
  double x_max = 100.0;
  double y_min = 0.0;
  double y_max = 100.0;
};

struct InstanceSpec {
  std::size_t n = 10;
  Area area;
  double rul_min = 50.0;
  double rul_max = 500.0;
  std::uint64_t seed = 0;
};

/// Seeded random instance: positions uniform in the area, RULs uniform
/// in [rul_min, rul_max], ids "A0".."A{n-1}", center at the area midpoint.
ProblemInstance generate_instance(const InstanceSpec& spec);

}  // namespace rulplan
