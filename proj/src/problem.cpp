#include "rulplan/problem.hpp"

#include <cmath>
#include <set>
#include <string>

#include "json_fields.hpp"
#include "rulplan/rng.hpp"

namespace rulplan {

using nlohmann::json;

double distance(const Point2D& a, const Point2D& b) noexcept {
  return std::hypot(b.x - a.x, b.y - a.y);
}

namespace {

std::string join(const std::string& path, const char* field) {
  return path.empty() ? std::string(field) : path + "." + field;
}

void check_point(const Point2D& p, const std::string& path,
                 std::vector<Violation>& out) {
  if (!std::isfinite(p.x)) out.push_back({join(path, "x"), "must be finite"});
  if (!std::isfinite(p.y)) out.push_back({join(path, "y"), "must be finite"});
}

}  // namespace

// NaN fails every comparison, so "!(v > 0)" also rejects it.
std::vector<Violation> check_asset(const AssetRecord& a,
                                   const std::string& path) {
  std::vector<Violation> out;
  if (a.id.empty()) out.push_back({join(path, "id"), "must not be empty"});
  check_point(a.position, path, out);
  if (!(a.rul > 0.0) || !std::isfinite(a.rul)) {
    out.push_back({join(path, "rul"), "rul must be > 0"});
  }
  if (!(a.service_time >= 0.0) || !std::isfinite(a.service_time)) {
    out.push_back({join(path, "service_time"), "service_time must be >= 0"});
  }
  if (!(a.component_cost >= 0.0) || !std::isfinite(a.component_cost)) {
    out.push_back({join(path, "component_cost"),
                   "component_cost must be >= 0"});
  }
  return out;
}

std::vector<Violation> check_instance(const ProblemInstance& instance) {
  std::vector<Violation> out;
  check_point(instance.center, "center", out);
  if (!(instance.travel_speed > 0.0) || !std::isfinite(instance.travel_speed)) {
    out.push_back({"travel_speed", "travel_speed must be > 0"});
  }
  if (!(instance.hourly_wage >= 0.0) || !std::isfinite(instance.hourly_wage)) {
    out.push_back({"hourly_wage", "hourly_wage must be >= 0"});
  }
  if (instance.assets.empty()) {
    out.push_back({"assets", "must contain at least one asset"});
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < instance.assets.size(); ++i) {
    const auto& a = instance.assets[i];
    const std::string path = "assets[" + std::to_string(i) + "]";
    for (auto& v : check_asset(a, path)) out.push_back(std::move(v));
    if (!a.id.empty() && !seen.insert(a.id).second) {
      out.push_back({path + ".id", "duplicate id \"" + a.id + "\""});
    }
  }
  return out;
}

void require_valid(const ProblemInstance& instance) {
  auto violations = check_instance(instance);
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

ProblemInstance validate_instance(const json& candidate) {
  std::vector<Violation> out;
  ProblemInstance inst;
  bool assets_parsed = false;
  detail::FieldReader root(candidate, "", out,
                           {"center", "assets", "travel_speed",
                            "return_to_center", "hourly_wage"});
  if (root.is_object()) {
    if (const auto* c = root.find("center", true)) {
      detail::FieldReader center(*c, "center", out, {"x", "y"});
      inst.center.x = center.number("x", true).value_or(0.0);
      inst.center.y = center.number("y", true).value_or(0.0);
    }
    inst.travel_speed = root.number("travel_speed", false).value_or(1.0);
    inst.return_to_center =
        root.boolean("return_to_center", false).value_or(false);
    inst.hourly_wage = root.number("hourly_wage", false).value_or(0.0);

    if (const auto* assets = root.find("assets", true)) {
      if (!assets->is_array()) {
        out.push_back({"assets", "must be an array"});
      } else {
        assets_parsed = true;
        for (std::size_t i = 0; i < assets->size(); ++i) {
          const std::string path = "assets[" + std::to_string(i) + "]";
          detail::FieldReader r((*assets)[i], path, out,
                                {"id", "x", "y", "rul", "service_time",
                                 "component_cost"});
          AssetRecord a;
          a.id = r.string("id", true).value_or("");
          a.position.x = r.number("x", true).value_or(0.0);
          a.position.y = r.number("y", true).value_or(0.0);
          // Missing rul is already reported; keep it positive so the
          // invariant pass does not report it twice.
          a.rul = r.number("rul", true).value_or(1.0);
          a.service_time = r.number("service_time", false).value_or(0.0);
          a.component_cost = r.number("component_cost", false).value_or(0.0);
          inst.assets.push_back(std::move(a));
        }
      }
    }
  }

  // Invariants on whatever parsed. A missing or non-array asset list is
  // already reported, so its emptiness is not reported again.
  for (auto& v : check_instance(inst)) {
    if (v.path == "assets" && !assets_parsed) continue;
    out.push_back(std::move(v));
  }
  if (!out.empty()) throw ValidationError(std::move(out));
  return inst;
}

json to_json(const ProblemInstance& instance) {
  json assets = json::array();
  for (const auto& a : instance.assets) {
    assets.push_back({{"id", a.id},
                      {"x", a.position.x},
                      {"y", a.position.y},
                      {"rul", a.rul},
                      {"service_time", a.service_time},
                      {"component_cost", a.component_cost}});
  }
  return {{"center", {{"x", instance.center.x}, {"y", instance.center.y}}},
          {"travel_speed", instance.travel_speed},
          {"return_to_center", instance.return_to_center},
          {"hourly_wage", instance.hourly_wage},
          {"assets", std::move(assets)}};
}

ProblemInstance generate_instance(const InstanceSpec& spec) {
  std::vector<Violation> bad;
  if (spec.n < 1) bad.push_back({"n", "must be >= 1"});
  if (!(spec.rul_min > 0.0)) bad.push_back({"rul_min", "must be > 0"});
  if (!(spec.rul_max >= spec.rul_min)) {
    bad.push_back({"rul_max", "must be >= rul_min"});
  }
  if (!(spec.area.x_max >= spec.area.x_min)) {
    bad.push_back({"area.x", "x_max must be >= x_min"});
  }
  if (!(spec.area.y_max >= spec.area.y_min)) {
    bad.push_back({"area.y", "y_max must be >= y_min"});
  }
  if (!bad.empty()) throw ValidationError(std::move(bad));

  Rng rng(spec.seed);
  ProblemInstance inst;
  inst.center = {(spec.area.x_min + spec.area.x_max) / 2.0,
                 (spec.area.y_min + spec.area.y_max) / 2.0};
  inst.assets.reserve(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    AssetRecord a;
    a.id = "A" + std::to_string(i);
    a.position.x = rng.uniform(spec.area.x_min, spec.area.x_max);
    a.position.y = rng.uniform(spec.area.y_min, spec.area.y_max);
    a.rul = rng.uniform(spec.rul_min, spec.rul_max);
    inst.assets.push_back(std::move(a));
  }
  return inst;
}

}  // namespace rulplan
