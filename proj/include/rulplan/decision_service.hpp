#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "rulplan/ga.hpp"
#include "rulplan/plan_report.hpp"
#include "rulplan/problem.hpp"
#include "rulplan/rng.hpp"
#include "rulplan/timestamp.hpp"

namespace rulplan {

/// One record pushed by the upstream prognostics stage.
struct RulUpdate {
  std::string asset_id;
  Point2D position;
  double rul = 0.0;
  double service_time = 0.0;
  double component_cost = 0.0;
  Timestamp timestamp{};

  bool operator==(const RulUpdate&) const = default;
};

/// JSON: {"asset_id", "x", "y", "rul", "service_time"?, "component_cost"?,
/// "timestamp"?}. A missing timestamp is filled with `received_at`.
RulUpdate rul_update_from_json(const nlohmann::json& doc,
                               Timestamp received_at);
nlohmann::json to_json(const RulUpdate& update);

struct ServiceSettings {
  Point2D center;
  double travel_speed = 1.0;
  double hourly_wage = 0.0;
  bool return_to_center = false;
  GaConfig ga;  // seed ignored; each plan picks its own
  std::optional<std::filesystem::path> update_log;
  std::optional<std::filesystem::path> plan_log;
};

struct PlanOptions {
  GaConfig ga;
  bool return_to_center = false;
  std::optional<std::uint64_t> seed;  // entropy when absent
};

/// JSON: {"ga": {GaConfig keys}, "return_to_center": bool, "seed": uint}.
/// Every key optional; unknown keys rejected. The top-level seed wins over
/// "ga.seed"; with neither, the plan draws one from entropy.
PlanOptions plan_options_from_json(const nlohmann::json& doc,
                                   const ServiceSettings& settings);

/// 64 bits from std::random_device.
std::uint64_t entropy_seed();

/// Asset registry plus plan store.
///
/// Ingestion is serialised by one mutex and appended to the update log
/// before it is acknowledged. request_plan copies the registry under the
/// lock and runs the GA outside it, so planning never blocks ingestion.
/// Constructing over an existing log replays it.
class DecisionService {
 public:
  explicit DecisionService(ServiceSettings settings);

  DecisionService(const DecisionService&) = delete;
  DecisionService& operator=(const DecisionService&) = delete;

  /// Upserts by asset id; the newer timestamp wins, equal timestamps take
  /// the later write. Every accepted update bumps the version.
  std::uint64_t ingest(const RulUpdate& update);

  /// Registry ordered by asset id.
  std::vector<AssetRecord> list_assets() const;
  std::uint64_t version() const;

  /// The instance a plan request would solve right now.
  ProblemInstance snapshot(bool return_to_center) const;

  PlanReport request_plan(const PlanOptions& options);
  PlanReport get_plan(const std::string& plan_id) const;

  const ServiceSettings& settings() const noexcept { return settings_; }

 private:
  struct Entry {
    AssetRecord record;
    Timestamp updated_at;
  };

  void apply(const RulUpdate& update);
  void replay_updates(const std::filesystem::path& path);
  void replay_plans(const std::filesystem::path& path);
  std::string next_plan_id();

  ServiceSettings settings_;

  mutable std::mutex registry_mutex_;
  std::map<std::string, Entry> registry_;
  std::uint64_t version_ = 0;
  std::ofstream update_log_;

  mutable std::mutex plans_mutex_;
  std::map<std::string, PlanReport> plans_;
  std::ofstream plan_log_;
  Rng id_rng_;
};

}  // namespace rulplan
