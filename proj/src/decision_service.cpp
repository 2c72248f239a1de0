#include "rulplan/decision_service.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "json_fields.hpp"

namespace rulplan {

using nlohmann::json;

std::uint64_t entropy_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

RulUpdate rul_update_from_json(const json& doc, Timestamp received_at) {
  std::vector<Violation> out;
  detail::FieldReader r(doc, "", out,
                        {"asset_id", "x", "y", "rul", "service_time",
                         "component_cost", "timestamp"});
  RulUpdate u;
  u.asset_id = r.string("asset_id", true).value_or("");
  u.position.x = r.number("x", true).value_or(0.0);
  u.position.y = r.number("y", true).value_or(0.0);
  const auto rul = r.number("rul", true);
  u.rul = rul.value_or(1.0);
  u.service_time = r.number("service_time", false).value_or(0.0);
  u.component_cost = r.number("component_cost", false).value_or(0.0);
  u.timestamp = received_at;
  if (auto ts = r.string("timestamp", false)) {
    if (auto parsed = parse_rfc3339(*ts)) {
      u.timestamp = *parsed;
    } else {
      r.report("timestamp", "must be an RFC 3339 timestamp");
    }
  }
  if (r.is_object()) {
    AssetRecord as_record{u.asset_id, u.position, u.rul, u.service_time,
                          u.component_cost};
    for (auto& v : check_asset(as_record, "")) {
      if (v.path == "id") v.path = "asset_id";
      // Missing or mistyped fields were reported already.
      const bool reported = std::any_of(
          out.begin(), out.end(),
          [&](const Violation& o) { return o.path == v.path; });
      if (!reported) out.push_back(std::move(v));
    }
  }
  if (!out.empty()) throw ValidationError(std::move(out));
  return u;
}

json to_json(const RulUpdate& u) {
  return {{"asset_id", u.asset_id},
          {"x", u.position.x},
          {"y", u.position.y},
          {"rul", u.rul},
          {"service_time", u.service_time},
          {"component_cost", u.component_cost},
          {"timestamp", format_rfc3339(u.timestamp)}};
}

PlanOptions plan_options_from_json(const json& doc,
                                   const ServiceSettings& settings) {
  std::vector<Violation> out;
  PlanOptions opts;
  opts.ga = settings.ga;
  opts.return_to_center = settings.return_to_center;
  detail::FieldReader r(doc, "", out, {"ga", "return_to_center", "seed"});
  if (const auto* ga = r.find("ga", false)) {
    try {
      opts.ga = apply_overrides(settings.ga, *ga);
      if (ga->is_object() && ga->contains("seed")) opts.seed = opts.ga.seed;
    } catch (const ValidationError& e) {
      out.insert(out.end(), e.violations().begin(), e.violations().end());
    }
  }
  if (auto v = r.boolean("return_to_center", false)) opts.return_to_center = *v;
  if (auto v = r.count("seed", false)) opts.seed = *v;
  if (!out.empty()) throw ValidationError(std::move(out));
  return opts;
}

DecisionService::DecisionService(ServiceSettings settings)
    : settings_(std::move(settings)), id_rng_(entropy_seed()) {
  Point2D c = settings_.center;
  ProblemInstance probe{c, {{"probe", c, 1.0, 0.0, 0.0}},
                        settings_.travel_speed, settings_.return_to_center,
                        settings_.hourly_wage};
  require_valid(probe);

  if (settings_.update_log) {
    replay_updates(*settings_.update_log);
    update_log_.open(*settings_.update_log, std::ios::app);
    if (!update_log_) {
      throw StorageError("cannot open update log " +
                         settings_.update_log->string());
    }
  }
  if (settings_.plan_log) {
    replay_plans(*settings_.plan_log);
    plan_log_.open(*settings_.plan_log, std::ios::app);
    if (!plan_log_) {
      throw StorageError("cannot open plan log " + settings_.plan_log->string());
    }
  }
}

void DecisionService::replay_updates(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return;  // first start
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      apply(rul_update_from_json(json::parse(line), Timestamp{}));
      ++version_;
    } catch (const std::exception& e) {
      throw StorageError(path.string() + ":" + std::to_string(line_no) + ": " +
                         e.what());
    }
  }
}

void DecisionService::replay_plans(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      PlanReport plan = plan_from_json(json::parse(line));
      plans_[plan.plan_id] = std::move(plan);
    } catch (const std::exception& e) {
      throw StorageError(path.string() + ":" + std::to_string(line_no) + ": " +
                         e.what());
    }
  }
}

void DecisionService::apply(const RulUpdate& u) {
  auto it = registry_.find(u.asset_id);
  if (it != registry_.end() && u.timestamp < it->second.updated_at) return;
  registry_[u.asset_id] = Entry{
      {u.asset_id, u.position, u.rul, u.service_time, u.component_cost},
      u.timestamp};
}

std::uint64_t DecisionService::ingest(const RulUpdate& update) {
  auto bad = check_asset({update.asset_id, update.position, update.rul,
                          update.service_time, update.component_cost},
                         "");
  for (auto& v : bad) {
    if (v.path == "id") v.path = "asset_id";
  }
  if (!bad.empty()) throw ValidationError(std::move(bad));

  std::lock_guard lock(registry_mutex_);
  if (update_log_.is_open()) {
    update_log_ << to_json(update).dump() << '\n';
    update_log_.flush();
    if (!update_log_) {
      update_log_.clear();
      throw StorageError("cannot append to update log");
    }
  }
  apply(update);
  return ++version_;
}

std::vector<AssetRecord> DecisionService::list_assets() const {
  std::lock_guard lock(registry_mutex_);
  std::vector<AssetRecord> out;
  out.reserve(registry_.size());
  for (const auto& [id, entry] : registry_) out.push_back(entry.record);
  return out;
}

std::uint64_t DecisionService::version() const {
  std::lock_guard lock(registry_mutex_);
  return version_;
}

ProblemInstance DecisionService::snapshot(bool return_to_center) const {
  ProblemInstance inst;
  inst.center = settings_.center;
  inst.travel_speed = settings_.travel_speed;
  inst.hourly_wage = settings_.hourly_wage;
  inst.return_to_center = return_to_center;
  inst.assets = list_assets();
  if (inst.assets.empty()) {
    throw EmptyRegistryError("no assets registered");
  }
  return inst;
}

PlanReport DecisionService::request_plan(const PlanOptions& options) {
  const ProblemInstance inst = snapshot(options.return_to_center);
  GaConfig config = options.ga;
  config.seed = options.seed ? *options.seed : entropy_seed();
  const GaRunResult result = run_ga(inst, config);

  std::lock_guard lock(plans_mutex_);
  PlanReport plan =
      build_plan_report(inst, result, next_plan_id(), now_utc());
  if (plan_log_.is_open()) {
    plan_log_ << to_json(plan).dump() << '\n';
    plan_log_.flush();
    if (!plan_log_) {
      plan_log_.clear();
      throw StorageError("cannot append to plan log");
    }
  }
  plans_[plan.plan_id] = plan;
  return plan;
}

PlanReport DecisionService::get_plan(const std::string& plan_id) const {
  std::lock_guard lock(plans_mutex_);
  auto it = plans_.find(plan_id);
  if (it == plans_.end()) throw NotFoundError("no plan \"" + plan_id + "\"");
  return it->second;
}

// Caller holds plans_mutex_.
std::string DecisionService::next_plan_id() {
  char buf[40];
  std::string id;
  do {
    const std::uint64_t hi = id_rng_.next();
    const std::uint64_t lo = id_rng_.next();
    std::snprintf(buf, sizeof buf, "%08llx-%04llx-%04llx-%04llx-%012llx",
                  static_cast<unsigned long long>(hi >> 32),
                  static_cast<unsigned long long>((hi >> 16) & 0xffff),
                  static_cast<unsigned long long>(hi & 0xffff),
                  static_cast<unsigned long long>(lo >> 48),
                  static_cast<unsigned long long>(lo & 0xffffffffffffULL));
    id = buf;
  } while (plans_.contains(id));
  return id;
}

}  // namespace rulplan
