// rulplan: generate instances, plan maintenance tours, compare against the
// exact oracles, and host the decision service.
//
// Exit codes: 0 success / feasible, 1 failed audit, 2 usage or validation
// error, 3 best plan infeasible (or no feasible route), 4 size limit.

#include <atomic>
#include <chrono>
#include <cmath>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "rulplan/decision_service.hpp"
#include "rulplan/ga.hpp"
#include "rulplan/http_api.hpp"
#include "rulplan/oracle.hpp"
#include "rulplan/plan_report.hpp"
#include "rulplan/problem.hpp"

namespace {

using namespace rulplan;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitAudit = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitTooLarge = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write " + path);
  out << content;
  if (!out) throw UsageError("write failed for " + path);
}

json parse_json_file(const std::string& path) {
  json doc = json::parse(read_file(path), nullptr, false);
  if (doc.is_discarded()) throw UsageError(path + " is not valid JSON");
  return doc;
}

ProblemInstance load_instance(const std::string& path) {
  return validate_instance(parse_json_file(path));
}

// FNV-1a; identifies CLI plans by content so reruns produce the same file.
std::string content_id(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct GaFlags {
  GaConfig config;
  std::optional<std::uint64_t> seed;
  bool serial = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--pop", config.population_size, "Population size")
        ->capture_default_str();
    cmd->add_option("--gens", config.generations, "Generations")
        ->capture_default_str();
    cmd->add_option("--cx-prob", config.crossover_prob,
                    "Probability a pair is crossed")
        ->capture_default_str();
    cmd->add_option("--cx-swap-prob", config.crossover_swap_prob,
                    "Per-position exchange probability in uniform PMX")
        ->capture_default_str();
    cmd->add_option("--mut-prob", config.mutation_prob,
                    "Probability an offspring is mutated")
        ->capture_default_str();
    cmd->add_option("--mut-swap-prob", config.mutation_swap_prob,
                    "Per-position swap probability in mutation")
        ->capture_default_str();
    cmd->add_option("--tournament", config.tournament_size, "Tournament size")
        ->capture_default_str();
    cmd->add_option("--elitism", config.elitism_count,
                    "Individuals carried over unchanged")
        ->capture_default_str();
    cmd->add_option("--penalty", config.penalty_coefficient,
                    "Fitness penalty per hour of lateness")
        ->capture_default_str();
    cmd->add_option("--seed", seed, "RNG seed (drawn from entropy if omitted)");
    cmd->add_flag("--serial", serial, "Score populations without OpenMP");
  }

  GaConfig resolve() {
    if (!seed) {
      seed = entropy_seed();
      std::cerr << "seed: " << *seed << "\n";
    }
    config.seed = *seed;
    if (auto bad = check_config(config); !bad.empty()) {
      throw ValidationError(std::move(bad));
    }
    return config;
  }

  Execution mode() const { return serial ? Execution::serial : Execution::parallel; }
};

struct InstanceFlags {
  InstanceSpec spec;
  double speed = 1.0;
  double wage = 0.0;
  bool return_to_center = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--x-min", spec.area.x_min)->capture_default_str();
    cmd->add_option("--x-max", spec.area.x_max)->capture_default_str();
    cmd->add_option("--y-min", spec.area.y_min)->capture_default_str();
    cmd->add_option("--y-max", spec.area.y_max)->capture_default_str();
    cmd->add_option("--rul-min", spec.rul_min, "Lower RUL bound, hours")
        ->capture_default_str();
    cmd->add_option("--rul-max", spec.rul_max, "Upper RUL bound, hours")
        ->capture_default_str();
    cmd->add_option("--speed", speed, "Travel speed, km/h")->capture_default_str();
    cmd->add_option("--wage", wage, "Hourly wage")->capture_default_str();
    cmd->add_flag("--return-to-center", return_to_center,
                  "Close the tour at the maintenance center");
  }

  ProblemInstance make(std::size_t n, std::uint64_t seed) const {
    InstanceSpec s = spec;
    s.n = n;
    s.seed = seed;
    ProblemInstance inst = generate_instance(s);
    inst.travel_speed = speed;
    inst.hourly_wage = wage;
    inst.return_to_center = return_to_center;
    require_valid(inst);
    return inst;
  }
};

// ---------------------------------------------------------------- gen

struct GenCommand {
  InstanceFlags instance;
  std::size_t n = 0;
  std::optional<std::uint64_t> seed;
  std::string out;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("gen", "Write a seeded random instance");
    cmd->add_option("--n", n, "Number of assets")->required();
    cmd->add_option("--seed", seed, "Generator seed");
    instance.attach(cmd);
    cmd->add_option("-o,--out", out, "Output file")->required();
    cmd->callback([this] { run(); });
  }

  int status = kExitOk;

  void run() {
    if (n == 0) throw UsageError("--n must be >= 1");
    if (!seed) {
      seed = entropy_seed();
      std::cerr << "seed: " << *seed << "\n";
    }
    write_file(out, to_json(instance.make(n, *seed)).dump(2) + "\n");
    std::cout << out << "\n";
  }
};

// ---------------------------------------------------------------- solve

struct SolveCommand {
  std::string instance_path;
  GaFlags ga;
  std::string history_path;
  std::string plan_path;
  std::string created_at = "1970-01-01T00:00:00Z";
  int status = kExitOk;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("solve", "Plan a tour with the GA");
    cmd->add_option("instance", instance_path, "Instance JSON")
        ->required()
        ->check(CLI::ExistingFile);
    ga.attach(cmd);
    cmd->add_option("--history", history_path, "Convergence CSV output");
    cmd->add_option("--plan", plan_path, "Plan JSON output");
    cmd->add_option("--created-at", created_at,
                    "RFC 3339 time stamped into the plan")
        ->capture_default_str();
    cmd->callback([this] { run(); });
  }

  void run() {
    const ProblemInstance inst = load_instance(instance_path);
    const GaConfig config = ga.resolve();
    const auto stamp = parse_rfc3339(created_at);
    if (!stamp) throw UsageError("--created-at is not an RFC 3339 time");

    const GaRunResult result = run_ga(inst, config, ga.mode());
    const std::string id =
        "plan-" + content_id(to_json(inst).dump() + to_json(config).dump());
    const PlanReport plan = build_plan_report(inst, result, id, *stamp);

    if (!history_path.empty()) write_file(history_path, history_csv(result.history));
    if (!plan_path.empty()) write_file(plan_path, to_json(plan).dump(2) + "\n");

    std::printf("distance %.6f  fitness %.6f  %s\n", plan.total_distance,
                result.best_evaluation.fitness,
                plan.feasible ? "feasible" : "INFEASIBLE");
    std::printf("route:");
    for (const auto& v : plan.visits) std::printf(" %s", v.asset_id.c_str());
    std::printf("\ntotal cost %.2f (labor %.2f, parts %.2f)\n",
                plan.costs.total_cost, plan.costs.labor_cost,
                plan.costs.parts_cost);
    status = plan.feasible ? kExitOk : kExitInfeasible;
  }
};

// ---------------------------------------------------------------- oracle

struct OracleCommand {
  std::string instance_path;
  std::string method = "held-karp";
  std::optional<std::size_t> max_n;
  std::string out;
  int status = kExitOk;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("oracle", "Solve exactly (small instances)");
    cmd->add_option("instance", instance_path, "Instance JSON")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--method", method)
        ->check(CLI::IsMember({"exhaustive", "held-karp"}))
        ->capture_default_str();
    cmd->add_option("--max-n", max_n, "Size limit (default 10 / 18)");
    cmd->add_option("-o,--out", out, "Write the result JSON here");
    cmd->callback([this] { run(); });
  }

  void run() {
    const ProblemInstance inst = load_instance(instance_path);
    const OracleResult r =
        method == "exhaustive"
            ? solve_exhaustive(inst, max_n.value_or(kExhaustiveMaxN))
            : solve_held_karp(inst, max_n.value_or(kHeldKarpMaxN));
    json doc = to_json(r, inst);
    doc["method"] = method;
    if (r.best_evaluation) {
      const PlanCosts c = annotate_plan_cost(*r.best_evaluation, inst);
      doc["costs"] = {{"travel_time", c.travel_time},
                      {"labor_cost", c.labor_cost},
                      {"parts_cost", c.parts_cost},
                      {"total_cost", c.total_cost}};
    }
    const std::string text = doc.dump(2) + "\n";
    if (out.empty()) {
      std::cout << text;
    } else {
      write_file(out, text);
    }
    switch (r.status) {
      case OracleStatus::optimal_feasible:
        std::cerr << "optimal distance " << r.best_evaluation->total_distance
                  << "\n";
        status = kExitOk;
        break;
      case OracleStatus::no_feasible_route:
        std::cerr << "no feasible route\n";
        status = kExitInfeasible;
        break;
      case OracleStatus::instance_too_large:
        std::cerr << "instance-too-large: " << inst.size()
                  << " assets exceeds the " << method << " limit\n";
        status = kExitTooLarge;
        break;
    }
  }
};

// ---------------------------------------------------------------- compare

struct CompareCommand {
  InstanceFlags instance;
  GaFlags ga;
  std::size_t count = 20;
  std::size_t n = 8;
  std::uint64_t base_seed = 1;
  std::string method = "held-karp";
  std::string csv_path;
  int status = kExitOk;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "compare", "Run GA and exact oracle on seeded instances");
    cmd->add_option("--count", count)->capture_default_str();
    cmd->add_option("--n", n)->capture_default_str();
    cmd->add_option("--base-seed", base_seed,
                    "Instance i uses seed base+i for generation and GA")
        ->capture_default_str();
    cmd->add_option("--method", method)
        ->check(CLI::IsMember({"exhaustive", "held-karp"}))
        ->capture_default_str();
    cmd->add_option("--csv", csv_path, "Per-instance report CSV");
    instance.spec.rul_min = 1000.0;
    instance.spec.rul_max = 2000.0;
    instance.attach(cmd);
    ga.attach(cmd);
    cmd->callback([this] { run(); });
  }

  void run() {
    using Clock = std::chrono::steady_clock;
    if (n == 0 || count == 0) throw UsageError("--n and --count must be >= 1");
    const std::size_t limit =
        method == "exhaustive" ? kExhaustiveMaxN : kHeldKarpMaxN;
    if (n > limit) {
      std::cerr << "instance-too-large: n = " << n << " exceeds the " << method
                << " limit of " << limit << "\n";
      status = kExitTooLarge;
      return;
    }

    std::string csv =
        "instance,n,oracle_status,oracle_distance,ga_distance,relative_gap,"
        "ga_feasible,oracle_ms,ga_ms\n";
    std::size_t compared = 0;
    std::size_t hits = 0;
    double gap_sum = 0.0;
    double gap_max = 0.0;
    char row[512];
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint64_t seed = base_seed + i;
      const ProblemInstance inst = instance.make(n, seed);

      const auto t0 = Clock::now();
      const OracleResult oracle = method == "exhaustive"
                                      ? solve_exhaustive(inst)
                                      : solve_held_karp(inst);
      const auto t1 = Clock::now();
      GaConfig config = ga.config;
      config.seed = ga.seed.value_or(seed);
      const GaRunResult res = run_ga(inst, config, ga.mode());
      const auto t2 = Clock::now();

      const double oracle_ms =
          std::chrono::duration<double, std::milli>(t1 - t0).count();
      const double ga_ms =
          std::chrono::duration<double, std::milli>(t2 - t1).count();
      const double ga_dist = res.best_evaluation.total_distance;
      const bool ga_feasible = res.best_evaluation.feasible;

      double oracle_dist = std::nan("");
      double gap = std::nan("");
      if (oracle.status == OracleStatus::optimal_feasible) {
        oracle_dist = oracle.best_evaluation->total_distance;
        if (ga_feasible) {
          gap = oracle_dist > 0.0 ? (ga_dist - oracle_dist) / oracle_dist : 0.0;
          ++compared;
          gap_sum += gap;
          gap_max = std::max(gap_max, gap);
          if (gap <= 1e-9) ++hits;
        } else {
          ++compared;  // a miss: oracle found a feasible tour, GA did not
        }
      }
      std::snprintf(row, sizeof row, "%zu,%zu,%s,%.17g,%.17g,%.17g,%s,%.3f,%.3f\n",
                    static_cast<std::size_t>(seed), n, to_string(oracle.status),
                    oracle_dist, ga_dist, gap, ga_feasible ? "true" : "false",
                    oracle_ms, ga_ms);
      csv += row;
    }
    if (!csv_path.empty()) write_file(csv_path, csv);
    std::cout << csv;
    if (compared == 0) {
      std::printf("no instance had a feasible optimum\n");
      status = kExitInfeasible;
      return;
    }
    std::printf("compared %zu  optimal-hit rate %.3f  mean gap %.6f  max gap %.6f\n",
                compared, static_cast<double>(hits) / static_cast<double>(compared),
                gap_sum / static_cast<double>(compared), gap_max);
  }
};

// ---------------------------------------------------------------- serve

std::atomic<HttpServer*> g_server{nullptr};

extern "C" void on_signal(int) {
  if (auto* s = g_server.load()) s->stop();
}

struct ServeCommand {
  std::string host = "0.0.0.0";
  int port = 8080;
  std::string log_path;
  std::string plan_log_path;
  double center_x = 0.0;
  double center_y = 0.0;
  double speed = 1.0;
  double wage = 0.0;
  int status = kExitOk;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand("serve", "Host the decision service");
    cmd->add_option("--host", host)->capture_default_str();
    cmd->add_option("--port", port, "Listen port")
        ->envname("RULPLAN_PORT")
        ->capture_default_str();
    cmd->add_option("--log", log_path, "Append-only RUL update log (JSON lines)");
    cmd->add_option("--plan-log", plan_log_path, "Append-only plan log");
    cmd->add_option("--center-x", center_x)->capture_default_str();
    cmd->add_option("--center-y", center_y)->capture_default_str();
    cmd->add_option("--speed", speed)->capture_default_str();
    cmd->add_option("--wage", wage)->capture_default_str();
    cmd->callback([this] { run(); });
  }

  void run() {
    ServiceSettings settings;
    settings.center = {center_x, center_y};
    settings.travel_speed = speed;
    settings.hourly_wage = wage;
    if (!log_path.empty()) settings.update_log = log_path;
    if (!plan_log_path.empty()) settings.plan_log = plan_log_path;

    DecisionService service(settings);
    HttpServer server(service);
    const int bound = server.bind(host, port);
    if (bound < 0) throw UsageError("cannot bind " + host + ":" + std::to_string(port));
    g_server = &server;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cerr << "listening on " << host << ":" << bound << " ("
              << service.list_assets().size() << " assets, version "
              << service.version() << ")\n";
    server.serve();
    g_server = nullptr;
  }
};

// ---------------------------------------------------------------- verify

struct VerifyCommand {
  std::string instance_path;
  std::string plan_path;
  int status = kExitOk;

  void attach(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "verify", "Recompute a plan's arrivals and check its flags");
    cmd->add_option("instance", instance_path)->required()->check(CLI::ExistingFile);
    cmd->add_option("plan", plan_path)->required()->check(CLI::ExistingFile);
    cmd->callback([this] { run(); });
  }

  void run() {
    const ProblemInstance inst = load_instance(instance_path);
    const PlanReport plan = plan_from_json(parse_json_file(plan_path));
    const auto issues = audit_plan(plan, inst);
    for (const auto& issue : issues) std::cout << issue << "\n";
    if (issues.empty()) {
      std::cout << "ok: " << plan.visits.size() << " visits, "
                << (plan.feasible ? "feasible" : "infeasible") << "\n";
    }
    status = issues.empty() ? kExitOk : kExitAudit;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deadline-aware maintenance tour planning"};
  app.require_subcommand(1);

  GenCommand gen;
  SolveCommand solve;
  OracleCommand oracle;
  CompareCommand compare;
  ServeCommand serve;
  VerifyCommand verify;
  gen.attach(app);
  solve.attach(app);
  oracle.attach(app);
  compare.attach(app);
  serve.attach(app);
  verify.attach(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input:\n";
    for (const auto& v : e.violations()) {
      std::cerr << "  " << (v.path.empty() ? "<root>" : v.path) << ": "
                << v.reason << "\n";
    }
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  for (const int s : {gen.status, solve.status, oracle.status, compare.status,
                      serve.status, verify.status}) {
    if (s != kExitOk) return s;
  }
  return kExitOk;
}
