#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "mapf/ca_star.hpp"
#include "mapf/dlc.hpp"
#include "mapf/gcp.hpp"
#include "mapf/instance.hpp"
#include "mapf/io.hpp"
#include "mapf/metrics.hpp"
#include "mapf/priority.hpp"
#include "mapf/validator.hpp"

namespace mapf {

enum class Solver { gcp_dlc, ca_star };

inline const char* to_string(Solver s) { return s == Solver::gcp_dlc ? "gcp-dlc" : "ca-star"; }

inline Solver parse_solver(const std::string& name) {
  if (name == "gcp-dlc") return Solver::gcp_dlc;
  if (name == "ca-star") return Solver::ca_star;
  throw std::invalid_argument("unknown solver \"" + name + "\"");
}

struct ExperimentConfig {
  std::string map_path;
  std::vector<int> agent_counts;
  std::vector<uint64_t> seeds;
  Policy policy = Policy::cl;
  std::vector<double> cp_values{1.0};
  ExecMode exec_mode = ExecMode::strict;
  Solver solver = Solver::gcp_dlc;
  double time_limit_seconds = 60.0;
  long tick_limit = -1;  // -1: derive from the paths
  std::string output_path;
  std::string output_format = "csv";
  bool record_runtime = true;  // false writes 0 so output is byte-reproducible
};

struct ResultRow {
  std::string map;
  int k = 0;
  uint64_t seed = 0;
  std::string policy;
  double cp = 0.0;
  std::string solver;
  bool success = false;
  std::string fail_reason;
  double runtime_seconds = 0.0;
  long soc = -1;
  long spatial = -1;
  long temporal = -1;
  long makespan = -1;
  long wait_events = -1;
  bool assumption1_holds = false;
  bool well_formed = false;
};

inline const char* kResultHeader =
    "map,k,seed,policy,cp,solver,success,fail_reason,runtime_seconds,soc,spatial,temporal,"
    "makespan,wait_events,assumption1_holds,well_formed";

namespace detail {

inline std::string format_double(double v, const char* fmt = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

}  // namespace detail

inline std::string result_row_csv(const ResultRow& r) {
  std::string out;
  out += r.map;
  out += ',' + std::to_string(r.k);
  out += ',' + std::to_string(r.seed);
  out += ',' + r.policy;
  out += ',' + detail::format_double(r.cp);
  out += ',' + r.solver;
  out += r.success ? ",true" : ",false";
  out += ',' + r.fail_reason;
  out += ',' + detail::format_double(r.runtime_seconds, "%.6f");
  out += ',' + std::to_string(r.soc);
  out += ',' + std::to_string(r.spatial);
  out += ',' + std::to_string(r.temporal);
  out += ',' + std::to_string(r.makespan);
  out += ',' + std::to_string(r.wait_events);
  out += r.assumption1_holds ? ",true" : ",false";
  out += r.well_formed ? ",true" : ",false";
  return out;
}

inline json result_row_json(const ResultRow& r) {
  return json{{"map", r.map},
              {"k", r.k},
              {"seed", r.seed},
              {"policy", r.policy},
              {"cp", r.cp},
              {"solver", r.solver},
              {"success", r.success},
              {"fail_reason", r.fail_reason},
              {"runtime_seconds", r.runtime_seconds},
              {"soc", r.soc},
              {"spatial", r.spatial},
              {"temporal", r.temporal},
              {"makespan", r.makespan},
              {"wait_events", r.wait_events},
              {"assumption1_holds", r.assumption1_holds},
              {"well_formed", r.well_formed}};
}

/// Full per-run output, for callers that want the artifacts too.
struct SolveOutput {
  ResultRow row;
  std::vector<GeometricPath> paths;
  std::vector<Trajectory> trajectories;
  ConflictReport conflicts;
  std::optional<DeadlockReport> deadlock;
};

/// One pipeline run on a prepared instance: order, plan, execute, validate.
/// The reported runtime covers ordering + planning + execution only.
inline SolveOutput run_single(const Instance& instance, Policy policy, uint64_t seed, double cp,
                              ExecMode mode, Solver solver, long tick_limit) {
  using clock = std::chrono::steady_clock;
  SolveOutput out;
  ResultRow& row = out.row;
  row.map = instance.map.name();
  row.k = instance.num_agents();
  row.seed = seed;
  row.policy = policy_name(policy);
  row.cp = cp;
  row.solver = to_string(solver);

  const auto t0 = clock::now();
  const Ordering ordering = order(instance, policy, seed);
  const auto t1 = clock::now();

  row.assumption1_holds = check_residual_reachability(instance, ordering).holds;
  row.well_formed = check_well_formed(instance).holds;

  const auto t2 = clock::now();
  if (solver == Solver::gcp_dlc) {
    PlanResult plan = plan_all(instance, ordering, PlannerConfig{cp});
    if (!plan.ok) {
      row.runtime_seconds = std::chrono::duration<double>(t1 - t0 + (clock::now() - t2)).count();
      row.fail_reason = row.assumption1_holds ? "planner_fail" : "assumption1_violation";
      return out;
    }
    const long limit = tick_limit > 0 ? tick_limit : default_tick_limit(plan.paths);
    QueueTable queues = build_queues(plan.paths, instance.map.num_cells());
    ExecOutcome exec = execute(plan.paths, std::move(queues), mode, limit);
    row.runtime_seconds = std::chrono::duration<double>(t1 - t0 + (clock::now() - t2)).count();
    out.paths = std::move(plan.paths);
    if (exec.status != ExecStatus::success) {
      row.fail_reason = exec.status == ExecStatus::deadlock ? "deadlock" : "tick_limit";
      out.deadlock = std::move(exec.deadlock);
      return out;
    }
    out.trajectories = std::move(exec.trajectories);
    const CostBreakdown costs = soc_breakdown(out.trajectories, out.paths);
    row.soc = costs.soc;
    row.spatial = costs.spatial;
    row.temporal = costs.temporal;
    row.makespan = exec.makespan;
    row.wait_events = exec.total_waits;
  } else {
    CaStarResult ca = plan_ca_star(instance, ordering, tick_limit);
    row.runtime_seconds = std::chrono::duration<double>(t1 - t0 + (clock::now() - t2)).count();
    if (!ca.ok) {
      row.fail_reason = "planner_fail";
      return out;
    }
    out.trajectories = std::move(ca.trajectories);
    const CostBreakdown costs = soc_breakdown(out.trajectories);
    row.soc = costs.soc;
    row.spatial = costs.spatial;
    row.temporal = costs.temporal;
    row.wait_events = costs.temporal;
    for (const Trajectory& traj : out.trajectories)
      row.makespan = std::max(row.makespan, traj.arrival());
  }

  out.conflicts = validate(instance.map, out.trajectories);
  if (!out.conflicts.clean()) {
    row.fail_reason = "conflicts";
    return out;
  }
  row.success = true;
  return out;
}

struct AggregateRow {
  int k = 0;
  double cp = 0.0;
  int runs = 0;
  int successes = 0;
  double success_rate_pct = 0.0;
  double mean_soc = 0.0;    // over rows that produced a cost
  double median_soc = 0.0;
  double mean_spatial = 0.0;
  double mean_temporal = 0.0;
  double mean_runtime_seconds = 0.0;
  double median_runtime_seconds = 0.0;
};

struct ExperimentOutput {
  std::vector<ResultRow> rows;
  std::vector<AggregateRow> aggregates;
};

inline std::vector<AggregateRow> aggregate_rows(const std::vector<ResultRow>& rows) {
  std::vector<AggregateRow> out;
  auto find_group = [&](int k, double cp) -> AggregateRow& {
    for (AggregateRow& g : out)
      if (g.k == k && g.cp == cp) return g;
    out.push_back(AggregateRow{});
    out.back().k = k;
    out.back().cp = cp;
    return out.back();
  };
  for (const ResultRow& r : rows) find_group(r.k, r.cp).runs++;
  for (AggregateRow& g : out) {
    std::vector<long> socs;
    std::vector<double> runtimes;
    double soc_sum = 0, spatial_sum = 0, temporal_sum = 0;
    for (const ResultRow& r : rows) {
      if (r.k != g.k || r.cp != g.cp) continue;
      g.successes += r.success;
      runtimes.push_back(r.runtime_seconds);
      if (r.soc >= 0) {
        socs.push_back(r.soc);
        soc_sum += static_cast<double>(r.soc);
        spatial_sum += static_cast<double>(r.spatial);
        temporal_sum += static_cast<double>(r.temporal);
      }
    }
    g.success_rate_pct = g.runs > 0 ? 100.0 * g.successes / g.runs : 0.0;
    if (!socs.empty()) {
      g.mean_soc = soc_sum / static_cast<double>(socs.size());
      g.mean_spatial = spatial_sum / static_cast<double>(socs.size());
      g.mean_temporal = temporal_sum / static_cast<double>(socs.size());
      std::sort(socs.begin(), socs.end());
      g.median_soc = socs.size() % 2 ? static_cast<double>(socs[socs.size() / 2])
                                     : (static_cast<double>(socs[socs.size() / 2 - 1]) +
                                        static_cast<double>(socs[socs.size() / 2])) /
                                           2.0;
    }
    if (!runtimes.empty()) {
      double sum = 0;
      for (double t : runtimes) sum += t;
      g.mean_runtime_seconds = sum / static_cast<double>(runtimes.size());
      std::sort(runtimes.begin(), runtimes.end());
      g.median_runtime_seconds = runtimes.size() % 2
                                     ? runtimes[runtimes.size() / 2]
                                     : (runtimes[runtimes.size() / 2 - 1] +
                                        runtimes[runtimes.size() / 2]) /
                                           2.0;
    }
  }
  return out;
}

inline json aggregate_row_json(const AggregateRow& g) {
  return json{{"k", g.k},
              {"cp", g.cp},
              {"runs", g.runs},
              {"successes", g.successes},
              {"success_rate_pct", g.success_rate_pct},
              {"mean_soc", g.mean_soc},
              {"median_soc", g.median_soc},
              {"mean_spatial", g.mean_spatial},
              {"mean_temporal", g.mean_temporal},
              {"mean_runtime_seconds", g.mean_runtime_seconds},
              {"median_runtime_seconds", g.median_runtime_seconds}};
}

inline int bench_worker_count() {
  const char* env = std::getenv("MAPF_BENCH_WORKERS");
  if (!env) return 1;
  const int n = std::atoi(env);
  return n > 0 ? n : 1;
}

/// Runs the full (k, seed, cp) sweep. Rows come out in canonical config
/// order no matter how many workers execute them.
inline ExperimentOutput run_experiment(const ExperimentConfig& config, const GridMap& map) {
  struct RunSpec {
    int k;
    uint64_t seed;
    double cp;
  };
  std::vector<RunSpec> specs;
  for (int k : config.agent_counts)
    for (uint64_t seed : config.seeds)
      for (double cp : config.cp_values) specs.push_back({k, seed, cp});

  ExperimentOutput output;
  output.rows.resize(specs.size());

  std::atomic<size_t> cursor{0};
  auto worker = [&]() {
    while (true) {
      const size_t i = cursor.fetch_add(1);
      if (i >= specs.size()) return;
      const RunSpec& spec = specs[i];
      ResultRow row;
      try {
        const Instance instance = generate_instance(map, spec.k, spec.seed);
        SolveOutput solved = run_single(instance, config.policy, spec.seed, spec.cp,
                                        config.exec_mode, config.solver, config.tick_limit);
        row = std::move(solved.row);
      } catch (const std::exception& e) {
        row.map = map.name();
        row.k = spec.k;
        row.seed = spec.seed;
        row.policy = policy_name(config.policy);
        row.cp = spec.cp;
        row.solver = to_string(config.solver);
        row.fail_reason = std::string("error: ") + e.what();
      }
      if (row.success && config.time_limit_seconds > 0 &&
          row.runtime_seconds > config.time_limit_seconds) {
        row.success = false;
        row.fail_reason = "time_limit";
      }
      if (!config.record_runtime) row.runtime_seconds = 0.0;
      output.rows[i] = std::move(row);
    }
  };

  const int workers = std::min<int>(bench_worker_count(), static_cast<int>(specs.size()));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  output.aggregates = aggregate_rows(output.rows);
  return output;
}

inline std::string emit_results_csv(const std::vector<ResultRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("emit_results: no rows");
  std::string out = kResultHeader;
  out += '\n';
  for (const ResultRow& r : rows) {
    out += result_row_csv(r);
    out += '\n';
  }
  return out;
}

inline std::string emit_results_json(const std::vector<ResultRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("emit_results: no rows");
  json arr = json::array();
  for (const ResultRow& r : rows) arr.push_back(result_row_json(r));
  return arr.dump(2) + "\n";
}

inline std::string emit_results(const std::vector<ResultRow>& rows, const std::string& format) {
  if (format == "csv") return emit_results_csv(rows);
  if (format == "json") return emit_results_json(rows);
  throw std::invalid_argument("unknown result format \"" + format + "\"");
}

// ---------------------------------------------------------------------------
// Config file parsing
// ---------------------------------------------------------------------------

inline ExperimentConfig parse_experiment_config(const json& doc) {
  ExperimentConfig config;
  config.map_path = doc.at("map").get<std::string>();
  config.agent_counts = doc.at("agent_counts").get<std::vector<int>>();
  for (const json& s : doc.at("seeds")) config.seeds.push_back(s.get<uint64_t>());
  if (doc.contains("policy")) config.policy = parse_policy(doc["policy"].get<std::string>());
  if (doc.contains("cp")) {
    config.cp_values.clear();
    if (doc["cp"].is_array())
      for (const json& v : doc["cp"]) config.cp_values.push_back(v.get<double>());
    else
      config.cp_values.push_back(doc["cp"].get<double>());
  }
  if (doc.contains("mode")) config.exec_mode = parse_exec_mode(doc["mode"].get<std::string>());
  if (doc.contains("solver")) config.solver = parse_solver(doc["solver"].get<std::string>());
  if (doc.contains("time_limit_seconds"))
    config.time_limit_seconds = doc["time_limit_seconds"].get<double>();
  if (doc.contains("tick_limit")) config.tick_limit = doc["tick_limit"].get<long>();
  if (doc.contains("output")) config.output_path = doc["output"].get<std::string>();
  if (doc.contains("format")) config.output_format = doc["format"].get<std::string>();
  if (doc.contains("record_runtime")) config.record_runtime = doc["record_runtime"].get<bool>();
  if (config.agent_counts.empty() || config.seeds.empty() || config.cp_values.empty())
    throw std::invalid_argument("experiment config: agent_counts, seeds and cp must be nonempty");
  return config;
}

}  // namespace mapf
