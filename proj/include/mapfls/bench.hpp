#pragma once

#include <atomic>
#include <functional>
#include <iomanip>
#include <mutex>
#include <thread>

#include "search.hpp"

namespace mapfls {

enum class RunMode { SumMin, UAgents, Alternate };

inline const char* mode_name(RunMode m) {
  switch (m) {
    case RunMode::SumMin: return "sum-min";
    case RunMode::UAgents: return "u-agents";
    case RunMode::Alternate: return "alternate";
  }
  return "?";
}

inline std::optional<RunMode> mode_from_name(const std::string& s) {
  for (RunMode m : {RunMode::SumMin, RunMode::UAgents, RunMode::Alternate})
    if (s == mode_name(m)) return m;
  return std::nullopt;
}

enum class InitKind { Sequential, Prioritized };

inline const char* init_name(InitKind k) {
  return k == InitKind::Sequential ? "sequential" : "prioritized";
}

inline std::optional<InitKind> init_from_name(const std::string& s) {
  for (InitKind k : {InitKind::Sequential, InitKind::Prioritized})
    if (s == init_name(k)) return k;
  return std::nullopt;
}

struct ExperimentGrid {
  std::vector<int> node_counts{20, 30, 40};
  std::vector<int> agent_counts{2, 5, 8};
  int instances_per_cell = 10;
  int radius = 1;
  std::vector<RunMode> modes{RunMode::SumMin, RunMode::UAgents, RunMode::Alternate};
  // sequential starts leave the searches room to work; prioritized starts
  // measure them against an already strong baseline
  InitKind init = InitKind::Sequential;
  std::uint64_t base_seed = 1;
  int jobs = 1;
  int init_retries = 50;
  int max_attempts_factor = 10;  // attempts per cell before giving up on full cells
};

struct BenchRow {
  int nodes = 0;
  int agents = 0;
  std::uint64_t seed = 0;
  RunMode mode = RunMode::SumMin;
  bool discarded = false;  // the initializer found no plan; measurements are zero
  int initial_len = 0;
  int final_len = 0;
  double ratio = 0;
  int iterations = 0;
  std::uint64_t dp_states = 0;
  double seconds = 0;  // solver wall time, file handling excluded
};

inline void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "nodes,agents,seed,metric,initial_len,final_len,ratio,iterations,dp_states_created,"
         "wall_seconds,initializer_discarded\n";
  for (const BenchRow& r : rows) {
    out << r.nodes << ',' << r.agents << ',' << r.seed << ',' << mode_name(r.mode) << ','
        << r.initial_len << ',' << r.final_len << ',' << std::setprecision(6) << r.ratio << ','
        << r.iterations << ',' << r.dp_states << ',' << std::setprecision(6) << r.seconds << ','
        << (r.discarded ? 1 : 0) << '\n';
  }
}

// mean final/initial ratio over the cell's solved instances
inline std::optional<double> cell_mean_ratio(const std::vector<BenchRow>& rows, int nodes, int agents,
                                             RunMode mode) {
  double sum = 0;
  int count = 0;
  for (const BenchRow& r : rows)
    if (r.nodes == nodes && r.agents == agents && r.mode == mode && !r.discarded) {
      sum += r.ratio;
      ++count;
    }
  if (count == 0) return std::nullopt;
  return sum / count;
}

inline double cell_total_seconds(const std::vector<BenchRow>& rows, int nodes, int agents, RunMode mode) {
  double sum = 0;
  for (const BenchRow& r : rows)
    if (r.nodes == nodes && r.agents == agents && r.mode == mode && !r.discarded) sum += r.seconds;
  return sum;
}

// Runs the whole grid. Instance generation and the initial plans are
// deterministic functions of (base_seed, cell, attempt); when jobs > 1 only
// the improvement runs are parallelized, so the row order and every value
// stay identical to a serial run.
inline std::vector<BenchRow> run_bench(const ExperimentGrid& grid,
                                       const std::function<void(const std::string&)>& progress = {}) {
  struct Task {
    Instance inst;
    Plan initial;
    std::size_t group;  // slot in the ordered output
  };
  std::vector<Task> tasks;
  std::vector<std::vector<BenchRow>> groups;  // one group per attempted instance

  for (int nodes : grid.node_counts) {
    for (int agents : grid.agent_counts) {
      if (agents >= nodes - 1) continue;  // generator requires two free vertices
      Rng cell_rng(grid.base_seed ^ (0x9e3779b9ULL * nodes + 0x85ebca6bULL * agents));
      int solved = 0;
      int attempts_cap = grid.instances_per_cell * grid.max_attempts_factor;
      for (int attempt = 0; attempt < attempts_cap && solved < grid.instances_per_cell; ++attempt) {
        std::uint64_t seed = cell_rng.fork(attempt);
        Instance inst = generate_instance(nodes, agents, seed);
        InitialResult init;
        if (grid.init == InitKind::Prioritized) {
          PrioritizedOptions popts;
          popts.retries = grid.init_retries;
          init = prioritized_initial(inst, seed + 1, popts);
        } else {
          init = sequential_initial(inst, seed + 1, grid.init_retries);
        }
        groups.emplace_back();
        if (!init.plan) {
          for (RunMode mode : grid.modes) {
            BenchRow row;
            row.nodes = nodes;
            row.agents = agents;
            row.seed = seed;
            row.mode = mode;
            row.discarded = true;
            groups.back().push_back(row);
          }
          if (progress) progress("discard nodes=" + std::to_string(nodes) +
                                 " agents=" + std::to_string(agents) + " seed=" + std::to_string(seed));
          continue;
        }
        ++solved;
        Task t{std::move(inst), std::move(*init.plan), groups.size() - 1};
        // seed the group rows now so workers only fill in measurements
        for (RunMode mode : grid.modes) {
          BenchRow row;
          row.nodes = nodes;
          row.agents = agents;
          row.seed = seed;
          row.mode = mode;
          row.initial_len = t.initial.makespan();
          groups.back().push_back(row);
        }
        tasks.push_back(std::move(t));
      }
    }
  }

  std::atomic<std::size_t> cursor{0};
  std::mutex progress_mutex;
  auto worker = [&]() {
    while (true) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= tasks.size()) return;
      const Task& t = tasks[i];
      for (std::size_t mi = 0; mi < grid.modes.size(); ++mi) {
        RunMode mode = grid.modes[mi];
        BenchRow& row = groups[t.group][mi];
        SearchOptions sopts;
        std::pair<Plan, SearchReport> result =
            mode == RunMode::Alternate
                ? alternated_search(t.inst, t.initial, grid.radius, sopts)
                : neighborhood_search(t.inst, t.initial, grid.radius,
                                      mode == RunMode::SumMin ? PlanMetricKind::SumMin
                                                              : PlanMetricKind::UAgents,
                                      sopts);
        row.final_len = result.second.final_makespan;
        row.ratio = result.second.reduction_ratio;
        row.iterations = result.second.iterations;
        row.dp_states = result.second.dp_states_created;
        row.seconds = result.second.seconds;
      }
      if (progress) {
        const BenchRow& first = groups[t.group].front();
        std::lock_guard<std::mutex> lock(progress_mutex);
        progress("done nodes=" + std::to_string(first.nodes) + " agents=" + std::to_string(first.agents) +
                 " seed=" + std::to_string(first.seed));
      }
    }
  };

  int jobs = std::max(1, grid.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<BenchRow> rows;
  for (auto& group : groups)
    for (BenchRow& row : group) rows.push_back(row);
  return rows;
}

}  // namespace mapfls
