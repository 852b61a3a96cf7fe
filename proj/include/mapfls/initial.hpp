#pragma once

#include <unordered_map>

#include "plan.hpp"

namespace mapfls {

struct SolverBudget {
  std::uint64_t max_expanded_states = 1'000'000;
  int max_plan_length = 1 << 20;
};

struct ConfigHash {
  std::size_t operator()(const Config& c) const { return hash_ints(c); }
};

namespace detail {

// Enumerates every valid fleet action from cfg and hands the resulting
// configuration to sink. Candidates per agent: wait first, then neighbors in
// ascending order, so enumeration order is deterministic.
template <class Sink>
void for_each_successor(const DiGraph& g, const Config& cfg, Sink&& sink) {
  std::size_t k = cfg.size();
  Config next(k);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == k) {
      sink(next);
      return;
    }
    VertexId cur = cfg[i];
    auto try_vertex = [&](VertexId v) {
      for (std::size_t j = 0; j < i; ++j) {
        if (next[j] == v) return;                                 // vertex taken
        if (v != cur && next[j] == cur && cfg[j] == v) return;    // swap
      }
      next[i] = v;
      self(self, i + 1);
    };
    try_vertex(cur);
    for (VertexId v : g.out_neighbors(cur)) try_vertex(v);
  };
  rec(rec, 0);
}

}  // namespace detail

struct JointBfsResult {
  std::optional<Plan> plan;
  std::uint64_t expanded = 0;
  bool exhausted = false;  // budget hit before the search space was covered
};

// Exact minimum-makespan solver: breadth-first search over whole
// configurations. Exponential in the agent count; meant for small instances
// and as a reference for the other solvers.
inline JointBfsResult joint_bfs_optimal(const Instance& inst, const SolverBudget& budget = {}) {
  validate_instance(inst);
  JointBfsResult res;
  std::vector<Config> arena{inst.start};
  std::vector<int> parent{-1};
  std::vector<int> depth{0};
  std::unordered_map<Config, int, ConfigHash> index;
  index.emplace(inst.start, 0);
  auto reconstruct = [&](int i) {
    std::vector<Config> rows;
    for (; i >= 0; i = parent[i]) rows.push_back(arena[i]);
    std::reverse(rows.begin(), rows.end());
    return Plan::from_trace(std::move(rows));
  };
  if (inst.start == inst.target) {
    res.plan = reconstruct(0);
    return res;
  }
  for (std::size_t head = 0; head < arena.size(); ++head) {
    if (res.expanded >= budget.max_expanded_states) {
      res.exhausted = true;
      return res;
    }
    if (depth[head] >= budget.max_plan_length) {
      res.exhausted = true;
      return res;
    }
    ++res.expanded;
    Config cfg = arena[head];
    int found = -1;
    detail::for_each_successor(inst.graph, cfg, [&](const Config& next) {
      if (found >= 0 || index.count(next)) return;
      arena.push_back(next);
      parent.push_back(static_cast<int>(head));
      depth.push_back(depth[head] + 1);
      index.emplace(next, static_cast<int>(arena.size()) - 1);
      if (next == inst.target) found = static_cast<int>(arena.size()) - 1;
    });
    if (found >= 0) {
      res.plan = reconstruct(found);
      return res;
    }
  }
  return res;  // target unreachable; search space covered
}

struct PrioritizedOptions {
  int retries = 20;        // priority reshuffles after the first attempt
  int horizon_factor = 4;  // per-agent time horizon = factor * node_count
};

struct InitialResult {
  std::optional<Plan> plan;
  int attempts = 0;
};

// Plans agents one at a time along a random priority order; each agent runs a
// breadth-first search over (vertex, time) treating all earlier agents as
// moving obstacles that park at their targets forever. Incomplete by design:
// failed orders are reshuffled and retried.
inline InitialResult prioritized_initial(const Instance& inst, std::uint64_t seed,
                                         const PrioritizedOptions& opts = {}) {
  validate_instance(inst);
  const DiGraph& g = inst.graph;
  int n = g.node_count();
  int k = inst.agent_count();
  int horizon = opts.horizon_factor * n;
  Rng rng(seed);
  InitialResult res;

  std::vector<int> order(k);
  for (int i = 0; i < k; ++i) order[i] = i;

  for (int attempt = 0; attempt <= opts.retries; ++attempt) {
    ++res.attempts;
    if (attempt > 0) rng.shuffle(order);

    // traces[p][t] = vertex of agent p at time t, parked at target once done
    std::vector<std::vector<VertexId>> traces(k);
    std::vector<int> finish(k, 0);
    bool attempt_ok = true;

    for (int oi = 0; oi < k && attempt_ok; ++oi) {
      int agent = order[oi];
      VertexId src = inst.start[agent];
      VertexId dst = inst.target[agent];

      auto occupied = [&](VertexId v, int t) {
        for (int pj = 0; pj < oi; ++pj) {
          const auto& tr = traces[order[pj]];
          VertexId at = t < static_cast<int>(tr.size()) ? tr[t] : tr.back();
          if (at == v) return true;
        }
        return false;
      };
      auto swaps = [&](VertexId from, VertexId to, int t) {
        // move from->to between t-1 and t crossing an earlier agent
        for (int pj = 0; pj < oi; ++pj) {
          const auto& tr = traces[order[pj]];
          VertexId prev = (t - 1) < static_cast<int>(tr.size()) ? tr[t - 1] : tr.back();
          VertexId cur = t < static_cast<int>(tr.size()) ? tr[t] : tr.back();
          if (prev == to && cur == from && prev != cur) return true;
        }
        return false;
      };

      // earliest time from which dst stays clear of every earlier agent
      int free_from = 0;
      for (int pj = 0; pj < oi; ++pj) {
        const auto& tr = traces[order[pj]];
        for (int t = static_cast<int>(tr.size()) - 1; t >= 0; --t) {
          if (tr[t] == dst) {
            free_from = std::max(free_from, t + 1);
            break;
          }
        }
        if (tr.back() == dst) free_from = horizon + 1;  // parked on my target
      }
      if (free_from > horizon) {
        attempt_ok = false;
        break;
      }

      std::vector<int> parent(static_cast<std::size_t>(n) * (horizon + 1), -2);
      auto cell = [&](VertexId v, int t) { return static_cast<std::size_t>(t) * n + v; };
      std::deque<std::pair<VertexId, int>> queue;
      parent[cell(src, 0)] = -1;
      queue.emplace_back(src, 0);
      int arrive = -1;
      while (!queue.empty() && arrive < 0) {
        auto [v, t] = queue.front();
        queue.pop_front();
        if (v == dst && t >= free_from) {
          arrive = t;
          break;
        }
        if (t == horizon) continue;
        auto try_next = [&](VertexId w) {
          if (parent[cell(w, t + 1)] != -2) return;
          if (occupied(w, t + 1)) return;
          if (w != v && swaps(v, w, t + 1)) return;
          parent[cell(w, t + 1)] = v;
          queue.emplace_back(w, t + 1);
        };
        try_next(v);
        for (VertexId w : g.out_neighbors(v)) try_next(w);
      }
      if (arrive < 0) {
        attempt_ok = false;
        break;
      }
      auto& tr = traces[agent];
      tr.assign(arrive + 1, -1);
      VertexId v = dst;
      for (int t = arrive; t >= 0; --t) {
        tr[t] = v;
        if (t > 0) v = parent[cell(v, t)];
      }
      finish[agent] = arrive;
    }

    if (!attempt_ok) continue;

    int span = 0;
    for (int p = 0; p < k; ++p) span = std::max(span, finish[p]);
    std::vector<Config> rows(span + 1, Config(k));
    for (int t = 0; t <= span; ++t)
      for (int p = 0; p < k; ++p)
        rows[t][p] = t < static_cast<int>(traces[p].size()) ? traces[p][t] : inst.target[p];
    Plan plan = Plan::from_trace(std::move(rows));
    if (!is_solution(inst, plan)) continue;  // defensive; constraints above should guarantee it
    res.plan = std::move(plan);
    return res;
  }
  return res;
}

// Deliberately low-quality starting plans in the style of rule-based MAPF
// solvers: routes come from the prioritized planner, but every simultaneous
// step is serialized into single-agent moves (waits are dropped), so the
// makespan becomes the total number of moves, roughly the sum of the path
// lengths. That slack is what the improvement searches are designed to
// remove. A step whose movers form a rotation cannot be serialized; such
// attempts are retried with fresh priorities.
inline InitialResult sequential_initial(const Instance& inst, std::uint64_t seed, int retries = 20) {
  validate_instance(inst);
  int k = inst.agent_count();
  Rng rng(seed);
  InitialResult res;

  for (int attempt = 0; attempt <= retries; ++attempt) {
    ++res.attempts;
    InitialResult base = prioritized_initial(inst, rng.fork(attempt));
    if (!base.plan) continue;

    std::vector<Config> rows{base.plan->start()};
    bool ok = true;
    const auto& tr = base.plan->trace();
    for (std::size_t t = 1; t < tr.size() && ok; ++t) {
      const Config& goal = tr[t];
      Config cur = rows.back();
      std::vector<int> movers;
      for (int p = 0; p < k; ++p)
        if (cur[p] != goal[p]) movers.push_back(p);
      while (!movers.empty()) {
        bool progressed = false;
        for (auto it = movers.begin(); it != movers.end();) {
          int p = *it;
          bool dest_free = true;
          for (int q = 0; q < k; ++q) {
            if (q != p && cur[q] == goal[p]) {
              dest_free = false;
              break;
            }
          }
          if (dest_free) {
            cur[p] = goal[p];
            rows.push_back(cur);
            it = movers.erase(it);
            progressed = true;
          } else {
            ++it;
          }
        }
        if (!progressed) {  // every mover waits on another: a rotation
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    Plan plan = Plan::from_trace(std::move(rows));
    if (!is_solution(inst, plan)) continue;  // defensive; each micro-step is valid
    res.plan = std::move(plan);
    return res;
  }
  return res;
}

// Random strongly connected digraph with 4n edges (clamped to the complete
// digraph on small n) plus injective start and target configurations. Keeps
// at least two vertices free of agents.
inline Instance generate_instance(int node_count, int agent_count, std::uint64_t seed) {
  if (node_count < 3) throw std::invalid_argument("generate_instance: need at least 3 nodes");
  if (agent_count < 1) throw std::invalid_argument("generate_instance: need at least 1 agent");
  if (agent_count >= node_count - 1)
    throw std::invalid_argument("generate_instance: need agent_count <= node_count - 2");
  long long cap = static_cast<long long>(node_count) * (node_count - 1);
  int edges = static_cast<int>(std::min<long long>(4LL * node_count, cap));
  Rng rng(seed);
  DiGraph g;
  bool connected = false;
  for (int attempt = 0; attempt < 10000; ++attempt) {
    g = random_digraph(node_count, edges, rng.fork(attempt));
    if (is_strongly_connected(g)) {
      connected = true;
      break;
    }
  }
  if (!connected) throw std::runtime_error("generate_instance: no strongly connected sample found");
  auto sample_config = [&]() {
    std::vector<VertexId> pool(node_count);
    for (int v = 0; v < node_count; ++v) pool[v] = v;
    rng.shuffle(pool);
    return Config(pool.begin(), pool.begin() + agent_count);
  };
  return make_instance(std::move(g), sample_config(), sample_config(), seed);
}

}  // namespace mapfls
