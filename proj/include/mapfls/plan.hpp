#pragma once

#include <optional>

#include "digraph.hpp"

namespace mapfls {

// configuration: one vertex per agent, pairwise distinct
using Config = std::vector<VertexId>;

inline bool is_injective(const Config& c) {
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      if (c[i] == c[j]) return false;
  return true;
}

// A single agent either waits (from == to) or moves along an edge. Staying
// put is representable only as a wait, never as a degenerate move.
struct AgentAction {
  VertexId from = -1;
  VertexId to = -1;
  bool is_wait() const { return from == to; }
  bool operator==(const AgentAction& o) const { return from == o.from && to == o.to; }
};

inline AgentAction make_wait(VertexId at) { return {at, at}; }

inline AgentAction make_move(VertexId from, VertexId to) {
  if (from == to) throw std::invalid_argument("make_move: staying put must be a wait");
  return {from, to};
}

using FleetAction = std::vector<AgentAction>;

// Applies one fleet action. Returns the next configuration, or nullopt when
// the action is invalid: a move without the edge, a non-injective result, or
// two agents exchanging vertices in one step. Rotations along a directed
// cycle are valid; an agent may enter a vertex vacated in the same step.
inline std::optional<Config> apply_fleet(const DiGraph& g, const Config& cfg, const FleetAction& act) {
  if (act.size() != cfg.size()) throw std::invalid_argument("apply_fleet: agent count mismatch");
  std::size_t k = cfg.size();
  Config next(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (act[i].from != cfg[i]) throw std::invalid_argument("apply_fleet: action origin mismatch");
    if (!act[i].is_wait() && !g.has_edge(act[i].from, act[i].to)) return std::nullopt;
    next[i] = act[i].to;
  }
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      if (next[i] == next[j]) return std::nullopt;
      if (next[i] == cfg[j] && next[j] == cfg[i] && !act[i].is_wait()) return std::nullopt;  // swap
    }
  return next;
}

// Plan: the start configuration followed by the configuration after each
// fleet action. Fleet actions are recovered by diffing consecutive rows.
class Plan {
 public:
  Plan() = default;
  explicit Plan(Config start) : trace_{std::move(start)} {}

  static Plan from_trace(std::vector<Config> trace) {
    if (trace.empty()) throw std::invalid_argument("plan: trace must contain the start configuration");
    std::size_t k = trace[0].size();
    for (const auto& row : trace) {
      if (row.size() != k) throw std::invalid_argument("plan: agent count varies across steps");
      if (!is_injective(row)) throw std::invalid_argument("plan: non-injective configuration");
    }
    Plan p;
    p.trace_ = std::move(trace);
    return p;
  }

  int agent_count() const { return static_cast<int>(trace_[0].size()); }
  int makespan() const { return static_cast<int>(trace_.size()) - 1; }

  const Config& start() const { return trace_.front(); }
  const Config& final_config() const { return trace_.back(); }
  const std::vector<Config>& trace() const { return trace_; }

  // configuration after k steps; constant beyond the plan's end
  const Config& at(int k) const {
    if (k < 0) throw std::invalid_argument("plan: negative step");
    if (k >= makespan()) return trace_.back();
    return trace_[k];
  }

  FleetAction step(int k) const {
    if (k < 0 || k >= makespan()) throw std::invalid_argument("plan: step index out of range");
    const Config& a = trace_[k];
    const Config& b = trace_[k + 1];
    FleetAction act(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) act[i] = {a[i], b[i]};
    return act;
  }

  void push(Config next) {
    if (next.size() != trace_[0].size()) throw std::invalid_argument("plan: agent count mismatch");
    trace_.push_back(std::move(next));
  }

  Plan prefix(int len) const {
    if (len < 0 || len > makespan()) throw std::invalid_argument("plan: prefix length out of range");
    Plan p;
    p.trace_.assign(trace_.begin(), trace_.begin() + len + 1);
    return p;
  }

  bool operator==(const Plan& o) const { return trace_ == o.trace_; }

 private:
  std::vector<Config> trace_;
};

inline const Config& psi(const Plan& f, int k) { return f.at(k); }

inline int makespan(const Plan& f) { return f.makespan(); }

// actions of a single agent, in step order
inline std::vector<AgentAction> path_plan(const Plan& f, int agent) {
  std::vector<AgentAction> acts;
  acts.reserve(f.makespan());
  for (int k = 0; k < f.makespan(); ++k) acts.push_back({f.trace()[k][agent], f.trace()[k + 1][agent]});
  return acts;
}

// steps each agent needs before it is parked at its target for good
inline long long sum_of_costs(const Plan& f, const Config& target) {
  if (static_cast<int>(target.size()) != f.agent_count())
    throw std::invalid_argument("sum_of_costs: agent count mismatch");
  long long total = 0;
  for (int p = 0; p < f.agent_count(); ++p) {
    int parked_from = 0;
    for (int k = f.makespan(); k >= 0; --k) {
      if (f.trace()[k][p] != target[p]) {
        parked_from = k + 1;
        break;
      }
    }
    total += parked_from;
  }
  return total;
}

// step index of the first invalid row or transition: 0 for a bad start row,
// k for a bad configuration at step k or an invalid action into step k
inline std::optional<int> first_invalid_step(const DiGraph& g, const Plan& f) {
  for (int k = 0; k <= f.makespan(); ++k) {
    const Config& row = f.trace()[k];
    bool row_ok = is_injective(row);
    for (VertexId v : row)
      if (v < 0 || v >= g.node_count()) row_ok = false;
    if (!row_ok) return k;
    if (k > 0) {
      auto next = apply_fleet(g, f.trace()[k - 1], f.step(k - 1));
      if (!next || *next != row) return k;
    }
  }
  return std::nullopt;
}

inline bool is_feasible(const DiGraph& g, const Plan& f) {
  return !first_invalid_step(g, f).has_value();
}

inline Plan plan_from_steps(const DiGraph& g, Config start, const std::vector<FleetAction>& steps) {
  if (!is_injective(start)) throw std::invalid_argument("plan: non-injective start");
  Plan f(std::move(start));
  for (std::size_t k = 0; k < steps.size(); ++k) {
    auto next = apply_fleet(g, f.final_config(), steps[k]);
    if (!next)
      throw std::invalid_argument("plan: invalid fleet action at step " + std::to_string(k + 1));
    f.push(std::move(*next));
  }
  return f;
}

struct Instance {
  DiGraph graph;
  Config start;
  Config target;
  std::uint64_t seed = 0;

  int agent_count() const { return static_cast<int>(start.size()); }
};

inline void validate_instance(const Instance& inst) {
  if (inst.start.size() != inst.target.size())
    throw std::invalid_argument("instance: start/target agent counts differ");
  if (inst.start.empty()) throw std::invalid_argument("instance: no agents");
  for (const Config* c : {&inst.start, &inst.target}) {
    for (VertexId v : *c)
      if (v < 0 || v >= inst.graph.node_count())
        throw std::invalid_argument("instance: configuration vertex out of range");
    if (!is_injective(*c)) throw std::invalid_argument("instance: non-injective configuration");
  }
}

inline Instance make_instance(DiGraph graph, Config start, Config target, std::uint64_t seed = 0) {
  Instance inst{std::move(graph), std::move(start), std::move(target), seed};
  validate_instance(inst);
  return inst;
}

// a plan solves an instance when it is feasible, starts at start, ends at target
inline bool is_solution(const Instance& inst, const Plan& f) {
  return f.agent_count() == inst.agent_count() && f.start() == inst.start &&
         f.final_config() == inst.target && is_feasible(inst.graph, f);
}

}  // namespace mapfls
