// Shared fixtures: the 10-node worked example (graph reconstructed from the
// plan moves, stored 0-based) and a few toy graphs.
#pragma once

#include <mapfls/mapfls.hpp>

namespace fixtures {

using mapfls::Config;
using mapfls::DiGraph;
using mapfls::Plan;
using mapfls::VertexId;

// Edge set reconstructed from every consecutive move in the example plans,
// plus (9, 10) so that the stated hop count from 6 to 10 is 3 (6-1-9-10).
// Vertices are shifted down by one when stored.
inline DiGraph example_graph() {
  const std::vector<std::pair<int, int>> edges1 = {
      {5, 7}, {7, 2}, {2, 3}, {3, 5},  {5, 2}, {3, 4},  {10, 8}, {8, 4}, {4, 7},
      {7, 5}, {5, 1}, {1, 9}, {1, 3},  {7, 4}, {10, 6}, {6, 1},  {5, 4}, {9, 10}};
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (auto [u, v] : edges1) edges.push_back({u - 1, v - 1});
  return mapfls::build_graph(10, std::move(edges));
}

// rows[agent][k] in 1-based vertex labels, exactly as the example tables
// print them; converted to a 0-based trace of configurations.
inline Plan plan_from_rows(const std::vector<std::vector<int>>& rows) {
  std::size_t steps = rows.at(0).size();
  std::vector<Config> trace(steps, Config(rows.size()));
  for (std::size_t p = 0; p < rows.size(); ++p) {
    if (rows[p].size() != steps) throw std::invalid_argument("fixture rows differ in length");
    for (std::size_t k = 0; k < steps; ++k) trace[k][p] = rows[p][k] - 1;
  }
  return Plan::from_trace(std::move(trace));
}

// initial plan, makespan 13
inline Plan plan_f0() {
  return plan_from_rows({
      {5, 7, 7, 7, 2, 3, 5, 2, 2, 2, 2, 3, 4, 4},
      {10, 10, 10, 10, 10, 10, 10, 8, 4, 7, 5, 1, 1, 9},
      {7, 2, 3, 5, 1, 1, 1, 1, 3, 3, 3, 5, 5, 5},
  });
}

// short plan reaching the same targets, makespan 5
inline Plan plan_g() {
  return plan_from_rows({
      {5, 7, 7, 7, 4, 4},
      {10, 10, 10, 6, 1, 9},
      {7, 2, 3, 5, 5, 5},
  });
}

// same makespan as f0, only agent 1 rerouted
inline Plan plan_h() {
  return plan_from_rows({
      {5, 7, 7, 7, 5, 5, 5, 5, 5, 4, 4, 4, 4, 4},
      {10, 10, 10, 10, 10, 10, 10, 8, 4, 7, 5, 1, 1, 9},
      {7, 2, 3, 5, 1, 1, 1, 1, 3, 3, 3, 5, 5, 5},
  });
}

// directed 4-cycle 0-1-2-3-0
inline DiGraph cycle4() { return mapfls::build_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }

// 0-1-2 both ways
inline DiGraph line3() { return mapfls::build_graph(3, {{0, 1}, {1, 0}, {1, 2}, {2, 1}}); }

// single agent on the 4-cycle, start 0, target 1, wasteful two-step plan
inline mapfls::Instance cycle4_instance() {
  return mapfls::make_instance(cycle4(), {0}, {1});
}

inline Plan cycle4_wasteful_plan() {
  return Plan::from_trace({{0}, {0}, {1}});
}

// random feasible plan as a walk of valid fleet actions from a start config;
// used by property suites (not a solver, the endpoint is wherever it lands)
inline Plan random_walk_plan(const DiGraph& g, const Config& start, int steps, mapfls::Rng& rng) {
  Plan f(start);
  Config cur = start;
  for (int s = 0; s < steps; ++s) {
    std::vector<Config> options;
    mapfls::detail::for_each_successor(g, cur, [&](const Config& next) { options.push_back(next); });
    if (options.empty()) break;
    cur = options[rng.int_below(static_cast<int>(options.size()))];
    f.push(cur);
  }
  return f;
}

inline Config random_config(const DiGraph& g, int agents, mapfls::Rng& rng) {
  std::vector<VertexId> pool(g.node_count());
  for (int v = 0; v < g.node_count(); ++v) pool[v] = v;
  rng.shuffle(pool);
  return Config(pool.begin(), pool.begin() + agents);
}

}  // namespace fixtures
