#pragma once

#include <chrono>

#include "dp.hpp"

namespace mapfls {

struct PhaseStat {
  PlanMetricKind kind = PlanMetricKind::SumMin;
  int dp_calls = 0;
  std::uint64_t states_created = 0;
  double seconds = 0;
};

struct SearchReport {
  int initial_makespan = 0;
  int final_makespan = 0;
  int iterations = 0;                    // dp_search calls in total
  std::vector<int> improving_makespans;  // strictly decreasing, one per improvement
  std::vector<PlanMetricKind> metrics;
  std::vector<PhaseStat> phases;
  std::uint64_t dp_states_created = 0;
  double seconds = 0;
  double reduction_ratio = 1.0;
  bool truncated = false;  // some dp call gave up on its state budget

  void finish(int initial, int final_len) {
    initial_makespan = initial;
    final_makespan = final_len;
    reduction_ratio = initial > 0 ? static_cast<double>(final_len) / initial : 1.0;
  }
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// repeats dp_search until it stops shortening the plan; the result is a fixed
// point: one extra call confirms no further improvement
inline Plan improve_until_fixed(const Instance& inst, Plan current, int radius, PlanMetricKind kind,
                                const DpOptions& dp_opts, SearchReport& report) {
  auto t0 = std::chrono::steady_clock::now();
  PhaseStat phase;
  phase.kind = kind;
  while (true) {
    DpResult res = dp_search(inst, current, radius, kind, dp_opts);
    ++report.iterations;
    ++phase.dp_calls;
    phase.states_created += res.stats.states_created;
    if (res.exhausted || !res.plan) {
      report.truncated = true;
      break;
    }
    if (res.plan->makespan() < current.makespan()) {
      current = std::move(*res.plan);
      report.improving_makespans.push_back(current.makespan());
    } else {
      break;
    }
  }
  phase.seconds = seconds_since(t0);
  report.dp_states_created += phase.states_created;
  report.phases.push_back(phase);
  return current;
}

}  // namespace detail

struct SearchOptions {
  DpOptions dp;
  bool agents_first = true;  // phase order of the alternated search
};

// Single-metric local search: keeps replacing the plan with the shortest one
// in its neighborhood until that no longer shortens it.
inline std::pair<Plan, SearchReport> neighborhood_search(const Instance& inst, const Plan& f0,
                                                         int radius, PlanMetricKind kind,
                                                         const SearchOptions& opts = {}) {
  auto t0 = std::chrono::steady_clock::now();
  SearchReport report;
  report.metrics = {kind};
  Plan best = detail::improve_until_fixed(inst, f0, radius, kind, opts.dp, report);
  report.seconds = detail::seconds_since(t0);
  report.finish(f0.makespan(), best.makespan());
  return {std::move(best), std::move(report)};
}

// Alternates a u-agents phase and a sum-min phase (order configurable) until
// a full round leaves the makespan unchanged. The result is a fixed point of
// both single-metric searches.
inline std::pair<Plan, SearchReport> alternated_search(const Instance& inst, const Plan& f0,
                                                       int radius, const SearchOptions& opts = {}) {
  auto t0 = std::chrono::steady_clock::now();
  SearchReport report;
  PlanMetricKind first = opts.agents_first ? PlanMetricKind::UAgents : PlanMetricKind::SumMin;
  PlanMetricKind second = opts.agents_first ? PlanMetricKind::SumMin : PlanMetricKind::UAgents;
  report.metrics = {first, second};
  Plan best = f0;
  int before;
  do {
    before = best.makespan();
    best = detail::improve_until_fixed(inst, std::move(best), radius, first, opts.dp, report);
    best = detail::improve_until_fixed(inst, std::move(best), radius, second, opts.dp, report);
  } while (best.makespan() < before && !report.truncated);
  report.seconds = detail::seconds_since(t0);
  report.finish(f0.makespan(), best.makespan());
  return {std::move(best), std::move(report)};
}

}  // namespace mapfls
