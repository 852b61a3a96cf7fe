#pragma once

#include "plan.hpp"

namespace mapfls {

enum class PlanMetricKind { InfPath, OnePath, MaxMin, SumMin, UAgents, MaxAgents };

inline const char* metric_name(PlanMetricKind k) {
  switch (k) {
    case PlanMetricKind::InfPath: return "inf-path";
    case PlanMetricKind::OnePath: return "one-path";
    case PlanMetricKind::MaxMin: return "max-min";
    case PlanMetricKind::SumMin: return "sum-min";
    case PlanMetricKind::UAgents: return "u-agents";
    case PlanMetricKind::MaxAgents: return "max-agents";
  }
  return "?";
}

inline std::optional<PlanMetricKind> metric_from_name(const std::string& s) {
  for (PlanMetricKind k : {PlanMetricKind::InfPath, PlanMetricKind::OnePath, PlanMetricKind::MaxMin,
                           PlanMetricKind::SumMin, PlanMetricKind::UAgents, PlanMetricKind::MaxAgents})
    if (s == metric_name(k)) return k;
  return std::nullopt;
}

// sum over agents of the distance of c1[p] as seen from c2[p] (path c2[p] -> c1[p])
inline Dist config_distance(const DiGraph& g, const Config& c1, const Config& c2) {
  if (c1.size() != c2.size()) throw std::invalid_argument("config_distance: agent count mismatch");
  Dist total = 0;
  for (std::size_t p = 0; p < c1.size(); ++p)
    total = dist_add(total, vertex_distance(g, c1[p], c2[p]));
  return total;
}

inline std::vector<int> diff_agents(const Config& c1, const Config& c2) {
  if (c1.size() != c2.size()) throw std::invalid_argument("diff_agents: agent count mismatch");
  std::vector<int> diff;
  for (std::size_t p = 0; p < c1.size(); ++p)
    if (c1[p] != c2[p]) diff.push_back(static_cast<int>(p));
  return diff;
}

// number of agents occupying different vertices in the two configurations
inline int config_agent_distance(const Config& c1, const Config& c2) {
  return static_cast<int>(diff_agents(c1, c2).size());
}

namespace detail {
inline void check_comparable(const Plan& f, const Plan& ref) {
  if (f.agent_count() != ref.agent_count())
    throw std::invalid_argument("plan distance: agent count mismatch");
  if (f.start() != ref.start()) throw std::invalid_argument("plan distance: plans must share the start");
}
}  // namespace detail

// agents whose position differs at some step, compared step-by-step with the
// shorter plan held at its final configuration
inline std::vector<int> diff_agents_plans(const Plan& f, const Plan& ref) {
  detail::check_comparable(f, ref);
  int k = f.agent_count();
  int horizon = std::max(f.makespan(), ref.makespan());
  std::vector<char> differs(k, 0);
  for (int step = 1; step <= horizon; ++step) {
    const Config& a = psi(f, step);
    const Config& b = psi(ref, step);
    for (int p = 0; p < k; ++p)
      if (a[p] != b[p]) differs[p] = 1;
  }
  std::vector<int> out;
  for (int p = 0; p < k; ++p)
    if (differs[p]) out.push_back(p);
  return out;
}

// d(cfg, ref) = distance of cfg from the nearest configuration ref passes
// through, the start included
inline Dist min_config_distance(const DiGraph& g, const Config& cfg, const Plan& ref) {
  Dist best = kUnreachable;
  for (int h = 0; h <= ref.makespan(); ++h)
    best = dist_min(best, config_distance(g, cfg, psi(ref, h)));
  return best;
}

// per-step distances d(psi_f(k), psi_ref(k)) for k = 1..upto
inline std::vector<Dist> step_distance_profile(const DiGraph& g, const Plan& f, const Plan& ref, int upto) {
  std::vector<Dist> prof;
  prof.reserve(upto);
  for (int k = 1; k <= upto; ++k) prof.push_back(config_distance(g, psi(f, k), psi(ref, k)));
  return prof;
}

// per-step nearest-configuration distances for k = 1..upto
inline std::vector<Dist> min_distance_profile(const DiGraph& g, const Plan& f, const Plan& ref, int upto) {
  std::vector<Dist> prof;
  prof.reserve(upto);
  for (int k = 1; k <= upto; ++k) prof.push_back(min_config_distance(g, psi(f, k), ref));
  return prof;
}

inline Dist profile_max(const std::vector<Dist>& prof) {
  Dist best = 0;
  for (Dist d : prof) {
    if (d == kUnreachable) return kUnreachable;
    best = std::max(best, d);
  }
  return best;
}

inline Dist profile_sum(const std::vector<Dist>& prof) {
  Dist total = 0;
  for (Dist d : prof) total = dist_add(total, d);
  return total;
}

inline Dist plan_distance(const DiGraph& g, const Plan& f, const Plan& ref, PlanMetricKind kind) {
  detail::check_comparable(f, ref);
  int shorter = std::min(f.makespan(), ref.makespan());
  int longer = std::max(f.makespan(), ref.makespan());
  switch (kind) {
    case PlanMetricKind::InfPath:
      return profile_max(step_distance_profile(g, f, ref, shorter));
    case PlanMetricKind::OnePath:
      return profile_sum(step_distance_profile(g, f, ref, shorter));
    case PlanMetricKind::MaxMin:
      return profile_max(min_distance_profile(g, f, ref, longer));
    case PlanMetricKind::SumMin:
      return profile_sum(min_distance_profile(g, f, ref, shorter));
    case PlanMetricKind::UAgents:
      return static_cast<Dist>(diff_agents_plans(f, ref).size());
    case PlanMetricKind::MaxAgents: {
      Dist best = 0;
      for (int k = 1; k <= longer; ++k)
        best = std::max(best, static_cast<Dist>(config_agent_distance(psi(f, k), psi(ref, k))));
      return best;
    }
  }
  throw std::invalid_argument("plan_distance: unknown metric");
}

}  // namespace mapfls
