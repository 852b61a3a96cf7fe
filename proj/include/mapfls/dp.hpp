#pragma once

#include <cmath>
#include <cstdio>
#include <unordered_map>
#include <unordered_set>

#include "distances.hpp"
#include "initial.hpp"

namespace mapfls {

// Search state: an equivalence class of same-length plan prefixes. score is
// the accumulated nearest-configuration distance (sum-min searches); omega is
// the bitmask of agents that have left the reference paths (u-agents
// searches). Exactly one of the two is meaningful per search kind.
struct DpState {
  int beta = 0;
  Config cfg;
  long long score = 0;
  std::uint32_t omega = 0;
  int parent = -1;
};

inline bool dominates_path(const DpState& a, const DpState& b) {
  return a.cfg == b.cfg && a.beta <= b.beta && a.score <= b.score;
}

inline bool dominates_agents(const DpState& a, const DpState& b) {
  return a.cfg == b.cfg && a.beta == b.beta && (a.omega & ~b.omega) == 0;
}

struct DpOptions {
  bool use_dominance = true;
  std::uint64_t max_states = 0;  // 0: only the internal defect guard applies
  bool track_partials = false;   // count distinct partial configurations
  int verbosity = 0;
};

struct DpStats {
  std::uint64_t states_created = 0;      // distinct admitted states, root included
  std::uint64_t states_expanded = 0;     // queue pops
  std::uint64_t successors_generated = 0;
  std::uint64_t dominated_removed = 0;   // open states displaced by a new state
  std::uint64_t dominated_rejected = 0;  // successors rejected by an open state
  std::uint64_t distinct_partials = 0;
  std::uint64_t queue_peak = 0;
  double state_ceiling = 0;
  double partial_ceiling = 0;
};

struct DpResult {
  std::optional<Plan> plan;
  DpStats stats;
  bool exhausted = false;
};

namespace detail {

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  double b = 1;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// distinct partial position strings; a string of t vertices is the candidate
// placement of the first t agents
struct PartialLog {
  std::unordered_set<Config, ConfigHash> seen;

  void add(const Config& partial, std::size_t len) {
    seen.insert(Config(partial.begin(), partial.begin() + len));
  }

  std::uint64_t distinct() const { return seen.size(); }
};

struct StateKey {
  int beta;
  Config cfg;
  long long tag;  // score or omega, depending on the search kind

  bool operator==(const StateKey& o) const {
    return beta == o.beta && tag == o.tag && cfg == o.cfg;
  }
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const {
    std::size_t h = hash_ints(k.cfg);
    hash_mix(h, std::hash<int>{}(k.beta));
    hash_mix(h, std::hash<long long>{}(k.tag));
    return h;
  }
};

}  // namespace detail

// One plan-improvement search around a reference plan: finds the shortest
// plan among those staying within the given radius of the reference.
class NeighborhoodDp {
 public:
  NeighborhoodDp(const DiGraph& graph, const Plan& reference, int radius)
      : g_(graph), f0_(reference), radius_(radius) {
    if (radius < 0) throw std::invalid_argument("neighborhood: negative radius");
    if (f0_.agent_count() > 31)
      throw std::invalid_argument("neighborhood: more than 31 agents unsupported");
  }

  const Plan& reference() const { return f0_; }
  int radius() const { return radius_; }

  // distance of cfg from the nearest reference configuration
  Dist nearest_reference_distance(const Config& cfg) const {
    return min_config_distance(g_, cfg, f0_);
  }

  // Successors for the sum-min search. Configurations are grown one agent at
  // a time; every candidate string is generated first, then tested. Each
  // partial assignment carries the reference steps it could still be charged
  // against, with the distance accumulated so far; a step drops out when its
  // cost exceeds the remaining budget, and the assignment dies when no step
  // is left. The surviving minimum at full length is exactly the
  // nearest-reference distance of the successor.
  std::vector<DpState> expand_path(const DpState& s, detail::PartialLog* partials = nullptr) const {
    std::vector<DpState> out;
    int k = f0_.agent_count();
    const auto& ref = f0_.trace();
    long long budget = radius_ - s.score;
    Config next(k);
    // hs[i]: (reference step, accumulated distance) pairs alive after the
    // first i agents are placed
    std::vector<std::vector<std::pair<int, long long>>> hs(k + 1);
    for (int h = 0; h < static_cast<int>(ref.size()); ++h) hs[0].push_back({h, 0});
    auto rec = [&](auto&& self, int i) -> void {
      if (i == k) {
        for (int a = 0; a < k; ++a)
          for (int b = a + 1; b < k; ++b)
            if (next[a] == s.cfg[b] && next[b] == s.cfg[a] && next[a] != s.cfg[a]) return;  // swap
        long long delta = budget + 1;
        for (const auto& [h, cost] : hs[k]) delta = std::min(delta, cost);
        out.push_back({s.beta + 1, next, s.score + delta, 0, -1});
        return;
      }
      auto try_vertex = [&](VertexId v) {
        next[i] = v;
        if (partials) partials->add(next, i + 1);
        for (int j = 0; j < i; ++j)
          if (next[j] == v) return;  // repeated vertex
        hs[i + 1].clear();
        for (const auto& [h, cost] : hs[i]) {
          Dist d = vertex_distance(g_, v, ref[h][i]);
          if (d != kUnreachable && cost + d <= budget) hs[i + 1].push_back({h, cost + d});
        }
        if (hs[i + 1].empty()) return;
        self(self, i + 1);
      };
      try_vertex(s.cfg[i]);
      for (VertexId v : g_.out_neighbors(s.cfg[i])) try_vertex(v);
    };
    if (budget >= 0) rec(rec, 0);
    return out;
  }

  // Successors for the u-agents search: pick which agents may leave the
  // reference (already-diverged agents stay free), everyone else follows it.
  std::vector<DpState> expand_agents(const DpState& s) const {
    std::vector<DpState> out;
    int k = f0_.agent_count();
    const Config& ref_next = psi(f0_, s.beta + 1);
    int slots = radius_ - static_cast<int>(popcount(s.omega));
    if (slots < 0) return out;

    std::vector<int> free_agents;
    for (int p = 0; p < k; ++p)
      if (s.omega >> p & 1) free_agents.push_back(p);

    auto emit_products = [&]() {
      // all position choices for the free agents; the rest follow ref_next
      Config next(k);
      for (int p = 0; p < k; ++p) next[p] = ref_next[p];
      auto rec = [&](auto&& self, std::size_t fi) -> void {
        if (fi == free_agents.size()) {
          if (!is_injective(next)) return;
          for (int a = 0; a < k; ++a) {
            if (next[a] != s.cfg[a] && !g_.has_edge(s.cfg[a], next[a])) return;
            for (int b = a + 1; b < k; ++b)
              if (next[a] == s.cfg[b] && next[b] == s.cfg[a] && next[a] != s.cfg[a]) return;  // swap
          }
          std::uint32_t omega = s.omega;
          for (int p = 0; p < k; ++p)
            if (next[p] != ref_next[p]) omega |= 1u << p;
          if (popcount(omega) > static_cast<unsigned>(radius_)) return;
          out.push_back({s.beta + 1, next, 0, omega, -1});
          return;
        }
        int p = free_agents[fi];
        next[p] = s.cfg[p];
        self(self, fi + 1);
        for (VertexId v : g_.out_neighbors(s.cfg[p])) {
          next[p] = v;
          self(self, fi + 1);
        }
        next[p] = ref_next[p];
      };
      rec(rec, 0);
    };

    // subsets of still-synchronized agents freed this step, by increasing
    // size, lexicographic within a size
    auto subsets = [&](auto&& self, int from, int remaining) -> void {
      emit_products();
      if (remaining == 0) return;
      for (int p = from; p < k; ++p) {
        if (s.omega >> p & 1) continue;
        free_agents.push_back(p);
        self(self, p + 1, remaining - 1);
        free_agents.pop_back();
      }
    };
    subsets(subsets, 0, slots);
    return out;
  }

  DpResult search(const Config& target, PlanMetricKind kind, const DpOptions& opts = {}) const {
    if (kind != PlanMetricKind::SumMin && kind != PlanMetricKind::UAgents)
      throw std::invalid_argument("dp_search: metric must be sum-min or u-agents");
    DpResult res;
    int k = f0_.agent_count();
    int len = f0_.makespan();
    int n = g_.node_count();
    int phi = g_.max_out_degree();

    if (kind == PlanMetricKind::SumMin) {
      res.stats.state_ceiling = static_cast<double>(len) * len *
                                detail::binomial(k + radius_, radius_) * std::pow(phi, radius_) *
                                (radius_ + 1);
      double partial = 0;
      for (int t = 0; t < k; ++t)
        partial += std::pow(phi, radius_ + 1) * detail::binomial(t + radius_, radius_) * len;
      res.stats.partial_ceiling = partial;
    } else {
      double perm = 1;
      for (int i = 1; i <= radius_; ++i) perm *= n - k + i;
      res.stats.state_ceiling = static_cast<double>(len) * detail::binomial(k, radius_) * perm;
    }
    double defect_cap = std::max(10.0 * res.stats.state_ceiling, 1024.0);

    std::vector<DpState> arena;
    std::vector<char> dead;
    std::vector<std::deque<int>> buckets(len + 2);
    std::unordered_map<Config, std::vector<int>, ConfigHash> open_at;
    std::unordered_set<detail::StateKey, detail::StateKeyHash> seen;
    detail::PartialLog partial_log;
    std::uint64_t open_count = 0;

    auto state_key = [&](const DpState& s) {
      long long tag = kind == PlanMetricKind::SumMin ? s.score : static_cast<long long>(s.omega);
      return detail::StateKey{s.beta, s.cfg, tag};
    };

    auto admit = [&](DpState s) {
      detail::StateKey key = state_key(s);
      if (seen.count(key)) return;  // exact duplicate of an admitted state
      if (opts.use_dominance) {
        auto it = open_at.find(s.cfg);
        if (it != open_at.end()) {
          for (int id : it->second) {
            const DpState& o = arena[id];
            bool dom = kind == PlanMetricKind::SumMin ? dominates_path(o, s) : dominates_agents(o, s);
            if (dom) {
              ++res.stats.dominated_rejected;
              return;
            }
          }
          auto& ids = it->second;
          for (std::size_t i = 0; i < ids.size();) {
            const DpState& o = arena[ids[i]];
            bool dom = kind == PlanMetricKind::SumMin ? dominates_path(s, o) : dominates_agents(s, o);
            if (dom) {
              dead[ids[i]] = 1;
              --open_count;
              ++res.stats.dominated_removed;
              ids[i] = ids.back();
              ids.pop_back();
            } else {
              ++i;
            }
          }
        }
      }
      seen.insert(std::move(key));
      int id = static_cast<int>(arena.size());
      arena.push_back(std::move(s));
      dead.push_back(0);
      buckets[arena[id].beta].push_back(id);
      open_at[arena[id].cfg].push_back(id);
      ++open_count;
      ++res.stats.states_created;
      res.stats.queue_peak = std::max(res.stats.queue_peak, open_count);
      if (static_cast<double>(res.stats.states_created) > defect_cap)
        throw std::logic_error("dp_search: state count exceeded the safety ceiling");
    };

    auto drop_from_open = [&](int id) {
      auto it = open_at.find(arena[id].cfg);
      if (it == open_at.end()) return;
      auto& ids = it->second;
      for (std::size_t i = 0; i < ids.size(); ++i)
        if (ids[i] == id) {
          ids[i] = ids.back();
          ids.pop_back();
          break;
        }
      if (ids.empty()) open_at.erase(it);
    };

    admit({0, f0_.start(), 0, 0, -1});

    for (int level = 0; level < static_cast<int>(buckets.size()); ++level) {
      while (!buckets[level].empty()) {
        int id = buckets[level].front();
        buckets[level].pop_front();
        if (dead[id]) continue;
        drop_from_open(id);
        --open_count;
        ++res.stats.states_expanded;
        DpState cur = arena[id];
        if (opts.verbosity > 0)
          std::fprintf(stderr, "dp pop beta=%d score=%lld omega=%u open=%llu\n", cur.beta, cur.score,
                       cur.omega, static_cast<unsigned long long>(open_count));
        if (cur.cfg == target) {
          std::vector<Config> rows;
          for (int i = id; i >= 0; i = arena[i].parent) rows.push_back(arena[i].cfg);
          std::reverse(rows.begin(), rows.end());
          res.plan = Plan::from_trace(std::move(rows));
          res.stats.distinct_partials = partial_log.distinct();
          return res;
        }
        if (cur.beta >= len) continue;  // the neighborhood caps plan length
        if (opts.max_states && res.stats.states_created >= opts.max_states) {
          res.exhausted = true;
          res.stats.distinct_partials = partial_log.distinct();
          return res;
        }
        std::vector<DpState> succ = kind == PlanMetricKind::SumMin
                                        ? expand_path(cur, opts.track_partials ? &partial_log : nullptr)
                                        : expand_agents(cur);
        res.stats.successors_generated += succ.size();
        for (DpState& s : succ) {
          s.parent = id;
          admit(std::move(s));
        }
      }
    }
    res.stats.distinct_partials = partial_log.distinct();
    return res;
  }

 private:
  static unsigned popcount(std::uint32_t x) {
    unsigned c = 0;
    for (; x; x &= x - 1) ++c;
    return c;
  }

  const DiGraph& g_;
  const Plan& f0_;
  int radius_;
};

// Shortest plan within the given radius of f0 under the given metric.
inline DpResult dp_search(const Instance& inst, const Plan& f0, int radius, PlanMetricKind kind,
                          const DpOptions& opts = {}) {
  if (!is_solution(inst, f0)) throw std::invalid_argument("dp_search: reference must solve the instance");
  NeighborhoodDp dp(inst.graph, f0, radius);
  return dp.search(inst.target, kind, opts);
}

}  // namespace mapfls
