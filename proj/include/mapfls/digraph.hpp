#pragma once

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "common.hpp"

namespace mapfls {

// Immutable directed graph. All-pairs shortest hop counts are computed
// eagerly at construction (one BFS per source), so distance lookups are O(1).
class DiGraph {
 public:
  DiGraph() = default;

  DiGraph(int node_count, std::vector<std::pair<VertexId, VertexId>> edges) {
    if (node_count <= 0) throw std::invalid_argument("digraph: node_count must be positive");
    n_ = node_count;
    out_.assign(n_, {});
    std::unordered_set<long long> seen;
    seen.reserve(edges.size() * 2);
    for (const auto& [u, v] : edges) {
      if (u < 0 || u >= n_ || v < 0 || v >= n_)
        throw std::invalid_argument("digraph: edge endpoint out of range");
      if (u == v) throw std::invalid_argument("digraph: self-loop rejected");
      long long key = static_cast<long long>(u) * n_ + v;
      if (!seen.insert(key).second) throw std::invalid_argument("digraph: duplicate edge rejected");
      out_[u].push_back(v);
    }
    m_ = static_cast<int>(edges.size());
    for (auto& nb : out_) std::sort(nb.begin(), nb.end());
    compute_distances();
  }

  int node_count() const { return n_; }
  int edge_count() const { return m_; }

  const std::vector<VertexId>& out_neighbors(VertexId v) const { return out_[v]; }

  bool has_edge(VertexId u, VertexId v) const {
    const auto& nb = out_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  int max_out_degree() const {
    std::size_t d = 0;
    for (const auto& nb : out_) d = std::max(d, nb.size());
    return static_cast<int>(d);
  }

  // hop count of the shortest path from v, or kUnreachable
  Dist hops_from(VertexId src, VertexId dst) const { return dist_[src][dst]; }

  std::vector<std::pair<VertexId, VertexId>> edges() const {
    std::vector<std::pair<VertexId, VertexId>> e;
    e.reserve(m_);
    for (VertexId u = 0; u < n_; ++u)
      for (VertexId v : out_[u]) e.emplace_back(u, v);
    return e;
  }

 private:
  void compute_distances() {
    dist_.assign(n_, std::vector<Dist>(n_, kUnreachable));
    std::deque<VertexId> queue;
    for (VertexId s = 0; s < n_; ++s) {
      auto& row = dist_[s];
      row[s] = 0;
      queue.clear();
      queue.push_back(s);
      while (!queue.empty()) {
        VertexId u = queue.front();
        queue.pop_front();
        for (VertexId v : out_[u]) {
          if (row[v] == kUnreachable) {
            row[v] = row[u] + 1;
            queue.push_back(v);
          }
        }
      }
    }
  }

  int n_ = 0;
  int m_ = 0;
  std::vector<std::vector<VertexId>> out_;
  std::vector<std::vector<Dist>> dist_;
};

inline DiGraph build_graph(int node_count, std::vector<std::pair<VertexId, VertexId>> edges) {
  return DiGraph(node_count, std::move(edges));
}

// distance of u "seen from" v: hop count of the shortest path from v to u
inline Dist vertex_distance(const DiGraph& g, VertexId u, VertexId v) {
  return g.hops_from(v, u);
}

inline bool is_strongly_connected(const DiGraph& g) {
  int n = g.node_count();
  if (n == 0) return false;
  for (VertexId v = 1; v < n; ++v)
    if (g.hops_from(0, v) == kUnreachable || g.hops_from(v, 0) == kUnreachable) return false;
  return true;
}

// vertices whose distance from v is at most r, sorted ascending
inline std::vector<VertexId> vertex_ball(const DiGraph& g, VertexId v, int radius) {
  std::vector<VertexId> ball;
  for (VertexId u = 0; u < g.node_count(); ++u) {
    Dist d = vertex_distance(g, u, v);
    if (d != kUnreachable && d <= radius) ball.push_back(u);
  }
  return ball;
}

// vertices whose distance from v is exactly r, sorted ascending
inline std::vector<VertexId> vertex_ball_border(const DiGraph& g, VertexId v, int radius) {
  std::vector<VertexId> border;
  for (VertexId u = 0; u < g.node_count(); ++u)
    if (vertex_distance(g, u, v) == radius) border.push_back(u);
  return border;
}

// edge_count distinct ordered pairs (no self-loops), deterministic per seed;
// strong connectivity is NOT enforced here
inline DiGraph random_digraph(int node_count, int edge_count, std::uint64_t seed) {
  if (node_count < 2) throw std::invalid_argument("random_digraph: need at least 2 nodes");
  long long max_edges = static_cast<long long>(node_count) * (node_count - 1);
  if (edge_count < 0 || edge_count > max_edges)
    throw std::invalid_argument("random_digraph: edge_count out of range");
  Rng rng(seed);
  std::unordered_set<long long> chosen;
  chosen.reserve(edge_count * 2);
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(edge_count);
  while (static_cast<int>(edges.size()) < edge_count) {
    VertexId u = rng.int_below(node_count);
    VertexId v = rng.int_below(node_count);
    if (u == v) continue;
    long long key = static_cast<long long>(u) * node_count + v;
    if (chosen.insert(key).second) edges.emplace_back(u, v);
  }
  return DiGraph(node_count, std::move(edges));
}

// text format: "n m" header line, then m lines "u v" (0-based)
inline DiGraph load_graph(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next_line = [&]() {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r\n") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw std::runtime_error("graph file: line 1: missing header");
  std::istringstream header(line);
  long long n = 0, m = 0;
  if (!(header >> n >> m) || n <= 0 || m < 0)
    throw std::runtime_error("graph file: line " + std::to_string(line_no) + ": bad header, expected 'n m'");
  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(m);
  for (long long i = 0; i < m; ++i) {
    if (!next_line())
      throw std::runtime_error("graph file: line " + std::to_string(line_no + 1) + ": expected edge " +
                               std::to_string(i + 1) + " of " + std::to_string(m));
    std::istringstream es(line);
    long long u = 0, v = 0;
    if (!(es >> u >> v))
      throw std::runtime_error("graph file: line " + std::to_string(line_no) + ": expected 'u v'");
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::runtime_error("graph file: line " + std::to_string(line_no) + ": endpoint out of range");
    if (u == v)
      throw std::runtime_error("graph file: line " + std::to_string(line_no) + ": self-loop");
    edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
  }
  try {
    return DiGraph(static_cast<int>(n), std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("graph file: ") + e.what());
  }
}

inline void save_graph(const DiGraph& g, std::ostream& out) {
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

}  // namespace mapfls
