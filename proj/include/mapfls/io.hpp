#pragma once

#include <fstream>

#include <json.hpp>

#include "plan.hpp"

namespace mapfls {

// instance: {"graph": {"nodes": n, "edges": [[u,v],...]},
//            "start": [...], "target": [...], "seed": s}
inline nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json j;
  j["graph"]["nodes"] = inst.graph.node_count();
  auto& edges = j["graph"]["edges"] = nlohmann::json::array();
  for (const auto& [u, v] : inst.graph.edges()) edges.push_back({u, v});
  j["start"] = inst.start;
  j["target"] = inst.target;
  j["seed"] = inst.seed;
  return j;
}

inline Instance instance_from_json(const nlohmann::json& j) {
  try {
    int n = j.at("graph").at("nodes").get<int>();
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (const auto& e : j.at("graph").at("edges")) {
      if (!e.is_array() || e.size() != 2)
        throw std::runtime_error("instance: each edge must be a pair [u, v]");
      edges.emplace_back(e[0].get<VertexId>(), e[1].get<VertexId>());
    }
    DiGraph g(n, std::move(edges));
    Config start = j.at("start").get<Config>();
    Config target = j.at("target").get<Config>();
    std::uint64_t seed = j.value("seed", std::uint64_t{0});
    return make_instance(std::move(g), std::move(start), std::move(target), seed);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("instance: malformed json: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("instance: ") + e.what());
  }
}

// plan: {"agents": k, "steps": [row, row, ...]}; row t lists each agent's
// vertex after t steps, so the first row is the start configuration
inline nlohmann::json plan_to_json(const Plan& f) {
  nlohmann::json j;
  j["agents"] = f.agent_count();
  j["steps"] = f.trace();
  return j;
}

inline Plan plan_from_json(const nlohmann::json& j) {
  int agents = 0;
  std::vector<Config> rows;
  try {
    agents = j.at("agents").get<int>();
    rows = j.at("steps").get<std::vector<Config>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("plan: malformed json: ") + e.what());
  }
  if (rows.empty()) throw std::runtime_error("plan: needs at least the start row");
  for (std::size_t t = 0; t < rows.size(); ++t) {
    if (static_cast<int>(rows[t].size()) != agents)
      throw std::runtime_error("plan: step " + std::to_string(t) + ": expected " +
                               std::to_string(agents) + " vertices");
    if (!is_injective(rows[t]))
      throw std::runtime_error("plan: step " + std::to_string(t) + ": repeated vertex");
  }
  return Plan::from_trace(std::move(rows));
}

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(path + ": invalid json: " + e.what());
  }
  return j;
}

inline void save_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

inline Instance load_instance_file(const std::string& path) {
  return instance_from_json(load_json_file(path));
}

inline Plan load_plan_file(const std::string& path) { return plan_from_json(load_json_file(path)); }

}  // namespace mapfls
