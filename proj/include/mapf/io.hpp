#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mapf/dlc.hpp"
#include "mapf/grid_map.hpp"
#include "mapf/instance.hpp"
#include "mapf/path.hpp"
#include "mapf/scen.hpp"
#include "mapf/trajectory.hpp"
#include "mapf/validator.hpp"

namespace mapf {

using json = nlohmann::ordered_json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

inline std::string map_name_from_path(const std::string& path) {
  size_t slash = path.find_last_of("/\\");
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  if (base.size() > 4 && base.substr(base.size() - 4) == ".map") base.resize(base.size() - 4);
  return base;
}

inline GridMap load_map_file(const std::string& path) {
  return parse_map(read_file(path), map_name_from_path(path));
}

inline std::vector<ScenEntry> load_scen_file(const std::string& path) {
  return parse_scen(read_file(path));
}

// ---------------------------------------------------------------------------
// JSON exports
// ---------------------------------------------------------------------------

inline json instance_to_json(const Instance& instance) {
  json agents = json::array();
  for (const Agent& a : instance.agents)
    agents.push_back(json{{"id", a.id},
                          {"start", {a.start.row, a.start.col}},
                          {"goal", {a.goal.row, a.goal.col}}});
  return json{{"map_name", instance.map.name()},
              {"width", instance.map.width()},
              {"height", instance.map.height()},
              {"agents", std::move(agents)}};
}

inline json paths_to_json(const GridMap& map, const std::vector<GeometricPath>& paths) {
  json out = json::array();
  for (const GeometricPath& p : paths) {
    json vertices = json::array();
    for (int cell : p.cells) {
      const Vertex v = map.vertex(cell);
      vertices.push_back({v.row, v.col});
    }
    out.push_back(json{{"agent_id", p.agent_id}, {"vertices", std::move(vertices)}});
  }
  return out;
}

inline json trajectories_to_json(const GridMap& map, const std::vector<Trajectory>& trajectories) {
  json out = json::array();
  for (const Trajectory& traj : trajectories) {
    json positions = json::array();
    for (int cell : traj.cells) {
      const Vertex v = map.vertex(cell);
      positions.push_back({v.row, v.col});
    }
    out.push_back(json{{"agent_id", traj.agent_id},
                       {"T", traj.arrival()},
                       {"positions", std::move(positions)}});
  }
  return out;
}

/// Parses the trajectory export format back. Positions after the declared
/// arrival must repeat the goal; they are dropped on load.
inline std::vector<Trajectory> trajectories_from_json(const GridMap& map, const json& doc) {
  if (!doc.is_array()) throw std::runtime_error("trajectory file: expected a JSON array");
  std::vector<Trajectory> out;
  for (const json& item : doc) {
    Trajectory traj;
    traj.agent_id = item.at("agent_id").get<int>();
    const long declared = item.at("T").get<long>();
    for (const json& pos : item.at("positions")) {
      const Vertex v{pos.at(0).get<int>(), pos.at(1).get<int>()};
      if (!map.in_bounds(v))
        throw std::runtime_error("trajectory of agent " + std::to_string(traj.agent_id) +
                                 ": position outside the map");
      traj.cells.push_back(map.index(v));
    }
    if (traj.cells.empty())
      throw std::runtime_error("trajectory of agent " + std::to_string(traj.agent_id) +
                               ": no positions");
    if (declared + 1 > static_cast<long>(traj.cells.size()))
      throw std::runtime_error("trajectory of agent " + std::to_string(traj.agent_id) +
                               ": declared T exceeds the position count");
    for (size_t t = declared + 1; t < traj.cells.size(); ++t)
      if (traj.cells[t] != traj.cells[declared])
        throw std::runtime_error("trajectory of agent " + std::to_string(traj.agent_id) +
                                 ": moves after its declared arrival");
    traj.cells.resize(declared + 1);
    out.push_back(std::move(traj));
  }
  return out;
}

inline json conflict_report_to_json(const GridMap& map, const ConflictReport& report) {
  json conflicts = json::array();
  for (const Conflict& c : report.conflicts) {
    const Vertex u = map.vertex(c.cell_u);
    const Vertex v = map.vertex(c.cell_v);
    json entry{{"kind", to_string(c.kind)},
               {"tick", c.tick},
               {"agents", {c.agent_i, c.agent_j}}};
    if (c.kind == Conflict::Kind::vertex)
      entry["location"] = {u.row, u.col};
    else
      entry["location"] = {{u.row, u.col}, {v.row, v.col}};
    conflicts.push_back(std::move(entry));
  }
  return json{{"conflict_count", report.conflicts.size()}, {"conflicts", std::move(conflicts)}};
}

// ---------------------------------------------------------------------------
// Trajectory CSV: one action row per agent per tick
// ---------------------------------------------------------------------------

inline std::string trajectories_to_csv(const GridMap& map,
                                       const std::vector<Trajectory>& trajectories) {
  long horizon = 0;
  for (const Trajectory& traj : trajectories) horizon = std::max(horizon, traj.arrival());
  std::string out = "tick,agent,row,col,action\n";
  for (long t = 1; t <= horizon; ++t) {
    for (const Trajectory& traj : trajectories) {
      const int cell = traj.at(t);
      const Vertex v = map.vertex(cell);
      const char* action = "park";
      if (t <= traj.arrival()) action = cell != traj.at(t - 1) ? "move" : "wait";
      out += std::to_string(t) + ',' + std::to_string(traj.agent_id) + ',' +
             std::to_string(v.row) + ',' + std::to_string(v.col) + ',' + action + '\n';
    }
  }
  return out;
}

}  // namespace mapf
