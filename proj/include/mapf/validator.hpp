#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "mapf/grid_map.hpp"
#include "mapf/trajectory.hpp"

namespace mapf {

class MalformedTrajectoryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Conflict {
  enum class Kind { vertex, edge_swap };
  Kind kind = Kind::vertex;
  long tick = 0;   // the tick of occupation (vertex) or the departure tick (swap)
  int agent_i = 0; // agent ids, agent_i < agent_j
  int agent_j = 0;
  int cell_u = 0;  // the shared vertex, or the swap edge (u -> v as driven by agent_i)
  int cell_v = 0;
};

inline const char* to_string(Conflict::Kind k) {
  return k == Conflict::Kind::vertex ? "vertex" : "edge_swap";
}

struct ConflictReport {
  std::vector<Conflict> conflicts;

  bool clean() const { return conflicts.empty(); }
};

/// Exhaustive pairwise conflict check over the common goal-parked horizon.
/// Detects same-tick vertex sharing and opposite traversals of one edge.
/// Conflicts come out ordered by (tick, agent pair). Trajectories with a
/// non-adjacent, non-stationary step are rejected as malformed.
inline ConflictReport validate(const GridMap& map, const std::vector<Trajectory>& trajectories) {
  for (const Trajectory& traj : trajectories) {
    if (traj.cells.empty())
      throw MalformedTrajectoryError("trajectory of agent " + std::to_string(traj.agent_id) +
                                     " is empty");
    for (size_t t = 1; t < traj.cells.size(); ++t) {
      const Vertex a = map.vertex(traj.cells[t - 1]);
      const Vertex b = map.vertex(traj.cells[t]);
      if (a != b && !GridMap::adjacent(a, b))
        throw MalformedTrajectoryError("trajectory of agent " + std::to_string(traj.agent_id) +
                                       " jumps between non-adjacent vertices at tick " +
                                       std::to_string(t));
    }
  }

  const int k = static_cast<int>(trajectories.size());
  long horizon = 0;
  for (const Trajectory& traj : trajectories) horizon = std::max(horizon, traj.arrival());

  // Sort by agent id once so reported pairs are ordered canonically.
  std::vector<int> order(k);
  for (int i = 0; i < k; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return trajectories[a].agent_id < trajectories[b].agent_id;
  });

  ConflictReport report;
  std::vector<int> now(k), next(k);
  for (int i = 0; i < k; ++i) next[i] = trajectories[order[i]].at(0);
  for (long t = 0; t <= horizon; ++t) {
    now.swap(next);
    for (int i = 0; i < k; ++i) next[i] = trajectories[order[i]].at(t + 1);
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        if (now[i] == now[j]) {
          report.conflicts.push_back(Conflict{Conflict::Kind::vertex, t,
                                              trajectories[order[i]].agent_id,
                                              trajectories[order[j]].agent_id, now[i], now[i]});
        }
        if (t < horizon && now[i] != next[i] && now[i] == next[j] && next[i] == now[j]) {
          report.conflicts.push_back(Conflict{Conflict::Kind::edge_swap, t,
                                              trajectories[order[i]].agent_id,
                                              trajectories[order[j]].agent_id, now[i], next[i]});
        }
      }
    }
  }
  return report;
}

}  // namespace mapf
