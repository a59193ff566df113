#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mapf/distance.hpp"
#include "mapf/instance.hpp"
#include "mapf/trajectory.hpp"

namespace mapf {

/// Space-time occupancy ledger. Vertex reservations block a cell at one tick
/// (waiting agents reserve too), directed edge reservations block the reverse
/// traversal, and a parked goal blocks its cell from the arrival tick onward.
class ReservationTable {
 public:
  explicit ReservationTable(int num_cells)
      : num_cells_(num_cells),
        park_from_(num_cells, std::numeric_limits<long>::max()),
        last_vertex_tick_(num_cells, -1) {}

  bool vertex_free(int cell, long t) const {
    if (t >= park_from_[cell]) return false;
    return !vertex_.count(vertex_key(cell, t));
  }

  /// Legality of occupying `to` at tick t+1 coming from `from` at tick t
  /// (from == to is a wait). Swaps are refused via the reverse edge.
  bool transition_free(int from, int to, long t) const {
    if (!vertex_free(to, t + 1)) return false;
    if (from != to && edge_.count(edge_key(to, from, t))) return false;
    return true;
  }

  /// A goal can park at tick t when nothing is reserved there at t or later.
  bool can_park(int cell, long t) const {
    return last_vertex_tick_[cell] < t && park_from_[cell] == std::numeric_limits<long>::max();
  }

  void reserve_vertex(int cell, long t) {
    vertex_.insert(vertex_key(cell, t));
    last_vertex_tick_[cell] = std::max(last_vertex_tick_[cell], t);
  }

  void reserve_edge(int from, int to, long t) { edge_.insert(edge_key(from, to, t)); }

  void reserve_parked(int cell, long from_tick) { park_from_[cell] = from_tick; }

  /// Records a finished trajectory: every visited (cell, tick), every
  /// directed move, and the goal parked from arrival onward.
  void reserve_trajectory(const Trajectory& traj) {
    for (size_t t = 0; t < traj.cells.size(); ++t)
      reserve_vertex(traj.cells[t], static_cast<long>(t));
    for (size_t t = 1; t < traj.cells.size(); ++t)
      if (traj.cells[t - 1] != traj.cells[t])
        reserve_edge(traj.cells[t - 1], traj.cells[t], static_cast<long>(t) - 1);
    reserve_parked(traj.cells.back(), traj.arrival());
  }

 private:
  int64_t vertex_key(int cell, long t) const { return static_cast<int64_t>(t) * num_cells_ + cell; }
  int64_t edge_key(int from, int to, long t) const {
    return (static_cast<int64_t>(t) * num_cells_ + from) * num_cells_ + to;
  }

  int num_cells_;
  std::unordered_set<int64_t> vertex_;
  std::unordered_set<int64_t> edge_;
  std::vector<long> park_from_;
  std::vector<long> last_vertex_tick_;
};

struct CaStarResult {
  bool ok = false;
  std::vector<Trajectory> trajectories;  // priority order
  int failing_agent = -1;
};

inline long default_ca_star_horizon(const Instance& instance, const Ordering& ordering) {
  long sum_d = 0;
  for (int pos = 0; pos < ordering.size(); ++pos) {
    const Agent& agent = detail::agent_by_id(instance, ordering.ids[pos]);
    const DistField dist = bfs_distances(instance.map, agent.start);
    const int goal = instance.map.index(agent.goal);
    if (dist.reachable(goal)) sum_d += dist[goal];
  }
  return instance.map.num_cells() + sum_d;
}

namespace detail {

struct SpaceTimeNode {
  long f;
  long t;
  uint64_t seq;
  int cell;
};

struct SpaceTimeWorse {
  bool operator()(const SpaceTimeNode& a, const SpaceTimeNode& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.t != b.t) return a.t < b.t;  // prefer the later node
    return a.seq > b.seq;
  }
};

/// Space-time A* minimizing arrival tick against the reservation table.
/// Successors are the four neighbors plus waiting, one tick each.
inline bool space_time_astar(const GridMap& map, const ReservationTable& table, Vertex s, Vertex g,
                             long horizon, Trajectory& out) {
  const int start = map.index(s);
  const int goal = map.index(g);

  auto heuristic = [&](int cell) {
    const Vertex v = map.vertex(cell);
    return static_cast<long>(std::abs(v.row - g.row) + std::abs(v.col - g.col));
  };

  std::unordered_map<int64_t, int64_t> parent;  // (cell,t) -> (cell,t-1)
  std::unordered_set<int64_t> closed;
  auto key = [&](int cell, long t) { return static_cast<int64_t>(t) * map.num_cells() + cell; };

  std::priority_queue<SpaceTimeNode, std::vector<SpaceTimeNode>, SpaceTimeWorse> open;
  uint64_t seq = 0;
  if (!table.vertex_free(start, 0)) return false;
  open.push({heuristic(start), 0, seq++, start});
  parent[key(start, 0)] = -1;

  while (!open.empty()) {
    const SpaceTimeNode node = open.top();
    open.pop();
    if (!closed.insert(key(node.cell, node.t)).second) continue;

    if (node.cell == goal && table.can_park(goal, node.t)) {
      std::vector<int> cells;
      int64_t cur = key(node.cell, node.t);
      while (cur != -1) {
        cells.push_back(static_cast<int>(cur % map.num_cells()));
        cur = parent.at(cur);
      }
      std::reverse(cells.begin(), cells.end());
      out.cells = std::move(cells);
      return true;
    }
    if (node.t >= horizon) continue;

    auto try_push = [&](int next) {
      if (!table.transition_free(node.cell, next, node.t)) return;
      const int64_t child = key(next, node.t + 1);
      if (closed.count(child) || parent.count(child)) return;
      parent[child] = key(node.cell, node.t);
      open.push({node.t + 1 + heuristic(next), node.t + 1, seq++, next});
    };
    map.for_each_neighbor(node.cell, try_push);
    try_push(node.cell);  // wait
  }
  return false;
}

}  // namespace detail

/// Prioritized space-time planning: each agent in turn finds its earliest
/// parking arrival consistent with all earlier reservations, then commits
/// its trajectory to the table.
inline CaStarResult plan_ca_star(const Instance& instance, const Ordering& ordering,
                                 long horizon = -1) {
  if (horizon < 0) horizon = default_ca_star_horizon(instance, ordering);
  CaStarResult result;
  ReservationTable table(instance.map.num_cells());
  for (int pos = 0; pos < ordering.size(); ++pos) {
    const Agent& agent = detail::agent_by_id(instance, ordering.ids[pos]);
    Trajectory traj;
    traj.agent_id = agent.id;
    if (!detail::space_time_astar(instance.map, table, agent.start, agent.goal, horizon, traj)) {
      result.failing_agent = agent.id;
      return result;
    }
    table.reserve_trajectory(traj);
    result.trajectories.push_back(std::move(traj));
  }
  result.ok = true;
  return result;
}

}  // namespace mapf
