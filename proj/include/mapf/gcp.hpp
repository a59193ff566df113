#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "mapf/instance.hpp"
#include "mapf/path.hpp"
#include "mapf/penalty.hpp"

namespace mapf {

struct PlannerConfig {
  /// Multiplier on accumulated vertex penalties. 1 applies them verbatim,
  /// 0 disables cost inflation and planning degenerates to shortest paths.
  double penalty_weight = 1.0;
};

enum class PlanFailReason { start_blocked, goal_blocked, unreachable };

inline const char* to_string(PlanFailReason r) {
  switch (r) {
    case PlanFailReason::start_blocked: return "start_blocked";
    case PlanFailReason::goal_blocked: return "goal_blocked";
    case PlanFailReason::unreachable: return "unreachable";
  }
  return "?";
}

/// Outcome of the prioritized planning pass. On success `paths` is in
/// priority order and every path avoids all higher-priority goals.
struct PlanResult {
  bool ok = false;
  std::vector<GeometricPath> paths;
  int failing_agent = -1;
  PlanFailReason reason = PlanFailReason::unreachable;
};

namespace detail {

struct AstarNode {
  double f;
  double g;
  uint64_t seq;  // insertion order, breaks remaining ties deterministically
  int cell;
};

struct AstarNodeWorse {
  bool operator()(const AstarNode& a, const AstarNode& b) const {
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g < b.g;  // prefer the deeper node
    return a.seq > b.seq;
  }
};

}  // namespace detail

/// A* from s to g on the grid with `blocked` vertices removed, minimizing the
/// sum of penalty-inflated entry costs. The Manhattan heuristic stays
/// admissible because every entry cost is at least the unit base cost.
/// Returns std::nullopt when g is unreachable; misuse throws.
inline std::optional<GeometricPath> astar_inflated(const GridMap& map, const CellMask& blocked,
                                                   const PenaltyField& field, Vertex s, Vertex g,
                                                   double penalty_weight) {
  if (!map.passable(s) || !map.passable(g))
    throw std::invalid_argument("astar_inflated: endpoint out of bounds or impassable");
  const int start = map.index(s);
  const int goal = map.index(g);
  if (blocked.test(start) || blocked.test(goal))
    throw std::invalid_argument("astar_inflated: endpoint is blocked");

  const int n = map.num_cells();
  std::vector<double> g_cost(n, -1.0);
  std::vector<int> parent(n, -1);
  std::vector<uint8_t> closed(n, 0);

  auto heuristic = [&](int cell) {
    const Vertex v = map.vertex(cell);
    return static_cast<double>(std::abs(v.row - g.row) + std::abs(v.col - g.col));
  };

  std::priority_queue<detail::AstarNode, std::vector<detail::AstarNode>, detail::AstarNodeWorse>
      open;
  uint64_t seq = 0;
  g_cost[start] = 0.0;
  open.push({heuristic(start), 0.0, seq++, start});

  while (!open.empty()) {
    const detail::AstarNode node = open.top();
    open.pop();
    if (closed[node.cell]) continue;  // stale duplicate
    closed[node.cell] = 1;
    if (node.cell == goal) break;

    map.for_each_neighbor(node.cell, [&](int next) {
      if (closed[next] || blocked.test(next)) return;
      const double step = 1.0 + penalty_weight * static_cast<double>(field.at(next));
      const double tentative = node.g + step;
      if (g_cost[next] < 0.0 || tentative < g_cost[next]) {
        g_cost[next] = tentative;
        parent[next] = node.cell;
        open.push({tentative + heuristic(next), tentative, seq++, next});
      }
    });
  }

  if (!closed[goal]) return std::nullopt;

  GeometricPath path;
  for (int cur = goal; cur != -1; cur = parent[cur]) path.cells.push_back(cur);
  std::reverse(path.cells.begin(), path.cells.end());
  return path;
}

/// Total inflated cost of a path under the given field and weight.
inline double path_cost(const GridMap& map, const PenaltyField& field, double penalty_weight,
                        const GeometricPath& path) {
  double cost = 0.0;
  for (size_t r = 1; r < path.cells.size(); ++r)
    cost += 1.0 + penalty_weight * static_cast<double>(field.at(path.cells[r]));
  return cost;
}

/// Sequential prioritized planning: walk the ordering, remove the goals of
/// all earlier agents, plan with inflated costs, then fold the found path
/// into the penalty field before the next agent plans.
inline PlanResult plan_all(const Instance& instance, const Ordering& ordering,
                           const PlannerConfig& config = {}) {
  PlanResult result;
  CellMask parked(instance.map.num_cells());
  PenaltyField field(instance.map.num_cells());

  for (int pos = 0; pos < ordering.size(); ++pos) {
    const Agent& agent = detail::agent_by_id(instance, ordering.ids[pos]);
    const int start = instance.map.index(agent.start);
    const int goal = instance.map.index(agent.goal);
    if (parked.test(start)) {
      result.failing_agent = agent.id;
      result.reason = PlanFailReason::start_blocked;
      return result;
    }
    if (parked.test(goal)) {
      result.failing_agent = agent.id;
      result.reason = PlanFailReason::goal_blocked;
      return result;
    }
    auto path = astar_inflated(instance.map, parked, field, agent.start, agent.goal,
                               config.penalty_weight);
    if (!path) {
      result.failing_agent = agent.id;
      result.reason = PlanFailReason::unreachable;
      return result;
    }
    path->agent_id = agent.id;
    field.add_path(*path);
    parked.set(goal);
    result.paths.push_back(std::move(*path));
  }
  result.ok = true;
  return result;
}

}  // namespace mapf
