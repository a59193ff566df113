#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mapf/distance.hpp"
#include "mapf/instance.hpp"
#include "mapf/path.hpp"
#include "mapf/trajectory.hpp"

namespace mapf {

/// Sum-of-costs split into the path-length component and the waiting
/// component. The identity soc = spatial + temporal holds exactly.
struct CostBreakdown {
  long soc = 0;
  long spatial = 0;
  long temporal = 0;
  double pct_spatial = 0.0;
  double pct_temporal = 0.0;
};

inline CostBreakdown make_breakdown(long spatial, long temporal) {
  CostBreakdown b;
  b.spatial = spatial;
  b.temporal = temporal;
  b.soc = spatial + temporal;
  if (b.soc > 0) {
    b.pct_spatial = 100.0 * static_cast<double>(spatial) / static_cast<double>(b.soc);
    b.pct_temporal = 100.0 * static_cast<double>(temporal) / static_cast<double>(b.soc);
  }
  return b;
}

/// Cost accounting straight from trajectories: arrival tick per agent, move
/// steps as the spatial term, waits before arrival as the temporal term.
inline CostBreakdown soc_breakdown(const std::vector<Trajectory>& trajectories) {
  long spatial = 0;
  long temporal = 0;
  for (const Trajectory& traj : trajectories) {
    if (traj.cells.empty()) throw std::invalid_argument("soc_breakdown: empty trajectory");
    for (size_t t = 1; t < traj.cells.size(); ++t) {
      if (traj.cells[t] != traj.cells[t - 1])
        ++spatial;
      else
        ++temporal;
    }
  }
  return make_breakdown(spatial, temporal);
}

/// Same, but cross-checked against the geometric paths that were executed:
/// the spatial term must equal the summed path lengths.
inline CostBreakdown soc_breakdown(const std::vector<Trajectory>& trajectories,
                                   const std::vector<GeometricPath>& paths) {
  const CostBreakdown b = soc_breakdown(trajectories);
  long expected = 0;
  for (const GeometricPath& p : paths) expected += p.length();
  if (b.spatial != expected)
    throw std::logic_error("soc_breakdown: trajectory moves (" + std::to_string(b.spatial) +
                           ") disagree with path lengths (" + std::to_string(expected) + ")");
  return b;
}

class AssumptionViolationError : public std::runtime_error {
 public:
  AssumptionViolationError(const std::string& msg, int agent_id)
      : std::runtime_error(msg), agent_id(agent_id) {}
  int agent_id;
};

/// Cost of executing agents one at a time in priority order: the sum of
/// residual-graph shortest path lengths. An upper bound on the optimum.
inline long sequential_upper_bound(const Instance& instance, const Ordering& ordering) {
  CellMask parked(instance.map.num_cells());
  long total = 0;
  for (int pos = 0; pos < ordering.size(); ++pos) {
    const Agent& agent = detail::agent_by_id(instance, ordering.ids[pos]);
    const int start = instance.map.index(agent.start);
    const int goal = instance.map.index(agent.goal);
    if (parked.test(start) || parked.test(goal))
      throw AssumptionViolationError("sequential_upper_bound: start or goal of agent " +
                                         std::to_string(agent.id) +
                                         " removed by a higher-priority goal",
                                     agent.id);
    const DistField dist = bfs_distances(instance.map, agent.start, &parked);
    if (!dist.reachable(goal))
      throw AssumptionViolationError("sequential_upper_bound: goal of agent " +
                                         std::to_string(agent.id) +
                                         " unreachable in the residual graph",
                                     agent.id);
    total += dist[goal];
    parked.set(goal);
  }
  return total;
}

}  // namespace mapf
