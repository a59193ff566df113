#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "mapf/distance.hpp"
#include "mapf/grid_map.hpp"
#include "mapf/rng.hpp"

namespace mapf {

struct Agent {
  int id = 0;
  Vertex start;
  Vertex goal;
};

/// A map plus k agents. Starts are pairwise distinct, goals are pairwise
/// distinct; start == goal for a single agent is allowed (empty path).
struct Instance {
  GridMap map;
  std::vector<Agent> agents;

  int num_agents() const { return static_cast<int>(agents.size()); }
};

/// Priority permutation: ids[p] is the agent planned at priority position p.
struct Ordering {
  std::vector<int> ids;

  int size() const { return static_cast<int>(ids.size()); }
};

inline Ordering identity_ordering(const Instance& instance) {
  Ordering order;
  order.ids.resize(instance.agents.size());
  for (size_t i = 0; i < instance.agents.size(); ++i) order.ids[i] = instance.agents[i].id;
  return order;
}

class InfeasibleInstanceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Checks the structural invariants; throws std::invalid_argument on violation.
inline void validate_instance(const Instance& instance) {
  std::unordered_set<int> starts, goals;
  for (const Agent& a : instance.agents) {
    if (!instance.map.passable(a.start))
      throw std::invalid_argument("agent " + std::to_string(a.id) + ": start not passable");
    if (!instance.map.passable(a.goal))
      throw std::invalid_argument("agent " + std::to_string(a.id) + ": goal not passable");
    if (!starts.insert(instance.map.index(a.start)).second)
      throw std::invalid_argument("agent " + std::to_string(a.id) + ": duplicate start");
    if (!goals.insert(instance.map.index(a.goal)).second)
      throw std::invalid_argument("agent " + std::to_string(a.id) + ": duplicate goal");
  }
}

/// Samples k pairwise-distinct starts and k pairwise-distinct goals uniformly
/// from the passable cells. Deterministic for a fixed (map, k, seed).
inline Instance generate_instance(const GridMap& map, int k, uint64_t seed) {
  if (k <= 0) throw std::invalid_argument("generate_instance: k must be positive");
  std::vector<int> cells = map.passable_cells();
  if (static_cast<int>(cells.size()) < k)
    throw InfeasibleInstanceError("generate_instance: k=" + std::to_string(k) + " exceeds " +
                                  std::to_string(cells.size()) + " passable cells");

  Rng rng(seed);
  auto sample = [&](std::vector<int> pool) {
    // Partial Fisher-Yates: the first k slots end up as a uniform k-subset.
    for (int i = 0; i < k; ++i) {
      const size_t j = i + static_cast<size_t>(rng.next_below(pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    return pool;
  };
  const std::vector<int> starts = sample(cells);
  const std::vector<int> goals = sample(cells);

  Instance instance;
  instance.map = map;
  instance.agents.reserve(k);
  for (int i = 0; i < k; ++i)
    instance.agents.push_back(Agent{i, map.vertex(starts[i]), map.vertex(goals[i])});
  return instance;
}

struct ReachabilityReport {
  bool holds = true;
  int failing_agent = -1;  // agent id, -1 when holds
};

namespace detail {

inline const Agent& agent_by_id(const Instance& instance, int id) {
  for (const Agent& a : instance.agents)
    if (a.id == id) return a;
  throw std::invalid_argument("unknown agent id " + std::to_string(id));
}

}  // namespace detail

/// Residual reachability: walking the ordering, each agent must have its
/// start and goal outside the already-parked goal set and its goal reachable
/// with those goals removed. Reports the first violation.
inline ReachabilityReport check_residual_reachability(const Instance& instance,
                                                      const Ordering& ordering) {
  CellMask parked(instance.map.num_cells());
  for (int pos = 0; pos < ordering.size(); ++pos) {
    const Agent& agent = detail::agent_by_id(instance, ordering.ids[pos]);
    const int start = instance.map.index(agent.start);
    const int goal = instance.map.index(agent.goal);
    if (parked.test(start) || parked.test(goal)) return {false, agent.id};
    const DistField dist = bfs_distances(instance.map, agent.start, &parked);
    if (!dist.reachable(goal)) return {false, agent.id};
    parked.set(goal);
  }
  return {true, -1};
}

/// Well-formedness: every agent can reach its goal avoiding all other agents'
/// starts and goals. A stronger, ordering-free condition.
inline ReachabilityReport check_well_formed(const Instance& instance) {
  for (const Agent& agent : instance.agents) {
    CellMask blocked(instance.map.num_cells());
    for (const Agent& other : instance.agents) {
      if (other.id == agent.id) continue;
      blocked.set(instance.map.index(other.start));
      blocked.set(instance.map.index(other.goal));
    }
    const int start = instance.map.index(agent.start);
    const int goal = instance.map.index(agent.goal);
    if (blocked.test(start) || blocked.test(goal)) return {false, agent.id};
    const DistField dist = bfs_distances(instance.map, agent.start, &blocked);
    if (!dist.reachable(goal)) return {false, agent.id};
  }
  return {true, -1};
}

}  // namespace mapf
