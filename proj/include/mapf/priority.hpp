#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mapf/distance.hpp"
#include "mapf/instance.hpp"
#include "mapf/rng.hpp"

namespace mapf {

enum class Policy { spf, lpf, cf, cl, random };

inline const char* policy_name(Policy p) {
  switch (p) {
    case Policy::spf: return "spf";
    case Policy::lpf: return "lpf";
    case Policy::cf: return "cf";
    case Policy::cl: return "cl";
    case Policy::random: return "random";
  }
  return "?";
}

inline Policy parse_policy(const std::string& name) {
  if (name == "spf") return Policy::spf;
  if (name == "lpf") return Policy::lpf;
  if (name == "cf") return Policy::cf;
  if (name == "cl") return Policy::cl;
  if (name == "random") return Policy::random;
  throw std::invalid_argument("unknown policy \"" + name + "\"");
}

/// All vertices lying on some shortest s->g path:
/// { v : dist(s,v) + dist(v,g) = dist(s,g) }. Sorted by cell index.
inline std::vector<int> corridor(const GridMap& map, Vertex s, Vertex g) {
  const DistField from_start = bfs_distances(map, s);
  const int goal = map.index(g);
  if (!from_start.reachable(goal))
    throw std::runtime_error("corridor: goal (" + std::to_string(g.row) + "," +
                             std::to_string(g.col) + ") unreachable from start (" +
                             std::to_string(s.row) + "," + std::to_string(s.col) + ")");
  const DistField from_goal = bfs_distances(map, g);
  const int d = from_start[goal];

  std::vector<int> cells;
  for (int c = 0; c < map.num_cells(); ++c)
    if (from_start.reachable(c) && from_goal.reachable(c) && from_start[c] + from_goal[c] == d)
      cells.push_back(c);
  return cells;
}

/// Conflict score per agent: how many times its shortest-path corridor is
/// shared with other agents' corridors, counted cell by cell.
inline std::vector<int64_t> conflict_scores(const Instance& instance) {
  const int k = instance.num_agents();
  std::vector<std::vector<int>> corridors(k);
  std::vector<int> occupancy(instance.map.num_cells(), 0);
  for (int i = 0; i < k; ++i) {
    corridors[i] = corridor(instance.map, instance.agents[i].start, instance.agents[i].goal);
    for (int cell : corridors[i]) ++occupancy[cell];
  }
  std::vector<int64_t> scores(k, 0);
  for (int i = 0; i < k; ++i)
    for (int cell : corridors[i]) scores[i] += occupancy[cell] - 1;
  return scores;
}

/// Orders agents by the policy key; ties (and the random policy) are resolved
/// by a shuffle seeded from (seed, policy name), so different policies stay
/// comparable on the same instance.
inline Ordering order(const Instance& instance, Policy policy, uint64_t seed) {
  const int k = instance.num_agents();
  std::vector<int> slots(k);
  for (int i = 0; i < k; ++i) slots[i] = i;

  Rng rng(seed ^ fnv1a64(policy_name(policy)));
  rng.shuffle(slots);

  if (policy != Policy::random) {
    std::vector<int64_t> key(k, 0);
    if (policy == Policy::spf || policy == Policy::lpf) {
      for (int i = 0; i < k; ++i) {
        const Agent& a = instance.agents[i];
        const DistField dist = bfs_distances(instance.map, a.start);
        const int goal = instance.map.index(a.goal);
        if (!dist.reachable(goal))
          throw std::runtime_error("order: goal of agent " + std::to_string(a.id) +
                                   " unreachable");
        key[i] = dist[goal];
      }
    } else {
      key = conflict_scores(instance);
    }
    const bool descending = policy == Policy::lpf || policy == Policy::cf;
    std::stable_sort(slots.begin(), slots.end(), [&](int a, int b) {
      return descending ? key[a] > key[b] : key[a] < key[b];
    });
  }

  Ordering result;
  result.ids.reserve(k);
  for (int slot : slots) result.ids.push_back(instance.agents[slot].id);
  return result;
}

}  // namespace mapf
