#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <stdexcept>
#include <vector>

#include "mapf/instance.hpp"

namespace mapf {

struct OracleLimits {
  int max_free_cells = 14;
  int max_agents = 3;
  long max_soc = 400;
};

struct OracleResult {
  bool feasible = false;
  long optimal_soc = 0;
  long explored_states = 0;
};

/// Exhaustive minimum sum-of-costs search over joint configurations, for tiny
/// instances only. Each tick every unparked agent moves or waits (cost 1);
/// an agent standing on its goal may park, which freezes it there for free.
/// Vertex and edge-swap conflicts are rejected, with parked agents acting as
/// permanent obstacles. Dijkstra over (positions, parked set) is exact.
class JointSearch {
 public:
  JointSearch(const Instance& instance, const OracleLimits& limits)
      : map_(instance.map), limits_(limits) {
    free_cells_ = map_.passable_cells();
    num_free_ = static_cast<int>(free_cells_.size());
    if (num_free_ > limits.max_free_cells)
      throw std::invalid_argument("brute_force_optimal: map has " + std::to_string(num_free_) +
                                  " free cells, limit is " +
                                  std::to_string(limits.max_free_cells));
    k_ = instance.num_agents();
    if (k_ > limits.max_agents)
      throw std::invalid_argument("brute_force_optimal: " + std::to_string(k_) +
                                  " agents, limit is " + std::to_string(limits.max_agents));

    cell_to_slot_.assign(map_.num_cells(), -1);
    for (int s = 0; s < num_free_; ++s) cell_to_slot_[free_cells_[s]] = s;
    // Wait in place first, then the fixed neighbor order.
    moves_.resize(num_free_);
    for (int s = 0; s < num_free_; ++s) {
      moves_[s].push_back(s);
      map_.for_each_neighbor(free_cells_[s],
                             [&](int cell) { moves_[s].push_back(cell_to_slot_[cell]); });
    }
    for (const Agent& a : instance.agents) {
      start_.push_back(cell_to_slot_[map_.index(a.start)]);
      goal_.push_back(cell_to_slot_[map_.index(a.goal)]);
    }
  }

  OracleResult run() {
    OracleResult result;
    std::map<uint64_t, long> best;
    using Item = std::pair<long, uint64_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> open;

    // Agents already standing on their goals may park before the first tick.
    for (uint64_t parked = 0; parked < (1ull << k_); ++parked) {
      bool legal = true;
      for (int i = 0; i < k_; ++i)
        if ((parked >> i & 1) && start_[i] != goal_[i]) legal = false;
      if (!legal) continue;
      const uint64_t state = encode(start_, parked);
      best[state] = 0;
      open.push({0, state});
    }

    std::vector<int> pos(k_), next(k_);
    while (!open.empty()) {
      const auto [cost, state] = open.top();
      open.pop();
      auto it = best.find(state);
      if (it != best.end() && it->second < cost) continue;  // stale
      ++result.explored_states;

      uint64_t parked = decode(state, pos);
      if (parked == (1ull << k_) - 1) {
        result.feasible = true;
        result.optimal_soc = cost;
        return result;
      }
      int unparked = 0;
      for (int i = 0; i < k_; ++i) unparked += !(parked >> i & 1);
      const long next_cost = cost + unparked;
      if (next_cost > limits_.max_soc) continue;

      expand(0, pos, next, parked, next_cost, best, open);
    }
    result.feasible = false;
    return result;
  }

 private:
  uint64_t encode(const std::vector<int>& pos, uint64_t parked) const {
    const uint64_t base = std::max(num_free_, 2);
    uint64_t key = parked;
    for (int i = 0; i < k_; ++i) key = key * base + static_cast<uint64_t>(pos[i]);
    return key;
  }

  uint64_t decode(uint64_t key, std::vector<int>& pos) const {
    const uint64_t base = std::max(num_free_, 2);
    for (int i = k_ - 1; i >= 0; --i) {
      pos[i] = static_cast<int>(key % base);
      key /= base;
    }
    return key;
  }

  // Enumerates joint moves agent by agent, pruning conflicts incrementally.
  void expand(int agent, std::vector<int>& pos, std::vector<int>& next, uint64_t parked,
              long next_cost, std::map<uint64_t, long>& best,
              std::priority_queue<std::pair<long, uint64_t>,
                                  std::vector<std::pair<long, uint64_t>>,
                                  std::greater<std::pair<long, uint64_t>>>& open) {
    if (agent == k_) {
      // Parking choices for agents that ended the tick on their goals.
      std::vector<int> candidates;
      for (int i = 0; i < k_; ++i)
        if (!(parked >> i & 1) && next[i] == goal_[i]) candidates.push_back(i);
      const int m = static_cast<int>(candidates.size());
      for (uint64_t sub = 0; sub < (1ull << m); ++sub) {
        uint64_t new_parked = parked;
        for (int b = 0; b < m; ++b)
          if (sub >> b & 1) new_parked |= 1ull << candidates[b];
        const uint64_t state = encode(next, new_parked);
        auto it = best.find(state);
        if (it == best.end() || next_cost < it->second) {
          best[state] = next_cost;
          open.push({next_cost, state});
        }
      }
      return;
    }
    if (parked >> agent & 1) {
      next[agent] = pos[agent];
      if (conflicts(agent, pos, next)) return;
      expand(agent + 1, pos, next, parked, next_cost, best, open);
      return;
    }
    for (int slot : moves_[pos[agent]]) {
      next[agent] = slot;
      if (conflicts(agent, pos, next)) continue;
      expand(agent + 1, pos, next, parked, next_cost, best, open);
    }
  }

  bool conflicts(int agent, const std::vector<int>& pos, const std::vector<int>& next) const {
    for (int j = 0; j < agent; ++j) {
      if (next[j] == next[agent]) return true;  // vertex
      if (next[j] == pos[agent] && next[agent] == pos[j] && pos[j] != pos[agent])
        return true;  // swap
    }
    return false;
  }

  const GridMap& map_;
  OracleLimits limits_;
  std::vector<int> free_cells_;
  std::vector<int> cell_to_slot_;
  std::vector<std::vector<int>> moves_;
  std::vector<int> start_, goal_;
  int num_free_ = 0;
  int k_ = 0;
};

inline OracleResult brute_force_optimal(const Instance& instance, const OracleLimits& limits = {}) {
  return JointSearch(instance, limits).run();
}

}  // namespace mapf
