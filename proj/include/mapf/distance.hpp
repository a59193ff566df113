#pragma once

#include <deque>
#include <stdexcept>
#include <vector>

#include "mapf/grid_map.hpp"

namespace mapf {

inline constexpr int kUnreachable = -1;

/// Unit-cost shortest distances from a single source.
struct DistField {
  int source = 0;
  std::vector<int> dist;

  bool reachable(int cell) const { return dist[cell] >= 0; }
  int operator[](int cell) const { return dist[cell]; }
};

/// BFS over the passable grid, with an optional set of removed vertices.
inline DistField bfs_distances(const GridMap& map, Vertex source,
                               const CellMask* blocked = nullptr) {
  if (!map.passable(source))
    throw std::invalid_argument("bfs_distances: source out of bounds or impassable");
  const int src = map.index(source);
  if (blocked && blocked->test(src))
    throw std::invalid_argument("bfs_distances: source is blocked");

  DistField field;
  field.source = src;
  field.dist.assign(map.num_cells(), kUnreachable);
  field.dist[src] = 0;

  std::deque<int> queue{src};
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    const int d = field.dist[cur];
    map.for_each_neighbor(cur, [&](int next) {
      if (field.dist[next] != kUnreachable) return;
      if (blocked && blocked->test(next)) return;
      field.dist[next] = d + 1;
      queue.push_back(next);
    });
  }
  return field;
}

}  // namespace mapf
