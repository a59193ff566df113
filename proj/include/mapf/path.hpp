#pragma once

#include <vector>

#include "mapf/grid_map.hpp"

namespace mapf {

/// Time-free path: a vertex sequence from start to goal over grid cells.
/// Length counts edges; a start==goal path has length 0.
struct GeometricPath {
  int agent_id = 0;
  std::vector<int> cells;

  int length() const { return static_cast<int>(cells.size()) - 1; }
  int start() const { return cells.front(); }
  int goal() const { return cells.back(); }
};

}  // namespace mapf
