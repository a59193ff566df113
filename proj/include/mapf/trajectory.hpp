#pragma once

#include <vector>

#include "mapf/grid_map.hpp"

namespace mapf {

/// Timed position sequence. Positions are stored up to the arrival tick;
/// the agent parks at its goal from then on, which at(t) extrapolates.
struct Trajectory {
  int agent_id = 0;
  std::vector<int> cells;

  long arrival() const { return static_cast<long>(cells.size()) - 1; }

  int at(long t) const {
    if (t >= static_cast<long>(cells.size())) return cells.back();
    return cells[t];
  }
};

}  // namespace mapf
