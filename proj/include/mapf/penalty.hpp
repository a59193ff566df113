#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "mapf/grid_map.hpp"
#include "mapf/path.hpp"

namespace mapf {

/// Index of the first visit of `cell` along the path, 0 if the path never
/// visits it (the start therefore contributes nothing).
inline int first_visit_index(const GeometricPath& path, int cell) {
  for (size_t r = 0; r < path.cells.size(); ++r)
    if (path.cells[r] == cell) return static_cast<int>(r);
  return 0;
}

/// Per-vertex penalty accumulator: the sum of first-visit indices of every
/// already-planned path over that vertex.
class PenaltyField {
 public:
  PenaltyField() = default;
  explicit PenaltyField(int num_cells) : penalty_(num_cells, 0) {}
  explicit PenaltyField(std::vector<int64_t> values) : penalty_(std::move(values)) {}

  int64_t at(int cell) const { return penalty_[cell]; }
  int size() const { return static_cast<int>(penalty_.size()); }

  /// Adds the path's footprint. Each distinct vertex gains its first-visit index.
  void add_path(const GeometricPath& path) {
    std::unordered_set<int> seen;
    seen.reserve(path.cells.size() * 2);
    for (size_t r = 0; r < path.cells.size(); ++r)
      if (seen.insert(path.cells[r]).second) penalty_[path.cells[r]] += static_cast<int64_t>(r);
  }

 private:
  std::vector<int64_t> penalty_;
};

inline PenaltyField accumulate_penalties(PenaltyField field, const GeometricPath& path) {
  field.add_path(path);
  return field;
}

/// Inflated cost of traversing edge (u, v): unit base cost plus the weighted
/// penalty of the entered vertex. Penalties attach to vertex entry only.
inline double entry_cost(const GridMap& map, const PenaltyField& field, double penalty_weight,
                         Vertex u, Vertex v) {
  if (!map.passable(u) || !map.passable(v))
    throw std::invalid_argument("entry_cost: endpoint out of bounds or impassable");
  if (!GridMap::adjacent(u, v)) throw std::invalid_argument("entry_cost: vertices not adjacent");
  return 1.0 + penalty_weight * static_cast<double>(field.at(map.index(v)));
}

}  // namespace mapf
