#pragma once

#include <span>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "mapf/path.hpp"

namespace mapf {

/// Per-vertex FIFO authorization queues. Entries are priority indices
/// (positions in the planned path set), appended in priority order, so for
/// any vertex the queue order agrees with the global priority ordering.
/// Consumed entries advance a head cursor; the stored sequence is kept
/// intact for inspection.
class QueueTable {
 public:
  QueueTable() = default;
  explicit QueueTable(int num_cells) : queues_(num_cells) {}

  bool empty(int cell) const {
    const VertexQueue& q = queues_[cell];
    return q.head >= q.entries.size();
  }

  /// Priority index at the head, or -1 when the queue is drained.
  int head(int cell) const {
    const VertexQueue& q = queues_[cell];
    return q.head < q.entries.size() ? q.entries[q.head] : -1;
  }

  void pop(int cell) {
    VertexQueue& q = queues_[cell];
    if (q.head >= q.entries.size()) throw std::logic_error("QueueTable::pop on empty queue");
    ++q.head;
  }

  void append(int cell, int priority_index) { queues_[cell].entries.push_back(priority_index); }

  /// Full (unconsumed + consumed) entry sequence for a vertex.
  std::span<const int> entries(int cell) const { return queues_[cell].entries; }

  int num_cells() const { return static_cast<int>(queues_.size()); }

 private:
  struct VertexQueue {
    std::vector<int> entries;
    size_t head = 0;
  };
  std::vector<VertexQueue> queues_;
};

/// Builds the authorization queues: walking the paths in priority order, each
/// visited vertex after the start gets one entry. Paths must be simple;
/// a repeated vertex would leave the head-of-queue rule ambiguous.
inline QueueTable build_queues(const std::vector<GeometricPath>& paths, int num_cells) {
  QueueTable table(num_cells);
  std::unordered_set<int> seen;
  for (size_t i = 0; i < paths.size(); ++i) {
    const GeometricPath& path = paths[i];
    seen.clear();
    for (int cell : path.cells)
      if (!seen.insert(cell).second)
        throw std::invalid_argument("build_queues: path of agent " +
                                    std::to_string(path.agent_id) + " repeats a vertex");
    for (size_t r = 1; r < path.cells.size(); ++r)
      table.append(path.cells[r], static_cast<int>(i));
  }
  return table;
}

}  // namespace mapf
