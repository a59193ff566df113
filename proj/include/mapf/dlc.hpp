#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "mapf/path.hpp"
#include "mapf/queue_table.hpp"
#include "mapf/trajectory.hpp"

namespace mapf {

/// Execution rule variants.
///  - literal: an agent enters its next vertex exactly when it heads that
///    vertex's queue; the authorization is consumed on entry. Faithful to the
///    queue rule as stated, but a blocked occupant can be overlapped.
///  - strict: entry additionally requires the vertex to be unoccupied, and
///    the authorization is held until the visit completes (popped on
///    departure, or immediately on reaching the goal). Collision-free by
///    construction; can deadlock instead.
enum class ExecMode { literal, strict };

inline const char* to_string(ExecMode m) { return m == ExecMode::literal ? "literal" : "strict"; }

inline ExecMode parse_exec_mode(const std::string& name) {
  if (name == "literal") return ExecMode::literal;
  if (name == "strict") return ExecMode::strict;
  throw std::invalid_argument("unknown exec mode \"" + name + "\"");
}

enum class AgentAction { move, wait, park };

struct BlockEdge {
  enum class Reason { queue_head, occupied };
  int agent = -1;    // agent id of the waiting agent
  int blocker = -1;  // agent id holding the queue head / occupying the vertex
  int vertex = -1;   // the contested cell
  Reason reason = Reason::queue_head;
};

struct DeadlockReport {
  long tick = 0;
  std::vector<int> stuck_agents;  // agent ids
  std::vector<BlockEdge> edges;
};

enum class ExecStatus { success, deadlock, tick_limit };

inline const char* to_string(ExecStatus s) {
  switch (s) {
    case ExecStatus::success: return "success";
    case ExecStatus::deadlock: return "deadlock";
    case ExecStatus::tick_limit: return "tick_limit";
  }
  return "?";
}

struct ExecOutcome {
  ExecStatus status = ExecStatus::success;
  std::vector<Trajectory> trajectories;  // populated on success, priority order
  long makespan = 0;
  long total_waits = 0;
  long tick = 0;  // last tick processed
  std::optional<DeadlockReport> deadlock;
};

inline long default_tick_limit(const std::vector<GeometricPath>& paths) {
  long total = 0;
  long longest = 0;
  for (const GeometricPath& p : paths) {
    total += p.length();
    longest = std::max(longest, static_cast<long>(p.length()));
  }
  return 4 * (total + static_cast<long>(paths.size()) * longest);
}

/// Discrete tick loop driving all agents along their paths under the queue
/// rule. Agents are processed in ascending priority order within a tick, so
/// a vertex vacated (or an authorization popped) earlier in the tick is
/// visible to lower-priority agents in the same tick.
class DlcExecution {
 public:
  DlcExecution(std::vector<GeometricPath> paths, QueueTable queues, ExecMode mode)
      : paths_(std::move(paths)), queues_(std::move(queues)), mode_(mode) {
    const int k = static_cast<int>(paths_.size());
    waypoint_.assign(k, 0);
    position_.resize(k);
    waits_.assign(k, 0);
    arrival_.assign(k, 0);
    actions_.assign(k, AgentAction::park);
    trajectories_.resize(k);
    occupant_.assign(queues_.num_cells(), -1);
    for (int i = 0; i < k; ++i) {
      position_[i] = paths_[i].cells.front();
      trajectories_[i].agent_id = paths_[i].agent_id;
      trajectories_[i].cells.push_back(position_[i]);
      if (mode_ == ExecMode::strict) {
        if (occupant_[position_[i]] != -1)
          throw std::invalid_argument("DlcExecution: two agents share a start vertex");
        occupant_[position_[i]] = i;
      }
      if (paths_[i].length() > 0) ++unfinished_;
    }
  }

  bool finished() const { return unfinished_ == 0; }
  long tick() const { return tick_; }
  bool last_tick_progressed() const { return last_progress_; }
  int waypoint_index(int priority_index) const { return waypoint_[priority_index]; }
  int position(int priority_index) const { return position_[priority_index]; }

  /// Advances one tick. Returns per-agent actions in priority order.
  const std::vector<AgentAction>& step() {
    if (finished()) throw std::logic_error("DlcExecution::step: all agents finished");
    ++tick_;
    last_progress_ = false;
    if (mode_ == ExecMode::strict) tick_moves_.clear();

    const int k = static_cast<int>(paths_.size());
    for (int i = 0; i < k; ++i) {
      if (waypoint_[i] == paths_[i].length()) {
        actions_[i] = AgentAction::park;
        continue;
      }
      const int from = position_[i];
      const int to = paths_[i].cells[waypoint_[i] + 1];
      bool authorized = queues_.head(to) == i;
      if (mode_ == ExecMode::strict) authorized = authorized && occupant_[to] == -1;

      if (!authorized) {
        actions_[i] = AgentAction::wait;
        ++waits_[i];
        trajectories_[i].cells.push_back(from);
        continue;
      }

      if (mode_ == ExecMode::literal) {
        queues_.pop(to);
      } else {
        // Strict holds authorizations until the visit completes: leaving a
        // vertex (any waypoint past the start) releases its queue entry.
        if (waypoint_[i] >= 1) {
          if (queues_.head(from) != i)
            throw std::logic_error("DlcExecution: departing agent does not head its own queue");
          queues_.pop(from);
        }
        occupant_[from] = -1;
        occupant_[to] = i;
        check_swap_free(from, to);
      }

      position_[i] = to;
      ++waypoint_[i];
      actions_[i] = AgentAction::move;
      trajectories_[i].cells.push_back(to);
      last_progress_ = true;

      if (waypoint_[i] == paths_[i].length()) {
        // Arrived: the goal entry is consumed at once and the agent parks.
        if (mode_ == ExecMode::strict) {
          if (queues_.head(to) != i)
            throw std::logic_error("DlcExecution: arriving agent does not head the goal queue");
          queues_.pop(to);
        }
        arrival_[i] = tick_;
        --unfinished_;
      }
    }
    return actions_;
  }

  /// Wait-for structure after a stalled tick: which queue head or occupant
  /// blocks each unfinished agent. Returns nothing while progress continues.
  std::optional<DeadlockReport> detect_deadlock() const {
    if (finished() || last_progress_) return std::nullopt;
    DeadlockReport report;
    report.tick = tick_;
    for (size_t i = 0; i < paths_.size(); ++i) {
      if (waypoint_[i] == paths_[i].length()) continue;
      report.stuck_agents.push_back(paths_[i].agent_id);
      const int to = paths_[i].cells[waypoint_[i] + 1];
      BlockEdge edge;
      edge.agent = paths_[i].agent_id;
      edge.vertex = to;
      const int head = queues_.head(to);
      if (head != static_cast<int>(i)) {
        edge.blocker = head >= 0 ? paths_[head].agent_id : -1;
        edge.reason = BlockEdge::Reason::queue_head;
      } else {
        const int occ = occupant_[to];
        edge.blocker = occ >= 0 ? paths_[occ].agent_id : -1;
        edge.reason = BlockEdge::Reason::occupied;
      }
      report.edges.push_back(edge);
    }
    return report;
  }

  ExecOutcome run(long tick_limit) {
    ExecOutcome outcome;
    while (!finished()) {
      step();
      if (!last_progress_ && !finished()) {
        outcome.status = ExecStatus::deadlock;
        outcome.tick = tick_;
        outcome.deadlock = detect_deadlock();
        return outcome;
      }
      if (!finished() && tick_ >= tick_limit) {
        outcome.status = ExecStatus::tick_limit;
        outcome.tick = tick_;
        return outcome;
      }
    }
    outcome.status = ExecStatus::success;
    outcome.tick = tick_;
    outcome.trajectories = trajectories_;
    for (size_t i = 0; i < paths_.size(); ++i) {
      outcome.trajectories[i].cells.resize(arrival_[i] + 1);
      outcome.makespan = std::max(outcome.makespan, arrival_[i]);
      outcome.total_waits += waits_[i];
    }
    return outcome;
  }

 private:
  void check_swap_free(int from, int to) {
    const int64_t n = queues_.num_cells();
    if (tick_moves_.count(static_cast<int64_t>(to) * n + from))
      throw std::logic_error("DlcExecution: edge traversed in both directions in one tick");
    tick_moves_.insert(static_cast<int64_t>(from) * n + to);
  }

  std::vector<GeometricPath> paths_;
  QueueTable queues_;
  ExecMode mode_;
  std::vector<int> waypoint_;
  std::vector<int> position_;
  std::vector<long> waits_;
  std::vector<long> arrival_;
  std::vector<AgentAction> actions_;
  std::vector<Trajectory> trajectories_;
  std::vector<int> occupant_;
  std::unordered_set<int64_t> tick_moves_;
  long tick_ = 0;
  int unfinished_ = 0;
  bool last_progress_ = false;
};

/// Runs the full execution loop over pre-built queues.
inline ExecOutcome execute(const std::vector<GeometricPath>& paths, QueueTable queues,
                           ExecMode mode, long tick_limit) {
  DlcExecution exec(paths, std::move(queues), mode);
  return exec.run(tick_limit);
}

}  // namespace mapf
