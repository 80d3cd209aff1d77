#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pathsched/instance.hpp"

namespace pathsched {

/// One robot's occupied vertex per timestep; positions[0] is timestep 1.
/// Consecutive positions must be equal (a stay) or adjacent in the graph.
struct Trace {
    std::vector<int> positions;

    int horizon() const { return (int)positions.size(); }
    int at_time(int t) const { return positions[t - 1]; }  // t is 1-based
};

/// One trace per robot, all sharing the same horizon.
struct ScheduleSet {
    std::vector<Trace> traces;

    int robot_count() const { return (int)traces.size(); }
    int horizon() const { return traces.empty() ? 0 : traces.front().horizon(); }
};

enum class CollisionKind { vertex, edge_swap };

struct Collision {
    int timestep = 0;  // for a swap, the timestep the robots arrive on
    int robot_a = 0, robot_b = 0;
    CollisionKind kind = CollisionKind::vertex;
};

/// Earliest violation (two robots on one vertex, or a head-on swap across one
/// edge), or nullopt when the set is collision-free. Per timestep, vertex
/// conflicts are reported before swaps, lower robot pairs first.
/// Throws input_error on structurally malformed traces (empty, unequal
/// horizons, out-of-range or non-adjacent consecutive positions); that is a
/// distinct condition from a collision.
std::optional<Collision> find_collision(const ScheduleSet& set, const Graph& graph);

inline bool is_collision_free(const ScheduleSet& set, const Graph& graph) {
    return !find_collision(set, graph).has_value();
}

/// Earliest completion timestep per task, or nullopt for tasks never finished
/// within the horizon. Task i is complete at the earliest timestep t such that
/// one single robot occupies its vertex at every timestep in [t - d_i, t].
std::vector<std::optional<int>> completion_profile(const ScheduleSet& set, const Instance& inst);

/// First timestep at which every task is complete, minus one (timestep 1 holds
/// the initial placement). nullopt if any task is unfinished. Zero tasks -> 0.
std::optional<int> makespan(const ScheduleSet& set, const Instance& inst);

/// Copy with every trace extended by trailing stays up to `horizon`.
ScheduleSet padded_to(const ScheduleSet& set, int horizon);

/// CSV with columns timestep,robot,vertex (timestep-major). `meta` lines, if
/// any, are emitted first as '#' comments.
std::string traces_to_csv(const ScheduleSet& set, const std::vector<std::string>& meta = {});
ScheduleSet traces_from_csv(const std::string& text);

}  // namespace pathsched
