#pragma once

#include <vector>

#include "pathsched/schedule.hpp"

namespace pathsched {

enum class SweepDirection { left_first, right_first, best };

/// Closed-form minimum time for one robot starting at sv to finish all tasks
/// on a path: min(|sv-i_1|, |sv-i_m|) + i_m - i_1 + sum of durations.
/// Tasks must be sorted by vertex ascending (input_error otherwise); an empty
/// task set costs 0.
int single_robot_span(const std::vector<Task>& tasks_sorted, int sv);

/// Sweep trace realizing the span: walk to the near end of the task interval,
/// then traverse it, pausing duration steps at each task vertex. `best` picks
/// the cheaper direction, ties to left_first.
Trace single_robot_schedule(const std::vector<Task>& tasks_sorted, int sv, SweepDirection dir);

/// S[c, l] = fastest schedule for the leftmost c robots covering the leftmost
/// l tasks, split as: robots 1..c-1 take tasks 1..r, robot c takes r+1..l.
/// splits records the minimizing r per cell (smallest r on ties).
struct DPTable {
    int robots = 0, tasks = 0;
    std::vector<long long> values;  // (robots+1) x (tasks+1), row 0 virtual
    std::vector<int> splits;

    long long value(int c, int l) const { return values[c * (tasks + 1) + l]; }
    int split(int c, int l) const { return splits[c * (tasks + 1) + l]; }
};

/// Fills the table over r in [0, l]: the recurrence extended with the empty
/// left group, without which robot 1 is pinned to task 1 and the heuristic
/// loses both its equal-duration optimality and its k-approximation bound
/// (a single far task with two robots already breaks it).
/// Requires a path instance with sorted starts; tasks are handled in vertex
/// order (sorted_tasks/sorted_to_original expose the ordering used).
struct PartitionDP {
    DPTable table;
    std::vector<Task> sorted_tasks;
    std::vector<int> sorted_to_original;  // sorted index -> original task index
};
PartitionDP partition_dp(const Instance& inst);

/// Inclusive 1-based range over the sorted task order; empty when lo > hi.
struct TaskRange {
    int lo = 1, hi = 0;
    bool empty() const { return lo > hi; }
};

struct PartitionResult {
    long long dp_value = 0;
    std::vector<TaskRange> assignment;           // per robot, sorted-task ranges
    std::vector<std::vector<int>> tasks_by_robot;  // per robot, original task indices (0-based)
    ScheduleSet schedules;
    int executed_makespan = 0;
    bool discrepancy = false;  // executed makespan exceeded the table value
};

/// Picks a contiguous assignment among the table's minimizing splits, builds
/// each robot's sweep and resolves conflicts by waiting: in any contention
/// the lower-index robot yields, and nobody may displace a robot that is
/// staying put. Tied splits are tried smallest-r first and the first one
/// whose simulation completes wins; a packed path can make individual tied
/// splits unrealizable. The result always validates collision-free; an
/// executed makespan above S[k, m] is surfaced via `discrepancy`, never
/// silently accepted.
PartitionResult build_partition_schedules(const Instance& inst, const PartitionDP& dp);

PartitionResult solve_partition(const Instance& inst);

}  // namespace pathsched
