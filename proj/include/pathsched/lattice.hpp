#pragma once

#include <vector>

#include "pathsched/partition.hpp"

namespace pathsched {

struct LatticeSpec {
    int rows = 0, cols = 0;

    int vertex_count() const { return rows * cols; }
    int vertex_at(int row, int col) const { return (row - 1) * cols + col; }  // 1-based
};

enum class SnakeOrientation { top_left_right_first, top_right_left_first };

/// Hamiltonian cell order snaking row by row in alternating directions.
struct SnakeMap {
    SnakeOrientation orientation = SnakeOrientation::top_left_right_first;
    std::vector<int> order;    // order[p-1] = cell at path position p
    std::vector<int> inverse;  // inverse[cell] = path position (index 0 unused)
};

SnakeMap snake_path(const LatticeSpec& spec, SnakeOrientation orientation);

/// The lattice instance rewritten over the snake's path positions. Robots are
/// re-indexed by mapped position (the partition DP wants sorted starts);
/// robot_order[i] gives the original robot of path-robot i+1, and the dp's
/// own task ordering handles tasks.
struct FlattenedInstance {
    Instance path_instance;
    SnakeMap snake;
    std::vector<int> robot_order;  // path robot index -> original robot index (0-based)
};

FlattenedInstance flatten_instance(const Instance& lattice_inst, const SnakeMap& snake);

struct LatticeResult {
    SnakeOrientation orientation = SnakeOrientation::top_left_right_first;
    long long dp_value = 0;
    int executed_makespan = 0;
    bool discrepancy = false;
    ScheduleSet schedules;                         // on the lattice, original robot order
    std::vector<std::vector<int>> tasks_by_robot;  // original robot -> original task indices
};

/// Flattens along both snake orientations, solves each with the partition
/// heuristic, keeps the smaller executed makespan (ties to top-left) and lifts
/// the traces back to lattice cells.
LatticeResult solve_lattice_via_partition(const Instance& lattice_inst);

}  // namespace pathsched
