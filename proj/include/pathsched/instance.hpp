#pragma once

#include <string>
#include <vector>

#include "pathsched/graph.hpp"

namespace pathsched {

/// A task: the vertex to service and how many consecutive work steps it needs.
/// A robot completes a task by occupying the vertex for duration+1 consecutive
/// timesteps; the first occupancy is the arrival (or the initial placement) and
/// contributes no work.
struct Task {
    int vertex = 0;
    int duration = 0;

    bool operator==(const Task&) const = default;
};

enum class GraphKind { general, path, lattice };

struct Instance {
    Graph graph;
    std::vector<int> starts;  // start vertex per robot, 1-based ids
    std::vector<Task> tasks;
    GraphKind kind = GraphKind::general;
    int rows = 0, cols = 0;  // set when kind == lattice

    int robot_count() const { return (int)starts.size(); }
    int task_count() const { return (int)tasks.size(); }
};

/// Collects every invariant violation (duplicate starts, duplicate task
/// vertices, out-of-range ids, non-positive durations, unsorted path starts).
/// Empty result means the instance is well-formed.
std::vector<std::string> validate_instance(const Instance& inst);

/// Instance file dialect:
///   {"graph": {"n": 4, "edges": [[1,2],...]} | {"path": 6} | {"lattice": [3,3]},
///    "starts": [1,6], "tasks": [[2,1],[5,3]]}
Instance parse_instance_json(const std::string& text);
Instance load_instance_json(const std::string& path);
std::string instance_to_json(const Instance& inst);

}  // namespace pathsched
