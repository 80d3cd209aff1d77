#include "pathsched/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "pathsched/util.hpp"

namespace pathsched {

SnakeMap snake_path(const LatticeSpec& spec, SnakeOrientation orientation) {
    if (spec.rows < 1 || spec.cols < 1) throw input_error("lattice needs positive dimensions");
    SnakeMap map;
    map.orientation = orientation;
    bool rightward = (orientation == SnakeOrientation::top_left_right_first);
    for (int r = 1; r <= spec.rows; ++r) {
        if (rightward)
            for (int c = 1; c <= spec.cols; ++c) map.order.push_back(spec.vertex_at(r, c));
        else
            for (int c = spec.cols; c >= 1; --c) map.order.push_back(spec.vertex_at(r, c));
        rightward = !rightward;
    }
    map.inverse.assign(spec.vertex_count() + 1, 0);
    for (int p = 1; p <= spec.vertex_count(); ++p) map.inverse[map.order[p - 1]] = p;
    return map;
}

FlattenedInstance flatten_instance(const Instance& lattice_inst, const SnakeMap& snake) {
    if (lattice_inst.kind != GraphKind::lattice) throw input_error("expected a lattice instance");
    const int n = lattice_inst.graph.vertex_count();

    FlattenedInstance flat;
    flat.snake = snake;
    flat.path_instance.graph = make_path_graph(n);
    flat.path_instance.kind = GraphKind::path;

    flat.robot_order.resize(lattice_inst.robot_count());
    std::iota(flat.robot_order.begin(), flat.robot_order.end(), 0);
    std::sort(flat.robot_order.begin(), flat.robot_order.end(), [&](int a, int b) {
        return snake.inverse[lattice_inst.starts[a]] < snake.inverse[lattice_inst.starts[b]];
    });
    for (int r : flat.robot_order)
        flat.path_instance.starts.push_back(snake.inverse[lattice_inst.starts[r]]);

    for (const Task& t : lattice_inst.tasks)
        flat.path_instance.tasks.push_back({snake.inverse[t.vertex], t.duration});
    return flat;
}

namespace {

LatticeResult lift(const Instance& lattice_inst, const FlattenedInstance& flat,
                   const PartitionResult& inner) {
    LatticeResult res;
    res.orientation = flat.snake.orientation;
    res.dp_value = inner.dp_value;
    res.executed_makespan = inner.executed_makespan;
    res.discrepancy = inner.discrepancy;
    res.schedules.traces.resize(lattice_inst.robot_count());
    res.tasks_by_robot.assign(lattice_inst.robot_count(), {});
    for (int pr = 0; pr < (int)flat.robot_order.size(); ++pr) {
        const int orig = flat.robot_order[pr];
        for (int p : inner.schedules.traces[pr].positions)
            res.schedules.traces[orig].positions.push_back(flat.snake.order[p - 1]);
        res.tasks_by_robot[orig] = inner.tasks_by_robot[pr];
    }
    return res;
}

}  // namespace

LatticeResult solve_lattice_via_partition(const Instance& lattice_inst) {
    if (lattice_inst.kind != GraphKind::lattice) throw input_error("expected a lattice instance");
    const LatticeSpec spec{lattice_inst.rows, lattice_inst.cols};

    LatticeResult best;
    bool have = false;
    for (auto orientation :
         {SnakeOrientation::top_left_right_first, SnakeOrientation::top_right_left_first}) {
        FlattenedInstance flat = flatten_instance(lattice_inst, snake_path(spec, orientation));
        PartitionResult inner = solve_partition(flat.path_instance);
        LatticeResult lifted = lift(lattice_inst, flat, inner);
        if (!have || lifted.executed_makespan < best.executed_makespan) {  // ties keep top-left
            best = std::move(lifted);
            have = true;
        }
    }
    return best;
}

}  // namespace pathsched
