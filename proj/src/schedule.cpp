#include "pathsched/schedule.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "pathsched/util.hpp"

namespace pathsched {

static void check_wellformed(const ScheduleSet& set, const Graph& graph) {
    if (set.traces.empty()) throw input_error("schedule set has no traces");
    const int h = set.horizon();
    if (h == 0) throw input_error("trace has zero horizon");
    for (int r = 0; r < set.robot_count(); ++r) {
        const auto& pos = set.traces[r].positions;
        if ((int)pos.size() != h) throw input_error("traces have unequal horizons");
        for (int i = 0; i < h; ++i) {
            if (pos[i] < 1 || pos[i] > graph.vertex_count())
                throw input_error("trace position out of range");
            if (i > 0 && pos[i] != pos[i - 1] && !graph.adjacent(pos[i], pos[i - 1]))
                throw input_error("trace moves between non-adjacent vertices");
        }
    }
}

std::optional<Collision> find_collision(const ScheduleSet& set, const Graph& graph) {
    check_wellformed(set, graph);
    const int k = set.robot_count();
    const int h = set.horizon();
    for (int t = 1; t <= h; ++t) {
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
                if (set.traces[a].at_time(t) == set.traces[b].at_time(t))
                    return Collision{t, a + 1, b + 1, CollisionKind::vertex};
        if (t > 1)
            for (int a = 0; a < k; ++a)
                for (int b = a + 1; b < k; ++b) {
                    int au = set.traces[a].at_time(t - 1), av = set.traces[a].at_time(t);
                    int bu = set.traces[b].at_time(t - 1), bv = set.traces[b].at_time(t);
                    if (au != av && au == bv && av == bu)
                        return Collision{t, a + 1, b + 1, CollisionKind::edge_swap};
                }
    }
    return std::nullopt;
}

std::vector<std::optional<int>> completion_profile(const ScheduleSet& set, const Instance& inst) {
    const int h = set.horizon();
    std::vector<std::optional<int>> done(inst.task_count());
    for (int i = 0; i < inst.task_count(); ++i) {
        const int v = inst.tasks[i].vertex;
        const int d = inst.tasks[i].duration;
        for (int r = 0; r < set.robot_count(); ++r) {
            const auto& pos = set.traces[r].positions;
            int streak = 0;
            for (int t = 1; t <= h; ++t) {
                streak = (pos[t - 1] == v) ? streak + 1 : 0;
                if (streak >= d + 1) {
                    if (!done[i] || t < *done[i]) done[i] = t;
                    break;  // earliest for this robot
                }
            }
        }
    }
    return done;
}

std::optional<int> makespan(const ScheduleSet& set, const Instance& inst) {
    auto profile = completion_profile(set, inst);
    int all_done = 1;
    for (const auto& t : profile) {
        if (!t) return std::nullopt;
        all_done = std::max(all_done, *t);
    }
    return all_done - 1;
}

ScheduleSet padded_to(const ScheduleSet& set, int horizon) {
    ScheduleSet out = set;
    for (auto& tr : out.traces)
        while (tr.horizon() < horizon) tr.positions.push_back(tr.positions.back());
    return out;
}

std::string traces_to_csv(const ScheduleSet& set, const std::vector<std::string>& meta) {
    std::ostringstream out;
    for (const auto& line : meta) out << "# " << line << "\n";
    out << "timestep,robot,vertex\n";
    for (int t = 1; t <= set.horizon(); ++t)
        for (int r = 1; r <= set.robot_count(); ++r)
            out << t << ',' << r << ',' << set.traces[r - 1].at_time(t) << "\n";
    return out.str();
}

ScheduleSet traces_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::map<int, std::map<int, int>> by_robot;  // robot -> timestep -> vertex
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {  // skip the column header
            header_seen = true;
            continue;
        }
        int t, r, v;
        char c1, c2;
        std::istringstream row(line);
        if (!(row >> t >> c1 >> r >> c2 >> v) || c1 != ',' || c2 != ',')
            throw input_error("bad trace CSV row: " + line);
        by_robot[r][t] = v;
    }
    if (by_robot.empty()) throw input_error("trace CSV has no rows");
    ScheduleSet set;
    int expected_robot = 1;
    for (const auto& [r, steps] : by_robot) {
        if (r != expected_robot++) throw input_error("trace CSV robot ids are not 1..k");
        Trace tr;
        int expected_t = 1;
        for (const auto& [t, v] : steps) {
            if (t != expected_t++) throw input_error("trace CSV timesteps are not 1..H");
            tr.positions.push_back(v);
        }
        set.traces.push_back(std::move(tr));
    }
    for (const auto& tr : set.traces)
        if (tr.horizon() != set.horizon()) throw input_error("trace CSV horizons differ");
    return set;
}

}  // namespace pathsched
