#pragma once

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include <doctest.h>

#include "pathsched/instance.hpp"
#include "pathsched/schedule.hpp"

namespace pathsched::testutil {

inline int draw(std::mt19937_64& rng, int lo, int hi) {
    return lo + (int)(rng() % (std::uint64_t)(hi - lo + 1));
}

inline std::vector<int> draw_distinct(std::mt19937_64& rng, int count, int n) {
    REQUIRE(count <= n);
    std::set<int> picked;
    while ((int)picked.size() < count) picked.insert(draw(rng, 1, n));
    return {picked.begin(), picked.end()};
}

/// Random connected graph: random spanning tree plus a few extra edges.
inline Graph random_connected_graph(std::mt19937_64& rng, int n, int extra_edges) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 2; v <= n; ++v) edges.emplace_back(draw(rng, 1, v - 1), v);
    for (int e = 0; e < extra_edges; ++e) {
        int u = draw(rng, 1, n), v = draw(rng, 1, n);
        if (u != v) edges.emplace_back(u, v);
    }
    return Graph(n, std::move(edges));
}

inline Instance random_path_instance(std::mt19937_64& rng, int n, int k, int m, int dmax) {
    Instance inst;
    inst.graph = make_path_graph(n);
    inst.kind = GraphKind::path;
    inst.starts = draw_distinct(rng, k, n);
    for (int v : draw_distinct(rng, m, n)) inst.tasks.push_back({v, draw(rng, 1, dmax)});
    return inst;
}

/// Brute-force single-robot optimum: breadth-first enumeration over
/// (vertex, done set, consecutive-stay count) tuples, independent of both the
/// closed-form span and the joint-state solver. Returns -1 if unreachable.
inline int brute_single_robot(const Instance& inst) {
    const int n = inst.graph.vertex_count();
    const int m = inst.task_count();
    const int full = (1 << m) - 1;
    int max_d = 1;
    for (const Task& t : inst.tasks) max_d = std::max(max_d, t.duration);
    std::vector<int> task_at(n + 1, -1);
    for (int i = 0; i < m; ++i) task_at[inst.tasks[i].vertex] = i;

    auto step = [&](int v, int from, int streak_in, int mask, int& streak_out) {
        int task = task_at[v];
        streak_out = 0;
        if (task >= 0 && !((mask >> task) & 1)) {
            streak_out = (v == from) ? streak_in + 1 : 1;
            if (streak_out == inst.tasks[task].duration + 1) {
                mask |= 1 << task;
                streak_out = 0;
            }
        }
        return mask;
    };

    // state id = ((v * 2^m) + mask) * (max_d+1) + streak
    const int strides = max_d + 1;
    std::vector<int> dist((n + 1) * (full + 1) * strides, -1);
    auto id = [&](int v, int mask, int streak) { return (v * (full + 1) + mask) * strides + streak; };

    int s0;
    int mask0 = step(inst.starts[0], 0, 0, 0, s0);
    std::vector<int> queue{id(inst.starts[0], mask0, s0)};
    dist[queue[0]] = 0;
    for (size_t head = 0; head < queue.size(); ++head) {
        int cur = queue[head];
        int streak = cur % strides;
        int mask = (cur / strides) % (full + 1);
        int v = cur / (strides * (full + 1));
        if (mask == full) return dist[cur];
        std::vector<int> moves{v};
        for (int u : inst.graph.neighbors(v)) moves.push_back(u);
        for (int u : moves) {
            int ns;
            int nm = step(u, v, streak, mask, ns);
            int nid = id(u, nm, ns);
            if (dist[nid] < 0) {
                dist[nid] = dist[cur] + 1;
                queue.push_back(nid);
            }
        }
    }
    return -1;
}

/// Literal enumeration of every single-robot trace up to `horizon` timesteps;
/// returns the smallest makespan among completing traces, -1 if none.
inline int enumerate_single_robot_traces(const Instance& inst, int horizon) {
    int best = -1;
    std::vector<int> trace{inst.starts[0]};
    auto completes_at = [&]() -> int {
        ScheduleSet set;
        set.traces.push_back({trace});
        auto ms = makespan(set, inst);
        return ms ? *ms : -1;
    };
    auto rec = [&](auto&& self) -> void {
        int ms = completes_at();
        if (ms >= 0 && (best < 0 || ms < best)) best = ms;
        if ((int)trace.size() >= horizon) return;
        int v = trace.back();
        std::vector<int> moves{v};
        for (int u : inst.graph.neighbors(v)) moves.push_back(u);
        for (int u : moves) {
            trace.push_back(u);
            self(self);
            trace.pop_back();
        }
    };
    rec(rec);
    return best;
}

}  // namespace pathsched::testutil
