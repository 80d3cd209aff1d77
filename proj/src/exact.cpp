#include "pathsched/exact.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pathsched/util.hpp"

namespace pathsched {

Horizon horizon_bound(const Instance& inst) {
    long long tau = (long long)inst.graph.vertex_count() * inst.robot_count();
    for (const Task& t : inst.tasks) tau += t.duration;
    return Horizon{(int)tau};
}

namespace {

/// Joint states are packed into one 64-bit key, low to high:
/// k robot positions, m done bits, k stay streaks. The streak of a robot is
/// the number of consecutive timesteps it has occupied its current vertex
/// while that vertex hosts an incomplete task (arrival included); it never
/// needs to store more than max duration, since reaching d+1 completes the
/// task and resets it.
struct Packing {
    int k = 0, m = 0;
    int pos_bits = 0, streak_bits = 0;
    std::uint64_t pos_mask = 0, streak_mask = 0;
    std::vector<int> task_at;       // vertex -> task index, -1 if none
    std::vector<int> duration_of;   // task index -> duration

    explicit Packing(const Instance& inst) {
        k = inst.robot_count();
        m = inst.task_count();
        int n = inst.graph.vertex_count();
        int max_d = 0;
        task_at.assign(n + 1, -1);
        for (int i = 0; i < m; ++i) {
            task_at[inst.tasks[i].vertex] = i;
            duration_of.push_back(inst.tasks[i].duration);
            max_d = std::max(max_d, inst.tasks[i].duration);
        }
        pos_bits = std::bit_width((unsigned)n);
        streak_bits = std::bit_width((unsigned)max_d);
        int total = k * pos_bits + m + k * streak_bits;
        if (total > 64)
            throw resource_error("joint state does not fit a 64-bit key at this size");
        pos_mask = (1ull << pos_bits) - 1;
        streak_mask = streak_bits ? (1ull << streak_bits) - 1 : 0;
    }

    std::uint64_t encode(const int* pos, std::uint64_t done, const int* streak) const {
        std::uint64_t key = 0;
        int shift = 0;
        for (int r = 0; r < k; ++r, shift += pos_bits) key |= (std::uint64_t)pos[r] << shift;
        key |= done << shift;
        shift += m;
        for (int r = 0; r < k; ++r, shift += streak_bits) key |= (std::uint64_t)streak[r] << shift;
        return key;
    }

    void decode(std::uint64_t key, int* pos, std::uint64_t& done, int* streak) const {
        int shift = 0;
        for (int r = 0; r < k; ++r, shift += pos_bits) pos[r] = (int)((key >> shift) & pos_mask);
        done = (key >> shift) & ((m == 64) ? ~0ull : ((1ull << m) - 1));
        shift += m;
        for (int r = 0; r < k; ++r, shift += streak_bits)
            streak[r] = streak_bits ? (int)((key >> shift) & streak_mask) : 0;
    }

    std::uint64_t full_mask() const { return (m == 64) ? ~0ull : ((1ull << m) - 1); }
};

constexpr int kMaxRobots = 8;

struct Expander {
    const Graph& graph;
    const Packing& pack;

    /// All successor keys of `key`, in deterministic order: per robot the
    /// candidate moves are stay first then neighbors ascending, combined
    /// lexicographically with robot 1 outermost. Vertex conflicts and edge
    /// swaps are pruned during enumeration.
    void successors(std::uint64_t key, std::vector<std::uint64_t>& out) const {
        int cur[kMaxRobots], streak[kMaxRobots], next[kMaxRobots];
        std::uint64_t done;
        pack.decode(key, cur, done, streak);
        recurse(0, cur, streak, done, next, out);
    }

private:
    void recurse(int r, const int* cur, const int* streak, std::uint64_t done, int* next,
                 std::vector<std::uint64_t>& out) const {
        if (r == pack.k) {
            finalize(cur, streak, done, next, out);
            return;
        }
        auto try_move = [&](int cand) {
            for (int j = 0; j < r; ++j) {
                if (next[j] == cand) return;                          // same target vertex
                if (cand == cur[j] && next[j] == cur[r]) return;      // head-on swap
            }
            next[r] = cand;
            recurse(r + 1, cur, streak, done, next, out);
        };
        try_move(cur[r]);
        for (int v : graph.neighbors(cur[r])) try_move(v);
    }

    void finalize(const int* cur, const int* streak, std::uint64_t done, const int* next,
                  std::vector<std::uint64_t>& out) const {
        std::uint64_t new_done = done;
        int new_streak[kMaxRobots];
        for (int r = 0; r < pack.k; ++r) {
            int task = pack.task_at[next[r]];
            if (task < 0 || (new_done >> task) & 1) {
                new_streak[r] = 0;
                continue;
            }
            int s = (next[r] == cur[r] && streak[r] > 0) ? streak[r] + 1 : 1;
            if (s == pack.duration_of[task] + 1) {
                new_done |= 1ull << task;
                s = 0;
            }
            new_streak[r] = s;
        }
        out.push_back(pack.encode(next, new_done, new_streak));
    }
};

std::uint64_t initial_key(const Instance& inst, const Packing& pack) {
    int pos[kMaxRobots], streak[kMaxRobots];
    for (int r = 0; r < pack.k; ++r) {
        pos[r] = inst.starts[r];
        int task = pack.task_at[pos[r]];
        streak[r] = (task >= 0) ? 1 : 0;  // initial placement counts as arrival
    }
    return pack.encode(pos, 0, streak);
}

ScheduleSet reconstruct(const Packing& pack, const std::vector<std::uint64_t>& keys,
                        const std::vector<std::uint32_t>& parent, std::uint32_t goal) {
    std::vector<std::uint32_t> chain;
    for (std::uint32_t i = goal;; i = parent[i]) {
        chain.push_back(i);
        if (parent[i] == i) break;
    }
    std::reverse(chain.begin(), chain.end());
    ScheduleSet set;
    set.traces.resize(pack.k);
    int pos[kMaxRobots], streak[kMaxRobots];
    std::uint64_t done;
    for (std::uint32_t idx : chain) {
        pack.decode(keys[idx], pos, done, streak);
        for (int r = 0; r < pack.k; ++r) set.traces[r].positions.push_back(pos[r]);
    }
    return set;
}

struct SearchCore {
    Packing pack;
    Expander expander;
    std::uint64_t full;
    std::vector<std::uint64_t> keys;
    std::vector<std::uint32_t> parent;
    std::unordered_set<std::uint64_t> seen;

    explicit SearchCore(const Instance& inst) : pack(inst), expander{inst.graph, pack} {
        if (inst.robot_count() > kMaxRobots)
            throw resource_error("exact solver supports at most 8 robots");
        full = pack.full_mask();
        keys.push_back(initial_key(inst, pack));
        parent.push_back(0);
        seen.insert(keys[0]);
    }

    bool is_goal(std::uint64_t key) const {
        int pos[kMaxRobots], streak[kMaxRobots];
        std::uint64_t done;
        pack.decode(key, pos, done, streak);
        return done == full;
    }

    bool root_goal(ExactResult& res) {
        if (!is_goal(keys[0])) return false;
        res.status = ExactStatus::found;
        res.makespan = 0;
        res.witness = reconstruct(pack, keys, parent, 0);
        res.peak_frontier = 1;
        return true;
    }

    /// Inserts one candidate; returns true when the search should stop.
    bool absorb(std::uint64_t key, std::uint32_t from, int timestep, std::uint64_t state_cap,
                ExactResult& res) {
        if (!seen.insert(key).second) return false;
        keys.push_back(key);
        parent.push_back(from);
        if (keys.size() > state_cap) {
            res.status = ExactStatus::budget_exceeded;
            return true;
        }
        if (is_goal(key)) {
            res.status = ExactStatus::found;
            res.makespan = timestep;  // the new state lives at timestep + 1
            res.witness = reconstruct(pack, keys, parent, (std::uint32_t)(keys.size() - 1));
            return true;
        }
        return false;
    }
};

}  // namespace

ExactResult optimal_makespan(const Instance& inst, Horizon horizon, const ExactOptions& opts) {
    SearchCore core(inst);
    ExactResult res;
    if (core.root_goal(res)) return res;

#ifdef _OPENMP
    const int num_threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#else
    const int num_threads = 1;
#endif
    constexpr std::size_t kBatch = 256;
    std::vector<std::vector<std::uint64_t>> cand(kBatch);

    std::size_t layer_begin = 0, layer_end = 1;
    int timestep = 1;
    res.peak_frontier = 1;
    while (layer_begin < layer_end && timestep <= horizon.tau) {
        for (std::size_t batch = layer_begin; batch < layer_end; batch += kBatch) {
            const std::size_t count = std::min(kBatch, layer_end - batch);
            // Candidate generation only reads the expanded state, so batches
            // can run in parallel; the merge below consumes them in frontier
            // order, which keeps dedup identical to the serial reference.
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(num_threads)
#endif
            for (std::size_t i = 0; i < count; ++i) {
                cand[i].clear();
                core.expander.successors(core.keys[batch + i], cand[i]);
            }
            for (std::size_t i = 0; i < count; ++i) {
                res.states_expanded++;
                for (std::uint64_t key : cand[i])
                    if (core.absorb(key, (std::uint32_t)(batch + i), timestep, opts.state_cap, res))
                        return res;
            }
        }
        layer_begin = layer_end;
        layer_end = core.keys.size();
        res.peak_frontier = std::max<std::uint64_t>(res.peak_frontier, layer_end - layer_begin);
        ++timestep;
    }
    res.status = ExactStatus::infeasible_within_horizon;
    return res;
}

ExactResult optimal_makespan_reference(const Instance& inst, Horizon horizon,
                                       std::uint64_t state_cap) {
    SearchCore core(inst);
    ExactResult res;
    if (core.root_goal(res)) return res;

    std::vector<std::uint64_t> buf;
    std::size_t layer_begin = 0, layer_end = 1;
    int timestep = 1;
    res.peak_frontier = 1;
    while (layer_begin < layer_end && timestep <= horizon.tau) {
        for (std::size_t i = layer_begin; i < layer_end; ++i) {
            buf.clear();
            core.expander.successors(core.keys[i], buf);
            res.states_expanded++;
            for (std::uint64_t key : buf)
                if (core.absorb(key, (std::uint32_t)i, timestep, state_cap, res)) return res;
        }
        layer_begin = layer_end;
        layer_end = core.keys.size();
        res.peak_frontier = std::max<std::uint64_t>(res.peak_frontier, layer_end - layer_begin);
        ++timestep;
    }
    res.status = ExactStatus::infeasible_within_horizon;
    return res;
}

}  // namespace pathsched
