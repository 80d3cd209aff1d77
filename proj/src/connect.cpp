#include "pathsched/connect.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "pathsched/util.hpp"

namespace pathsched {

namespace {

void validate_terminals(const Graph& graph, const std::vector<int>& terminals) {
    if (terminals.empty()) throw input_error("terminal set is empty");
    std::set<int> seen;
    for (int v : terminals) {
        if (v < 1 || v > graph.vertex_count()) throw input_error("terminal out of range");
        if (!seen.insert(v).second) throw input_error("duplicate terminal");
    }
}

/// BFS tree from source: (distance, parent) per vertex, parent of source = 0.
std::pair<std::vector<int>, std::vector<int>> bfs_tree(const Graph& graph, int source) {
    std::vector<int> dist(graph.vertex_count() + 1, -1), parent(graph.vertex_count() + 1, 0);
    dist[source] = 0;
    std::deque<int> queue{source};
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : graph.neighbors(u))
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                parent[v] = u;
                queue.push_back(v);
            }
    }
    return {dist, parent};
}

}  // namespace

GadgetGraph build_disjoint_path_gadget(const Graph& graph, const std::vector<int>& order) {
    validate_terminals(graph, order);
    const int n = graph.vertex_count();
    const int ms = (int)order.size();

    GadgetGraph g;
    g.terminals = order;
    for (int i = 0; i < ms; ++i) g.clones.push_back(n + 1 + i);
    g.s = n + ms + 1;
    g.t = n + ms + 2;

    std::vector<std::pair<int, int>> edges(graph.edges());
    for (int i = 0; i < ms; ++i) {
        edges.emplace_back(order[i], g.clones[i]);
        for (int u : graph.neighbors(order[i])) edges.emplace_back(g.clones[i], u);
        auto& part = (i % 2 == 0) ? g.part_a : g.part_b;
        part.push_back(order[i]);
        part.push_back(g.clones[i]);
    }
    for (int v : g.part_a)
        if (v != order[0]) edges.emplace_back(g.s, v);  // s skips v_1, not v'_1
    for (int v : g.part_b) edges.emplace_back(g.t, v);

    g.gadget = Graph(n + ms + 2, std::move(edges));
    return g;
}

namespace {

struct OrderedPathSearch {
    const Graph& graph;
    const std::vector<int>& order;
    std::vector<int> rank;  // vertex -> index in order, -1 otherwise
    std::vector<bool> visited;
    std::vector<int> path;
    std::uint64_t budget;

    OrderedPathSearch(const Graph& g, const std::vector<int>& ord, std::uint64_t b)
        : graph(g), order(ord), budget(b) {
        rank.assign(g.vertex_count() + 1, -1);
        for (int i = 0; i < (int)ord.size(); ++i) rank[ord[i]] = i;
        visited.assign(g.vertex_count() + 1, false);
    }

    bool dfs(int v, int matched) {
        if (budget-- == 0) throw resource_error("ordered path search budget exhausted");
        visited[v] = true;
        path.push_back(v);
        if (matched == (int)order.size()) return true;
        for (int u : graph.neighbors(v)) {
            if (visited[u]) continue;
            int ur = rank[u];
            if (ur >= 0 && ur != matched) continue;  // would visit a terminal out of order
            if (dfs(u, ur == matched ? matched + 1 : matched)) return true;
        }
        visited[v] = false;
        path.pop_back();
        return false;
    }
};

}  // namespace

std::optional<std::vector<int>> path_exists_fixed_order(const Graph& graph,
                                                        const std::vector<int>& order,
                                                        std::uint64_t budget) {
    validate_terminals(graph, order);
    OrderedPathSearch search(graph, order, budget);
    if (search.dfs(order[0], 1)) return search.path;
    return std::nullopt;
}

std::optional<std::vector<int>> path_connecting(const Graph& graph, std::vector<int> terminals,
                                                int max_terminals, std::uint64_t budget) {
    validate_terminals(graph, terminals);
    if ((int)terminals.size() > max_terminals)
        throw input_error("terminal set exceeds the ordering limit");
    std::sort(terminals.begin(), terminals.end());
    do {
        if (auto path = path_exists_fixed_order(graph, terminals, budget)) return path;
    } while (std::next_permutation(terminals.begin(), terminals.end()));
    return std::nullopt;
}

WalkResult shortest_walk_connecting(const Graph& graph, std::vector<int> terminals, int threads) {
    validate_terminals(graph, terminals);
    std::sort(terminals.begin(), terminals.end());
    const int ms = (int)terminals.size();
    if (ms == 1) return {{terminals[0]}, 0};

    std::vector<std::vector<int>> dist(ms), parent(ms);
    for (int i = 0; i < ms; ++i) std::tie(dist[i], parent[i]) = bfs_tree(graph, terminals[i]);
    for (int i = 1; i < ms; ++i)
        if (dist[0][terminals[i]] < 0)
            throw input_error("terminals span disconnected components");

    std::vector<std::vector<int>> perms;
    {
        std::vector<int> p(ms);
        for (int i = 0; i < ms; ++i) p[i] = i;
        do perms.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
    }

    long long best_cost = -1;
    int best_idx = -1;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads > 0 ? threads : 1) if (threads != 1)
#endif
    for (int pi = 0; pi < (int)perms.size(); ++pi) {
        long long cost = 0;
        for (int j = 0; j + 1 < ms; ++j)
            cost += dist[perms[pi][j]][terminals[perms[pi][j + 1]]];
#ifdef _OPENMP
#pragma omp critical
#endif
        {
            if (best_idx < 0 || cost < best_cost || (cost == best_cost && pi < best_idx)) {
                best_cost = cost;
                best_idx = pi;
            }
        }
    }

    const std::vector<int>& p = perms[best_idx];
    WalkResult res;
    res.length = (int)best_cost;
    res.walk.push_back(terminals[p[0]]);
    for (int j = 0; j + 1 < ms; ++j) {
        // Path from terminal p[j] to p[j+1] along p[j]'s BFS tree.
        std::vector<int> seg;
        for (int v = terminals[p[j + 1]]; v != terminals[p[j]]; v = parent[p[j]][v])
            seg.push_back(v);
        for (auto it = seg.rbegin(); it != seg.rend(); ++it) res.walk.push_back(*it);
    }
    return res;
}

int steiner_walk_oracle(const Graph& graph, std::vector<int> terminals, int max_vertices) {
    validate_terminals(graph, terminals);
    if (graph.vertex_count() > max_vertices)
        throw resource_error("steiner oracle limited to small graphs");
    std::sort(terminals.begin(), terminals.end());
    const int ms = (int)terminals.size();
    if (ms == 1) return 0;
    const int n = graph.vertex_count();
    const int full = (1 << ms) - 1;

    std::vector<int> term_bit(n + 1, 0);
    for (int i = 0; i < ms; ++i) term_bit[terminals[i]] = 1 << i;

    std::vector<int> dist((n + 1) << ms, -1);
    auto at = [&](int v, int mask) -> int& { return dist[(v << ms) | mask]; };
    std::deque<std::pair<int, int>> queue;
    for (int v : terminals) {
        at(v, term_bit[v]) = 0;
        queue.emplace_back(v, term_bit[v]);
    }
    while (!queue.empty()) {
        auto [v, mask] = queue.front();
        queue.pop_front();
        if (mask == full) return at(v, mask);
        for (int u : graph.neighbors(v)) {
            int nm = mask | term_bit[u];
            if (at(u, nm) < 0) {
                at(u, nm) = at(v, mask) + 1;
                queue.emplace_back(u, nm);
            }
        }
    }
    throw input_error("terminals span disconnected components");
}

}  // namespace pathsched
