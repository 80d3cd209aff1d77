#include "pathsched/graph.hpp"

#include <algorithm>
#include <deque>

#include "pathsched/util.hpp"

namespace pathsched {

Graph::Graph(int vertex_count, std::vector<std::pair<int, int>> edge_list) : n_(vertex_count) {
    if (n_ < 1) throw input_error("graph needs at least one vertex");
    for (auto& [u, v] : edge_list) {
        if (u < 1 || u > n_ || v < 1 || v > n_)
            throw input_error("edge endpoint out of range 1..n");
        if (u == v) throw input_error("self-loop edges are not allowed");
        if (u > v) std::swap(u, v);
    }
    std::sort(edge_list.begin(), edge_list.end());
    edge_list.erase(std::unique(edge_list.begin(), edge_list.end()), edge_list.end());
    edges_ = std::move(edge_list);

    adj_.assign(n_ + 1, {});
    for (auto [u, v] : edges_) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
}

bool Graph::adjacent(int u, int v) const {
    const auto& nbrs = adj_[u];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

bool Graph::is_path_in_order() const {
    if ((int)edges_.size() != n_ - 1) return false;
    for (int i = 0; i < n_ - 1; ++i)
        if (edges_[i] != std::pair<int, int>{i + 1, i + 2}) return false;
    return true;
}

std::vector<int> Graph::distances_from(int source) const {
    std::vector<int> dist(n_ + 1, -1);
    dist[source] = 0;
    std::deque<int> queue{source};
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : adj_[u])
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
    }
    return dist;
}

Graph make_path_graph(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
    return Graph(n, std::move(edges));
}

Graph make_lattice_graph(int rows, int cols) {
    if (rows < 1 || cols < 1) throw input_error("lattice needs positive dimensions");
    std::vector<std::pair<int, int>> edges;
    auto id = [cols](int r, int c) { return (r - 1) * cols + c; };
    for (int r = 1; r <= rows; ++r)
        for (int c = 1; c <= cols; ++c) {
            if (c < cols) edges.emplace_back(id(r, c), id(r, c + 1));
            if (r < rows) edges.emplace_back(id(r, c), id(r + 1, c));
        }
    return Graph(rows * cols, std::move(edges));
}

}  // namespace pathsched
