#pragma once

#include <utility>
#include <vector>

namespace pathsched {

/// Simple undirected graph over vertex ids 1..n.
/// Edges are normalized to (u < v), deduplicated and kept sorted, so two graphs
/// built from the same edge set compare and serialize identically.
class Graph {
public:
    Graph() = default;
    Graph(int vertex_count, std::vector<std::pair<int, int>> edge_list);

    int vertex_count() const { return n_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    bool adjacent(int u, int v) const;

    /// True iff the graph is exactly the path 1-2-...-n.
    bool is_path_in_order() const;

    /// Hop distances from source; -1 for unreachable vertices. Index 0 unused.
    std::vector<int> distances_from(int source) const;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
};

Graph make_path_graph(int n);

/// rows x cols grid, cells numbered row-major starting at 1.
Graph make_lattice_graph(int rows, int cols);

}  // namespace pathsched
