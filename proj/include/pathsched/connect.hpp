#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pathsched/graph.hpp"

namespace pathsched {

/// G' for the ordered-terminals disjoint-paths reduction: every terminal v_i
/// gets a clone v'_i adjacent to v_i and to v_i's whole neighborhood; s is
/// adjacent to all of A = {v_1, v'_1, v_3, v'_3, ...} except v_1 itself, t to
/// all of B (the even-indexed pairs). All non-terminal vertices of the base
/// graph are retained. The builder is structural only.
struct GadgetGraph {
    Graph gadget;
    std::vector<int> terminals;  // the given order
    std::vector<int> clones;     // clones[i] = id of v'_(i+1)
    int s = 0, t = 0;
    std::vector<int> part_a, part_b;
};

GadgetGraph build_disjoint_path_gadget(const Graph& graph, const std::vector<int>& order);

/// One simple path visiting the ordered terminals as a subsequence, found by
/// exhaustive backtracking (exact at this scale), or nullopt. The path starts
/// at the first terminal and ends at the last; later terminals may not be
/// crossed early. Throws resource_error past `budget` node expansions.
std::optional<std::vector<int>> path_exists_fixed_order(const Graph& graph,
                                                        const std::vector<int>& order,
                                                        std::uint64_t budget = 5'000'000);

/// Tries every ordering of the terminals lexicographically; first witness
/// wins. Refuses terminal sets larger than `max_terminals`.
std::optional<std::vector<int>> path_connecting(const Graph& graph, std::vector<int> terminals,
                                                int max_terminals = 6,
                                                std::uint64_t budget = 5'000'000);

struct WalkResult {
    std::vector<int> walk;  // vertex sequence, edge count == length
    int length = 0;
};

/// Shortest walk covering the terminals: single-source shortest paths from
/// every terminal, then the ordering minimizing the sum of consecutive
/// distances (permutations may be scanned in parallel; ties resolve to the
/// lexicographically first ordering). Errors if the terminals span more than
/// one component.
WalkResult shortest_walk_connecting(const Graph& graph, std::vector<int> terminals,
                                    int threads = 1);

/// Independent oracle: BFS over (vertex, visited-terminal-subset) states.
int steiner_walk_oracle(const Graph& graph, std::vector<int> terminals, int max_vertices = 12);

}  // namespace pathsched
