#include <doctest.h>

#include <algorithm>
#include <random>

#include "pathsched/connect.hpp"
#include "pathsched/util.hpp"
#include "test_util.hpp"

using namespace pathsched;
using namespace pathsched::testutil;

namespace {

// Star: center 1, leaves 2..4.
Graph star() { return Graph(4, {{1, 2}, {1, 3}, {1, 4}}); }

Graph triangle() { return Graph(3, {{1, 2}, {2, 3}, {1, 3}}); }

Graph cycle(int n) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
    edges.emplace_back(n, 1);
    return Graph(n, std::move(edges));
}

}  // namespace

TEST_CASE("gadget structure") {
    SUBCASE("two terminals on a path") {
        Graph g = make_path_graph(4);
        GadgetGraph gg = build_disjoint_path_gadget(g, {1, 4});
        CHECK(gg.gadget.vertex_count() == 4 + 2 + 2);
        // s skips v_1 but keeps the clone v'_1.
        CHECK(!gg.gadget.adjacent(gg.s, 1));
        CHECK(gg.gadget.adjacent(gg.s, gg.clones[0]));
        CHECK(gg.gadget.adjacent(gg.t, 4));
        CHECK(gg.gadget.adjacent(gg.t, gg.clones[1]));
    }

    SUBCASE("triangle with all vertices as terminals") {
        Graph g = triangle();
        GadgetGraph gg = build_disjoint_path_gadget(g, {1, 2, 3});
        CHECK(gg.gadget.vertex_count() == 3 + 3 + 2);
        CHECK(gg.part_a == std::vector<int>{1, gg.clones[0], 3, gg.clones[2]});
        CHECK(gg.part_b == std::vector<int>{2, gg.clones[1]});

        // Clone degree: v_i itself, N(v_i) and exactly one of s or t.
        for (int i = 0; i < 3; ++i) {
            int clone = gg.clones[i];
            int base_deg = (int)g.neighbors(gg.terminals[i]).size();
            CHECK((int)gg.gadget.neighbors(clone).size() == base_deg + 2);
        }
    }

    CHECK_THROWS_AS(build_disjoint_path_gadget(star(), {2, 2}), input_error);
}

TEST_CASE("ordered path search") {
    Graph p4 = make_path_graph(4);
    auto found = path_exists_fixed_order(p4, {1, 4});
    REQUIRE(found.has_value());
    CHECK(*found == std::vector<int>{1, 2, 3, 4});

    // Visiting a later terminal early violates the order, so (1, 3, 2) on the
    // path has no witness even though a path through all three exists.
    CHECK(!path_exists_fixed_order(p4, {1, 3, 2}).has_value());
    CHECK(path_exists_fixed_order(p4, {1, 2, 3}).has_value());

    // Budget exhaustion surfaces as a resource error.
    std::mt19937_64 rng(5);
    Graph dense = random_connected_graph(rng, 9, 12);
    CHECK_THROWS_AS(path_exists_fixed_order(dense, {1, 9, 2}, 1), resource_error);
}

TEST_CASE("path connecting terminal sets") {
    // Single vertex: the trivial one-vertex path.
    auto single = path_connecting(star(), {3});
    REQUIRE(single.has_value());
    CHECK(*single == std::vector<int>{3});

    // Star leaves: every ordering must reuse the center, so no simple path.
    CHECK(!path_connecting(star(), {2, 3, 4}).has_value());

    // Triangle: some ordering works.
    CHECK(path_connecting(triangle(), {1, 2, 3}).has_value());

    // 3x3 lattice, the figure's task vertices 2, 4, 5: 4-5-2 is a path.
    Graph lat = make_lattice_graph(3, 3);
    auto witness = path_connecting(lat, {2, 4, 5});
    REQUIRE(witness.has_value());
    for (size_t i = 1; i < witness->size(); ++i)
        CHECK(lat.adjacent((*witness)[i - 1], (*witness)[i]));

    CHECK_THROWS_AS(path_connecting(make_path_graph(8), {1, 2, 3, 4, 5, 6, 7}, 6), input_error);
}

TEST_CASE("shortest walk examples") {
    CHECK(shortest_walk_connecting(make_path_graph(4), {1, 4}).length == 3);
    CHECK(shortest_walk_connecting(star(), {2}).length == 0);

    WalkResult walk = shortest_walk_connecting(star(), {2, 3, 4});
    CHECK(walk.length == 4);  // leaf, center, leaf, center, leaf
    CHECK((int)walk.walk.size() == walk.length + 1);

    CHECK(shortest_walk_connecting(cycle(5), {1, 2, 3, 4, 5}).length == 4);
    CHECK(steiner_walk_oracle(star(), {2, 3, 4}) == 4);
    CHECK(steiner_walk_oracle(star(), {3}) == 0);
    CHECK(steiner_walk_oracle(cycle(5), {1, 2, 3, 4, 5}) == 4);

    Graph split(5, {{1, 2}, {3, 4}});
    CHECK_THROWS_AS(shortest_walk_connecting(split, {1, 4}), input_error);
}

TEST_CASE("walk witness is consistent") {
    std::mt19937_64 rng(42);
    for (int round = 0; round < 200; ++round) {
        int n = draw(rng, 2, 10);
        Graph g = random_connected_graph(rng, n, draw(rng, 0, 6));
        int ms = draw(rng, 1, std::min(4, n));
        std::vector<int> terminals = draw_distinct(rng, ms, n);
        WalkResult walk = shortest_walk_connecting(g, terminals);
        CHECK((int)walk.walk.size() == walk.length + 1);
        for (size_t i = 1; i < walk.walk.size(); ++i)
            CHECK(g.adjacent(walk.walk[i - 1], walk.walk[i]));
        for (int t : terminals)
            CHECK(std::find(walk.walk.begin(), walk.walk.end(), t) != walk.walk.end());
    }
}

TEST_CASE("permutation method matches the subset-state oracle") {
    std::mt19937_64 rng(4242);
    for (int round = 0; round < 300; ++round) {
        int n = draw(rng, 2, 10);
        Graph g = random_connected_graph(rng, n, draw(rng, 0, 5));
        int ms = draw(rng, 1, std::min(4, n));
        std::vector<int> terminals = draw_distinct(rng, ms, n);
        CHECK(shortest_walk_connecting(g, terminals).length == steiner_walk_oracle(g, terminals));
    }
}

TEST_CASE("path-connecting verdict ignores terminal order") {
    std::mt19937_64 rng(555);
    for (int round = 0; round < 100; ++round) {
        int n = draw(rng, 3, 8);
        Graph g = random_connected_graph(rng, n, draw(rng, 0, 4));
        int ms = draw(rng, 2, std::min(4, n));
        std::vector<int> terminals = draw_distinct(rng, ms, n);
        bool verdict = path_connecting(g, terminals).has_value();
        std::shuffle(terminals.begin(), terminals.end(), rng);
        CHECK(path_connecting(g, terminals).has_value() == verdict);
    }
}
