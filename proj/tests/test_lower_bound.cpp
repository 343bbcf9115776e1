#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "arbodom/graph_io.hpp"
#include "arbodom/lower_bound.hpp"

using namespace arbodom;

namespace {

void check_counts(const LowerBoundGraph& h) {
    long long d2 = static_cast<long long>(h.base_delta) * h.base_delta;
    REQUIRE(h.graph.node_count() == d2 * (h.base_n + h.base_m) + h.base_n);
    REQUIRE(h.graph.edge_count() == d2 * (2 * h.base_m + h.base_n));
}

}  // namespace

TEST_CASE("lower-bound transform on K2") {
    auto h = build_lower_bound_graph(complete_graph(2));
    REQUIRE(h.base_delta == 1);
    REQUIRE(h.graph.node_count() == 5);
    REQUIRE(h.graph.edge_count() == 3);
    check_counts(h);
    REQUIRE(exact_orientation(h.graph, 2));
}

TEST_CASE("lower-bound transform on K4") {
    auto h = build_lower_bound_graph(complete_graph(4));
    REQUIRE(h.base_delta == 3);
    REQUIRE(h.graph.node_count() == 94);
    REQUIRE(h.graph.edge_count() == 144);
    REQUIRE(h.graph.max_degree() == 9);
    check_counts(h);
    REQUIRE(exact_orientation(h.graph, 2));

    SECTION("roles partition the nodes correctly") {
        int copies = 0, middles = 0, hubs = 0;
        for (const NodeRole& r : h.roles) {
            switch (r.kind) {
                case RoleKind::copy: copies++; break;
                case RoleKind::middle: middles++; break;
                case RoleKind::t_node: hubs++; break;
            }
        }
        REQUIRE(copies == 9 * 4);
        REQUIRE(middles == 9 * 6);
        REQUIRE(hubs == 4);
    }

    SECTION("every hub node touches all copies of its original") {
        for (int v = 0; v < h.graph.node_count(); ++v) {
            if (h.roles[v].kind != RoleKind::t_node) continue;
            REQUIRE(h.graph.degree(v) == 9);
            for (int u : h.graph.neighbors(v)) {
                REQUIRE(h.roles[u].kind == RoleKind::copy);
                REQUIRE(h.roles[u].original == h.roles[v].original);
            }
        }
    }

    SECTION("middle nodes subdivide exactly one copy edge") {
        for (int v = 0; v < h.graph.node_count(); ++v) {
            if (h.roles[v].kind != RoleKind::middle) continue;
            REQUIRE(h.graph.degree(v) == 2);
            for (int u : h.graph.neighbors(v)) {
                REQUIRE(h.roles[u].kind == RoleKind::copy);
                REQUIRE(h.roles[u].copy_index == h.roles[v].copy_index);
                bool endpoint = h.roles[u].original == h.roles[v].endpoint_u ||
                                h.roles[u].original == h.roles[v].endpoint_v;
                REQUIRE(endpoint);
            }
        }
    }
}

TEST_CASE("lower-bound transform rejects degenerate bases") {
    REQUIRE_THROWS_AS(build_lower_bound_graph(WeightedGraph::build(3, {}, {1, 1, 1})),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(build_lower_bound_graph(WeightedGraph::build(2, {{0, 1}}, {1, 2})),
                      std::invalid_argument);
}

TEST_CASE("count formulas hold for random small bases") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        int n = 2 + static_cast<int>(seed % 7);
        auto base = generate_bounded_arboricity(n, 2, 1, seed);
        if (base.edge_count() == 0) continue;
        auto h = build_lower_bound_graph(base);
        INFO("seed=" << seed << " base n=" << n);
        check_counts(h);
        REQUIRE(exact_orientation(h.graph, 2));
    }
}

TEST_CASE("role sidecar round-trips") {
    auto h = build_lower_bound_graph(complete_graph(3));
    std::stringstream roles_io;
    write_roles(roles_io, h);
    auto roles = read_roles(roles_io, h.graph.node_count());
    REQUIRE(roles == h.roles);
}
