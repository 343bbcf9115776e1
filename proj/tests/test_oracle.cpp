#include <catch2/catch_amalgamated.hpp>

#include "arbodom/lower_bound.hpp"
#include "arbodom/mds_det.hpp"
#include "arbodom/oracle.hpp"
#include "test_support.hpp"

using namespace arbodom;

TEST_CASE("exact_mds on the canonical examples") {
    SECTION("single node") {
        auto g = WeightedGraph::build(1, {}, {5});
        auto r = exact_mds(g);
        REQUIRE(r.opt_weight == 5);
        REQUIRE(r.witness == std::vector<int>{0});
    }
    SECTION("star") {
        auto r = exact_mds(generate_star(4));
        REQUIRE(r.opt_weight == 1);
        REQUIRE(r.witness == std::vector<int>{0});
    }
    SECTION("path of five") {
        auto r = exact_mds(path_graph(5));
        REQUIRE(r.opt_weight == 2);
        REQUIRE(r.witness.size() == 2);
        REQUIRE(is_dominating(path_graph(5), r.witness));
    }
    SECTION("size cap") {
        REQUIRE_THROWS_AS(exact_mds(WeightedGraph::build(27, {}, std::vector<Weight>(27, 1))),
                          TooLarge);
    }
}

TEST_CASE("exact_mds equals subset enumeration on assorted graphs") {
    std::vector<WeightedGraph> graphs = {petersen_graph(), complete_graph(4), cycle_graph(7),
                                         generate_star(5), path_graph(9)};
    for (std::uint64_t seed = 1; seed <= 8; ++seed)
        graphs.push_back(
            generate_bounded_arboricity(5 + static_cast<int>(seed % 8), 1 + seed % 3, 6, seed));
    for (const auto& g : graphs) {
        if (g.node_count() > 12) continue;
        auto fast = exact_mds(g);
        auto slow = test_support::brute_force_mds(g);
        INFO("n=" << g.node_count() << " m=" << g.edge_count());
        REQUIRE(fast.opt_weight == slow.first);
        REQUIRE(is_dominating(g, fast.witness));
        Weight w = 0;
        for (int v : fast.witness) w += g.weight(v);
        REQUIRE(w == fast.opt_weight);
    }
}

TEST_CASE("is_dominating") {
    auto g = generate_star(4);
    REQUIRE_FALSE(is_dominating(WeightedGraph::build(1, {}, {1}), {}));
    REQUIRE(is_dominating(g, {0}));
    REQUIRE(is_dominating(g, {0, 1, 2, 3, 4}));
    REQUIRE_FALSE(is_dominating(g, {1}));
}

TEST_CASE("packing feasibility") {
    auto g = generate_star(4);
    PackingAssignment x;
    x.eps = Rat(1, 2);
    SECTION("all zero is feasible") {
        x.node.assign(5, NodePacking{0, 0, 0, 5, false});
        REQUIRE(packing_feasible(g, x).feasible);
    }
    SECTION("the tau/(Delta+1) initialization is feasible") {
        auto taus = compute_tau(g);
        for (int v = 0; v < 5; ++v) x.node.push_back(NodePacking{taus[v], 0, 0, 5, false});
        REQUIRE(packing_feasible(g, x).feasible);
        // weak duality with equality on the star: sum = 5 * (1/5) = 1 = OPT
        auto oracle = exact_mds(g);
        REQUIRE(duality_check(g, x, oracle));
        REQUIRE(x.sum() == oracle.opt_weight);
    }
    SECTION("an inflated node is caught by id") {
        x.node.assign(5, NodePacking{0, 0, 0, 5, false});
        x.node[3] = NodePacking{2, 0, 0, 1, false};  // x_3 = 2 > w_3 = 1
        auto check = packing_feasible(g, x);
        REQUIRE_FALSE(check.feasible);
        REQUIRE(check.first_violation == 0);  // first u whose X_u breaks is the center
        REQUIRE_THROWS_AS(duality_check(g, x, exact_mds(g)), InfeasiblePacking);
    }
}

TEST_CASE("dominating set to fractional vertex cover") {
    SECTION("everything selected gives the all-ones cover") {
        auto h = build_lower_bound_graph(complete_graph(2));
        std::vector<int> all(h.graph.node_count());
        for (int v = 0; v < h.graph.node_count(); ++v) all[v] = v;
        auto fvc = ds_to_fractional_vc(h, all);
        REQUIRE(fvc.y == std::vector<Rat>{Rat(1), Rat(1)});
        REQUIRE(fractional_vc_feasible(complete_graph(2), fvc));
    }
    SECTION("hub nodes plus one endpoint copy per copy") {
        auto base = complete_graph(2);
        auto h = build_lower_bound_graph(base);
        // T = {3, 4} with copy block {0, 1, middle 2}; pick copy of node 0
        std::vector<int> s = {0, 3, 4};
        REQUIRE(is_dominating(h.graph, s));
        auto fvc = ds_to_fractional_vc(h, s);
        REQUIRE(fractional_vc_feasible(base, fvc));
        REQUIRE(fvc.y[0] + fvc.y[1] >= 1);
        REQUIRE(fvc.sum() <= Rat(static_cast<int>(s.size()), 1));
    }
    SECTION("middle nodes are replaced by their lower endpoint") {
        auto base = complete_graph(2);
        auto h = build_lower_bound_graph(base);
        // middle node 2 + hubs: replacement turns 2 into copy of node 0
        std::vector<int> s = {2, 3, 4};
        REQUIRE(is_dominating(h.graph, s));
        auto fvc = ds_to_fractional_vc(h, s);
        REQUIRE(fvc.y[0] == 1);
        REQUIRE(fvc.y[1] == 0);
        REQUIRE(fractional_vc_feasible(base, fvc));
    }
    SECTION("non-dominating input is rejected") {
        auto h = build_lower_bound_graph(complete_graph(2));
        REQUIRE_THROWS_AS(ds_to_fractional_vc(h, {0}), NotDominating);
    }
    SECTION("feasible for every dominating set of small random H") {
        for (std::uint64_t seed = 2; seed <= 6; ++seed) {
            auto base = generate_bounded_arboricity(4 + static_cast<int>(seed % 3), 2, 1, seed);
            if (base.edge_count() == 0) continue;
            auto h = build_lower_bound_graph(base);
            auto result = mds_deterministic(h.graph.with_declared_alpha(2), Rat(1, 2));
            auto fvc = ds_to_fractional_vc(h, result.members);
            REQUIRE(fractional_vc_feasible(base, fvc));
        }
    }
}

TEST_CASE("half-integral fractional vertex cover optimum") {
    REQUIRE(mfvc_opt(complete_graph(2)) == 1);
    REQUIRE(mfvc_opt(complete_graph(3)) == Rat(3, 2));
    REQUIRE(mfvc_opt(cycle_graph(5)) == Rat(5, 2));
    REQUIRE(mfvc_opt(path_graph(4)) == 2);  // matching {01,23} forces it
    REQUIRE_THROWS_AS(mfvc_opt(WeightedGraph::build(11, {}, std::vector<Weight>(11, 1))),
                      TooLarge);
}
