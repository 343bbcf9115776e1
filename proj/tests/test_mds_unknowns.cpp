#include <catch2/catch_amalgamated.hpp>

#include "arbodom/mds_unknowns.hpp"
#include "arbodom/oracle.hpp"

using namespace arbodom;

TEST_CASE("unknown-Delta variant") {
    SECTION("single node finishes fast") {
        auto g = WeightedGraph::build(1, {}, {3}, 1);
        auto r = mds_unknown_delta(g, Rat(1, 2));
        REQUIRE(r.members == std::vector<int>{0});
        REQUIRE(r.rounds <= 6);
    }
    SECTION("star stays within the factor") {
        auto g = generate_star(4);
        auto r = mds_unknown_delta(g, Rat(1, 2));
        REQUIRE(r.valid);
        REQUIRE(Rat(r.total_weight) <= r.claimed_factor * exact_mds(g).opt_weight);
    }
    SECTION("factor holds across the seeded suite") {
        for (std::uint64_t seed = 1; seed <= 20; ++seed) {
            int n = 2 + static_cast<int>(seed % 17);
            int alpha = 1 + static_cast<int>(seed % 3);
            auto g = generate_bounded_arboricity(n, alpha, seed % 2 ? 8 : 1, seed);
            auto oracle = exact_mds(g);
            for (const Rat& eps : {Rat(1, 10), Rat(1, 2)}) {
                auto r = mds_unknown_delta(g, eps);
                INFO("seed=" << seed << " eps=" << fraction_string(eps));
                REQUIRE(Rat(r.total_weight) <= r.claimed_factor * oracle.opt_weight);
                REQUIRE(duality_check(g, r.certificate, oracle));
            }
        }
    }
    SECTION("the program never reads Delta") {
        // enforced by the knowns fence: a read would throw UnknownGlobal
        REQUIRE_NOTHROW(mds_unknown_delta(generate_bounded_arboricity(9, 2, 4, 3), Rat(1, 2)));
    }
}

TEST_CASE("unknown-alpha variant") {
    SECTION("single node") {
        auto g = WeightedGraph::build(1, {}, {1}, 1);
        auto r = mds_unknown_alpha(g, Rat(1, 2));
        REQUIRE(r.members == std::vector<int>{0});
    }
    SECTION("requires unit weights") {
        auto g = WeightedGraph::build(2, {{0, 1}}, {1, 2}, 1);
        REQUIRE_THROWS_AS(mds_unknown_alpha(g, Rat(1, 2)), NonUnitWeights);
    }
    SECTION("orientation audit on trees") {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            int n = 2 + static_cast<int>(seed % 17);
            auto g = generate_tree(n, seed);
            auto r = mds_unknown_alpha(g, Rat(1, 2));
            auto oracle = exact_mds(g);
            INFO("seed=" << seed << " n=" << n << " alpha_prime=" << r.alpha_prime);
            // peeling over doubled guesses achieves out-degree <= (2+eps)*2*alpha
            REQUIRE(r.alpha_prime <= 5);  // (2 + 1/2) * 2 * 1
            REQUIRE(Rat(r.total_weight) <= r.claimed_factor * oracle.opt_weight);
        }
    }
    SECTION("local estimates bracket the achieved out-degree on alpha=2 instances") {
        Rat eps(1, 2);
        for (std::uint64_t seed = 1; seed <= 8; ++seed) {
            auto g = generate_bounded_arboricity(10, 2, 1, seed);
            int guesses = ceil_log2(static_cast<std::uint64_t>(g.node_count())) + 1;
            int rpg = 2 * static_cast<int>(floor_log(1 + eps / 2, Rat(g.node_count()))) + 4;
            AdaptiveDsProgram program(AdaptiveDsProgram::Mode::unknown_alpha, eps, Rat(0),
                                      guesses, rpg);
            auto sim = run_synchronous(g, program, Knowns{true, false, false}, 0,
                                       SimOptions{100000});
            int alpha_prime = 0;
            for (const auto& o : sim.per_node_output)
                alpha_prime = std::max(alpha_prime, o.out_degree);
            REQUIRE(alpha_prime <= 2 * 5);  // (2+eps) * 2 * alpha with eps=1/2
            for (int v = 0; v < g.node_count(); ++v) {
                const auto& o = sim.per_node_output[v];
                if (g.degree(v) > 0) REQUIRE(o.alpha_hat >= 1);
                REQUIRE(o.alpha_hat <= alpha_prime);
            }
        }
    }
    SECTION("factor holds across the unit-weight suite") {
        for (std::uint64_t seed = 1; seed <= 15; ++seed) {
            int n = 3 + static_cast<int>(seed);
            int alpha = 1 + static_cast<int>(seed % 3);
            auto g = generate_bounded_arboricity(n, alpha, 1, seed);
            auto r = mds_unknown_alpha(g, Rat(1, 10));
            auto oracle = exact_mds(g);
            INFO("seed=" << seed << " n=" << n << " alpha=" << alpha
                         << " alpha_prime=" << r.alpha_prime);
            REQUIRE(Rat(r.total_weight) <= r.claimed_factor * oracle.opt_weight);
            REQUIRE(duality_check(g, r.certificate, oracle));
        }
    }
}
