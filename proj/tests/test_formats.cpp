#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <catch2/catch_amalgamated.hpp>

#include "arbodom/experiment.hpp"
#include "arbodom/graph_io.hpp"
#include "arbodom/result_json.hpp"

using namespace arbodom;

namespace {

std::string temp_path(const std::string& name) {
    return std::string("/tmp/arbodom_test_") + name;
}

}  // namespace

TEST_CASE("graph text format round-trips") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        auto g = generate_bounded_arboricity(8 + static_cast<int>(seed), 2, 8, seed);
        std::stringstream buffer;
        write_graph(buffer, g);
        auto back = read_graph(buffer);
        REQUIRE(back.node_count() == g.node_count());
        REQUIRE(back.edges() == g.edges());
        REQUIRE(back.weights() == g.weights());
        REQUIRE(back.declared_alpha() == g.declared_alpha());
    }
}

TEST_CASE("graph format accepts comments and rejects junk") {
    std::stringstream good("# a comment\n2 1 3\n# weights\n4\n2\n0 1\n");
    auto g = read_graph(good);
    REQUIRE(g.node_count() == 2);
    REQUIRE(g.weight(0) == 4);

    std::stringstream reversed("2 1 3\n1\n1\n1 0\n");
    REQUIRE_THROWS(read_graph(reversed));
    std::stringstream truncated("3 1 3\n1\n1\n");
    REQUIRE_THROWS(read_graph(truncated));
}

TEST_CASE("result JSON round-trips") {
    auto g = generate_bounded_arboricity(10, 2, 8, 4);
    auto r = mds_deterministic(g, Rat(1, 2));
    auto j = result_to_json(r);
    auto back = result_from_json(j);
    REQUIRE(back.members == r.members);
    REQUIRE(back.total_weight == r.total_weight);
    REQUIRE(back.claimed_factor == r.claimed_factor);
    REQUIRE(back.certificate.node == r.certificate.node);
    REQUIRE(back.certificate.eps == r.certificate.eps);
}

TEST_CASE("verification catches tampering") {
    auto g = generate_bounded_arboricity(10, 2, 8, 4);
    auto r = mds_deterministic(g, Rat(1, 2));
    REQUIRE(verify_result(g, r).all_pass);

    SECTION("removing a member breaks domination or the weight") {
        auto bad = r;
        bad.members.pop_back();
        REQUIRE_FALSE(verify_result(g, bad).all_pass);
    }
    SECTION("inflating the certificate breaks feasibility") {
        auto bad = r;
        bad.certificate.node[0].tau = 1000;
        bad.certificate.node[0].denom = 1;
        REQUIRE_FALSE(verify_result(g, bad).all_pass);
    }
    SECTION("understating the weight is caught") {
        auto bad = r;
        bad.total_weight -= 1;
        REQUIRE_FALSE(verify_result(g, bad).all_pass);
    }
}

TEST_CASE("experiment sweep is deterministic and seed-stable") {
    ExperimentConfig config;
    config.generator = GeneratorSpec{"bounded-arboricity", 9, 2, 4, 0, "", ""};
    config.algorithm = AlgorithmSpec{"det", Rat(1, 2), 1, 1};
    config.seed_start = 1;
    config.seed_count = 6;
    config.trials = 1;
    config.verify = true;

    auto csv1 = run_experiment_csv(config);
    auto csv2 = run_experiment_csv(config);
    REQUIRE(csv1 == csv2);
    REQUIRE(csv1.find("error") != std::string::npos);  // header present
    REQUIRE(csv1.find(",det,") != std::string::npos);

    SECTION("thread cap does not change the bytes") {
        setenv("ARBODOM_THREADS", "1", 1);
        auto serial = run_experiment_csv(config);
        setenv("ARBODOM_THREADS", "4", 1);
        auto parallel = run_experiment_csv(config);
        unsetenv("ARBODOM_THREADS");
        REQUIRE(serial == parallel);
        REQUIRE(serial == csv1);
    }

    SECTION("randomized rows are per-seed reproducible") {
        config.algorithm = AlgorithmSpec{"rand", Rat(1, 2), 1, 1};
        config.trials = 3;
        auto a = run_experiment_csv(config);
        auto b = run_experiment_csv(config);
        REQUIRE(a == b);
    }
}

TEST_CASE("errors land in the error column and the sweep continues") {
    ExperimentConfig config;
    config.generator = GeneratorSpec{"bounded-arboricity", 6, 2, 3, 0, "", ""};
    config.algorithm = AlgorithmSpec{"unweighted", Rat(1, 2), 1, 1};  // weights are not unit
    config.seed_start = 1;
    config.seed_count = 2;
    auto csv = run_experiment_csv(config);
    int lines = 0;
    for (char ch : csv)
        if (ch == '\n') lines++;
    REQUIRE(lines == 3);  // header + one row per seed
    REQUIRE(csv.find("unit weights") != std::string::npos);
}

TEST_CASE("config JSON parses") {
    nlohmann::json j = {
        {"generator", {{"family", "star"}, {"delta", 4}}},
        {"algorithm", {{"name", "det"}, {"eps", "1/10"}}},
        {"seeds", {{"start", 7}, {"count", 3}}},
        {"trials", 2},
        {"output", "out.csv"},
        {"verify", false},
    };
    auto config = config_from_json(j);
    REQUIRE(config.generator.family == "star");
    REQUIRE(config.generator.delta == 4);
    REQUIRE(config.algorithm.eps == Rat(1, 10));
    REQUIRE(config.seed_start == 7);
    REQUIRE(config.seed_count == 3);
    REQUIRE(config.trials == 2);
    REQUIRE_FALSE(config.verify);
}

TEST_CASE("command line end to end") {
    const std::string cli = ARBODOM_CLI_PATH;
    const std::string graph = temp_path("star.txt");
    const std::string result = temp_path("result.json");

    SECTION("gen, run, verify pipeline") {
        REQUIRE(std::system((cli + " gen --family star --delta 4 --out " + graph + " > /dev/null")
                                .c_str()) == 0);
        REQUIRE(std::system((cli + " run --graph " + graph + " --algo det --eps 1/2 --json " +
                             result + " > /dev/null")
                                .c_str()) == 0);
        REQUIRE(std::system(
                    (cli + " verify --graph " + graph + " --result " + result + " > /dev/null")
                        .c_str()) == 0);

        // tamper: drop a member, verification must fail with exit 1
        auto loaded = load_result_json(result);
        loaded.members = {1};
        loaded.total_weight = 1;
        save_result_json(result, loaded);
        int code = std::system(
            (cli + " verify --graph " + graph + " --result " + result + " > /dev/null").c_str());
        REQUIRE(WEXITSTATUS(code) == 1);
        std::remove(graph.c_str());
        std::remove(result.c_str());
    }
    SECTION("lb-construct reports the section-5 facts") {
        int code = std::system((cli + " lb-construct --base k4 > /dev/null").c_str());
        REQUIRE(code == 0);
    }
    SECTION("usage errors exit with 2") {
        int code = std::system((cli + " run --algo nonsense 2> /dev/null").c_str());
        REQUIRE(WEXITSTATUS(code) == 2);
    }
}
