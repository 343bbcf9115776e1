#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "arbodom/experiment.hpp"
#include "arbodom/graph_io.hpp"
#include "arbodom/mds_rand.hpp"
#include "arbodom/mds_unknowns.hpp"
#include "arbodom/result_json.hpp"

namespace {

using namespace arbodom;

int cmd_gen(const GeneratorSpec& spec, std::uint64_t seed, const std::string& out) {
    if (spec.family == "lower-bound") {
        auto h = build_lower_bound_graph(named_graph(spec.base));
        save_lower_bound(out, h);
        std::cout << "wrote " << out << " (" << h.graph.node_count() << " nodes, "
                  << h.graph.edge_count() << " edges) and " << out << ".roles\n";
        return 0;
    }
    WeightedGraph g = build_instance(spec, seed);
    save_graph(out, g);
    std::cout << "wrote " << out << " (" << g.node_count() << " nodes, " << g.edge_count()
              << " edges)\n";
    return 0;
}

int cmd_run(const std::string& graph_path, const AlgorithmSpec& algo, std::uint64_t seed,
            int trials, const std::string& json_out, const std::string& csv_out, bool verify) {
    WeightedGraph g = load_graph(graph_path);
    if (trials <= 1) {
        DominatingSetResult result = run_algorithm(g, algo, seed);
        nlohmann::json j = result_to_json(result);
        if (verify) {
            auto report = verify_result(g, result);
            j["verified"] = report.all_pass;
            if (!report.all_pass) {
                for (const auto& check : report.checks)
                    if (!check.pass)
                        std::cerr << "FAIL " << check.name << " " << check.detail << "\n";
                return 1;
            }
        }
        if (json_out.empty())
            std::cout << j.dump(2) << "\n";
        else
            save_result_json(json_out, result);
        return 0;
    }

    ExperimentConfig config;
    config.generator = GeneratorSpec{"file", 1, 1, 1, 0, "", graph_path};
    config.algorithm = algo;
    config.seed_start = seed;
    config.seed_count = 1;
    config.trials = trials;
    config.verify = verify;
    std::string csv = run_experiment_csv(config);
    if (csv_out.empty())
        std::cout << csv;
    else {
        std::ofstream out(csv_out);
        out << csv;
    }
    return 0;
}

int cmd_verify(const std::string& graph_path, const std::string& result_path) {
    WeightedGraph g = load_graph(graph_path);
    DominatingSetResult result = load_result_json(result_path);
    auto report = verify_result(g, result);
    for (const auto& check : report.checks)
        std::cout << (check.pass ? "PASS " : "FAIL ") << check.name
                  << (check.detail.empty() ? "" : "  [" + check.detail + "]") << "\n";
    return report.all_pass ? 0 : 1;
}

int cmd_lb_construct(const std::string& base, const std::string& out) {
    auto h = build_lower_bound_graph(named_graph(base));
    long long d2 = static_cast<long long>(h.base_delta) * h.base_delta;
    std::cout << "base: n=" << h.base_n << " m=" << h.base_m << " delta=" << h.base_delta << "\n"
              << "H: nodes=" << h.graph.node_count() << " (= delta^2(n+m)+n = "
              << d2 * (h.base_n + h.base_m) + h.base_n << ")\n"
              << "   edges=" << h.graph.edge_count() << " (= delta^2(2m+n) = "
              << d2 * (2 * h.base_m + h.base_n) << ")\n"
              << "   max degree=" << h.graph.max_degree() << " (delta^2 = " << d2 << ")\n";
    auto orient = exact_orientation(h.graph, 2);
    std::cout << "   2-orientation: " << (orient ? "found" : "none") << "\n";
    if (!out.empty()) {
        save_lower_bound(out, h);
        std::cout << "wrote " << out << " and " << out << ".roles\n";
    }
    return orient ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"round-synchronous dominating-set approximation on bounded-arboricity graphs"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a graph instance file");
    GeneratorSpec gen_spec;
    std::uint64_t gen_seed = 1;
    std::string gen_out = "graph.txt";
    gen->add_option("--family", gen_spec.family,
                    "bounded-arboricity | star | tree | lower-bound | named")
        ->required();
    gen->add_option("--n", gen_spec.n, "node count");
    gen->add_option("--alpha", gen_spec.alpha, "arboricity bound");
    gen->add_option("--weight-max", gen_spec.weight_max, "max node weight");
    gen->add_option("--delta", gen_spec.delta, "star leaf count");
    gen->add_option("--base", gen_spec.base, "base graph (k2|k3|k4|c5|petersen|path:N|cycle:N)");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--out", gen_out, "output path")->required();

    // run
    auto* run = app.add_subcommand("run", "run an algorithm on a graph file");
    std::string run_graph, run_json, run_csv, run_eps = "1/2";
    AlgorithmSpec run_algo;
    std::uint64_t run_seed = 1;
    int run_trials = 1;
    bool run_verify = false;
    run->add_option("--graph", run_graph, "graph file")->required();
    run->add_option("--algo", run_algo.name,
                    "det | unweighted | unknown-delta | unknown-alpha | tree | rand | general")
        ->required();
    run->add_option("--eps", run_eps, "epsilon as p/q");
    run->add_option("--t", run_algo.t, "rand: trade-off parameter");
    run->add_option("--k", run_algo.k, "general: trade-off parameter");
    run->add_option("--seed", run_seed, "run seed");
    run->add_option("--trials", run_trials, "number of trials (CSV output)");
    run->add_option("--json", run_json, "write the result JSON here");
    run->add_option("--csv", run_csv, "write trial rows here");
    run->add_flag("--verify", run_verify, "check the result against the oracle");

    // verify
    auto* verify = app.add_subcommand("verify", "check a result JSON against its graph");
    std::string verify_graph, verify_result_path;
    verify->add_option("--graph", verify_graph, "graph file")->required();
    verify->add_option("--result", verify_result_path, "result JSON file")->required();

    // lb-construct
    auto* lb = app.add_subcommand("lb-construct", "build the lower-bound graph H from a base");
    std::string lb_base = "k4", lb_out;
    lb->add_option("--base", lb_base, "base graph name");
    lb->add_option("--out", lb_out, "write H (plus .roles sidecar) here");

    // bench
    auto* bench = app.add_subcommand("bench", "run an experiment sweep from a JSON config");
    std::string bench_config;
    bench->add_option("--config", bench_config, "experiment config JSON")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*gen) return cmd_gen(gen_spec, gen_seed, gen_out);
        if (*run) {
            run_algo.eps = arbodom::parse_rational(run_eps);
            return cmd_run(run_graph, run_algo, run_seed, run_trials, run_json, run_csv,
                           run_verify);
        }
        if (*verify) return cmd_verify(verify_graph, verify_result_path);
        if (*lb) return cmd_lb_construct(lb_base, lb_out);
        if (*bench) {
            run_experiment_to_file(load_config(bench_config));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
