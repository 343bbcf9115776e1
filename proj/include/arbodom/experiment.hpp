#pragma once

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "arbodom/graph_io.hpp"
#include "arbodom/mds_rand.hpp"
#include "arbodom/mds_unknowns.hpp"
#include "arbodom/oracle.hpp"

namespace arbodom {

struct GeneratorSpec {
    std::string family;  // bounded-arboricity | star | tree | lower-bound | named | file
    int n = 1;
    int alpha = 1;
    Weight weight_max = 1;
    int delta = 0;       // star
    std::string base;    // lower-bound / named: k2 k3 k4 c5 petersen path:N cycle:N
    std::string path;    // file
};

struct AlgorithmSpec {
    std::string name;  // det | unweighted | unknown-delta | unknown-alpha | tree | rand | general
    Rat eps{1, 2};
    int t = 1;
    int k = 1;
};

struct ExperimentConfig {
    GeneratorSpec generator;
    AlgorithmSpec algorithm;
    std::uint64_t seed_start = 1;
    int seed_count = 1;
    int trials = 1;
    std::string output;
    bool verify = true;  // oracle comparison when tractable
};

inline WeightedGraph named_graph(const std::string& name) {
    if (name == "k2") return complete_graph(2);
    if (name == "k3") return complete_graph(3);
    if (name == "k4") return complete_graph(4);
    if (name == "c5") return cycle_graph(5);
    if (name == "petersen") return petersen_graph();
    auto colon = name.find(':');
    if (colon != std::string::npos) {
        int n = std::stoi(name.substr(colon + 1));
        if (name.substr(0, colon) == "path") return path_graph(n);
        if (name.substr(0, colon) == "cycle") return cycle_graph(n);
    }
    throw std::invalid_argument("unknown named graph: " + name);
}

inline WeightedGraph build_instance(const GeneratorSpec& spec, std::uint64_t seed) {
    if (spec.family == "bounded-arboricity")
        return generate_bounded_arboricity(spec.n, spec.alpha, spec.weight_max, seed);
    if (spec.family == "star") return generate_star(spec.delta);
    if (spec.family == "tree") return generate_tree(spec.n, seed, spec.weight_max);
    if (spec.family == "lower-bound")
        return build_lower_bound_graph(named_graph(spec.base)).graph;
    if (spec.family == "named") return named_graph(spec.base);
    if (spec.family == "file") return load_graph(spec.path);
    throw std::invalid_argument("unknown generator family: " + spec.family);
}

inline DominatingSetResult run_algorithm(const WeightedGraph& g, const AlgorithmSpec& a,
                                         std::uint64_t seed, RunOptions opts = {}) {
    if (a.name == "det") return mds_deterministic(g, a.eps, opts);
    if (a.name == "unweighted") return mds_unweighted(g, a.eps, opts);
    if (a.name == "unknown-delta") return mds_unknown_delta(g, a.eps, opts);
    if (a.name == "unknown-alpha") return mds_unknown_alpha(g, a.eps, opts);
    if (a.name == "tree") return tree_mds(g, opts);
    if (a.name == "rand") return mds_randomized(g, a.t, seed, opts);
    if (a.name == "general") return mds_general(g, a.k, seed, opts);
    throw std::invalid_argument("unknown algorithm: " + a.name);
}

inline GeneratorSpec generator_from_json(const nlohmann::json& j) {
    GeneratorSpec s;
    s.family = j.at("family").get<std::string>();
    s.n = j.value("n", 1);
    s.alpha = j.value("alpha", 1);
    s.weight_max = j.value("weight_max", Weight{1});
    s.delta = j.value("delta", 0);
    s.base = j.value("base", std::string{});
    s.path = j.value("path", std::string{});
    return s;
}

inline AlgorithmSpec algorithm_from_json(const nlohmann::json& j) {
    AlgorithmSpec a;
    a.name = j.at("name").get<std::string>();
    if (j.contains("eps")) a.eps = parse_rational(j.at("eps").get<std::string>());
    a.t = j.value("t", 1);
    a.k = j.value("k", 1);
    return a;
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    c.generator = generator_from_json(j.at("generator"));
    c.algorithm = algorithm_from_json(j.at("algorithm"));
    if (j.contains("seeds")) {
        c.seed_start = j.at("seeds").value("start", 1ULL);
        c.seed_count = j.at("seeds").value("count", 1);
    }
    c.trials = j.value("trials", 1);
    c.output = j.value("output", std::string{});
    c.verify = j.value("verify", true);
    return c;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    nlohmann::json j;
    in >> j;
    return config_from_json(j);
}

inline const char* kCsvHeader =
    "seed,trial,algo,n,m,alpha,delta,ds_weight,opt_weight,ratio,bound,rounds,"
    "max_message_bits,max_cv,within_bound,error";

/// One row per (seed, trial). The ratio and bound columns are 20-digit
/// decimal renderings of exact rationals; within_bound is decided on the
/// exact values, never on the rendering. Failures land in the error
/// column and the sweep keeps going.
inline std::string experiment_row(const ExperimentConfig& config, std::uint64_t seed, int trial) {
    std::vector<std::string> f(16);
    f[0] = std::to_string(seed);
    f[1] = std::to_string(trial);
    f[2] = config.algorithm.name;
    try {
        WeightedGraph g = build_instance(config.generator, seed);
        std::uint64_t run_seed = rng_u64(seed, 0x747269616c, trial);
        DominatingSetResult result = run_algorithm(g, config.algorithm, run_seed);
        f[3] = std::to_string(g.node_count());
        f[4] = std::to_string(g.edge_count());
        if (g.declared_alpha()) f[5] = std::to_string(*g.declared_alpha());
        f[6] = std::to_string(g.max_degree());
        f[7] = std::to_string(result.total_weight);
        f[10] = decimal_string(result.claimed_factor, 20);
        f[11] = std::to_string(result.rounds);
        f[12] = std::to_string(result.max_message_bits);
        f[13] = std::to_string(result.max_cover_count);
        if (config.verify && g.node_count() <= 26) {
            auto oracle = exact_mds(g);
            f[8] = std::to_string(oracle.opt_weight);
            f[9] = decimal_string(Rat(result.total_weight) / oracle.opt_weight, 20);
            bool within = Rat(result.total_weight) <= result.claimed_factor * oracle.opt_weight;
            f[14] = within ? "1" : "0";
        }
    } catch (const std::exception& e) {
        std::string what = e.what();
        for (char& ch : what)
            if (ch == ',' || ch == '\n') ch = ';';
        f[15] = what;
    }
    std::string row = f[0];
    for (std::size_t i = 1; i < f.size(); ++i) {
        row += ",";
        row += f[i];
    }
    return row;
}

inline int experiment_thread_cap() {
    if (const char* env = std::getenv("ARBODOM_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) return cap;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs the sweep, fanning trials out over threads; rows are buffered and
/// emitted in (seed, trial) order so concurrency never changes the file.
inline std::string run_experiment_csv(const ExperimentConfig& config) {
    const long long tasks = static_cast<long long>(config.seed_count) * config.trials;
    std::vector<std::string> rows(static_cast<std::size_t>(std::max(tasks, 0LL)));

    int workers = std::min<long long>(experiment_thread_cap(), std::max(tasks, 1LL));
    std::atomic<long long> next{0};
    auto work = [&] {
        for (;;) {
            long long task = next.fetch_add(1);
            if (task >= tasks) return;
            std::uint64_t seed = config.seed_start + static_cast<std::uint64_t>(task / config.trials);
            int trial = static_cast<int>(task % config.trials);
            rows[static_cast<std::size_t>(task)] = experiment_row(config, seed, trial);
        }
    };
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();

    std::string out = kCsvHeader;
    out += "\n";
    for (const std::string& row : rows) {
        out += row;
        out += "\n";
    }
    return out;
}

inline void run_experiment_to_file(const ExperimentConfig& config) {
    std::string csv = run_experiment_csv(config);
    if (config.output.empty()) throw std::runtime_error("experiment config has no output path");
    std::ofstream out(config.output);
    if (!out) throw std::runtime_error("cannot open for write: " + config.output);
    out << csv;
}

}  // namespace arbodom
