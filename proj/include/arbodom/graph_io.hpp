#pragma once

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "arbodom/graph.hpp"
#include "arbodom/lower_bound.hpp"

namespace arbodom {

// Text graph format:
//   line 1: n m c
//   lines 2..n+1: one weight per node in id order
//   following m lines: u v with u < v
// Lines starting with '#' are comments. A "# alpha K" comment carries the
// declared arboricity bound through save/load.

inline void write_graph(std::ostream& out, const WeightedGraph& g) {
    if (g.declared_alpha()) out << "# alpha " << *g.declared_alpha() << "\n";
    out << g.node_count() << " " << g.edge_count() << " " << g.weight_cap_exponent() << "\n";
    for (int v = 0; v < g.node_count(); ++v) out << g.weight(v) << "\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
}

inline WeightedGraph read_graph(std::istream& in) {
    std::optional<int> alpha;
    std::string line;
    auto next_data_line = [&]() -> std::string {
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            if (line[0] == '#') {
                std::istringstream cs(line.substr(1));
                std::string key;
                int value;
                if (cs >> key >> value && key == "alpha") alpha = value;
                continue;
            }
            return line;
        }
        throw std::runtime_error("graph file truncated");
    };

    int n, c;
    long long m;
    {
        std::istringstream hs(next_data_line());
        if (!(hs >> n >> m >> c)) throw std::runtime_error("bad graph header");
    }
    std::vector<Weight> weights(n);
    for (int v = 0; v < n; ++v) {
        std::istringstream ws(next_data_line());
        if (!(ws >> weights[v])) throw std::runtime_error("bad weight line");
    }
    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long e = 0; e < m; ++e) {
        std::istringstream es(next_data_line());
        int u, v;
        if (!(es >> u >> v)) throw std::runtime_error("bad edge line");
        if (u >= v) throw std::runtime_error("edge endpoints must satisfy u < v");
        edges.emplace_back(u, v);
    }
    return WeightedGraph::build(n, std::move(edges), std::move(weights), alpha, c);
}

// Role sidecar: one line per node, "id role payload".
//   copy:   id copy <copy_index> <original>
//   middle: id middle <copy_index> <u> <v>
//   t node: id tnode <original>

inline void write_roles(std::ostream& out, const LowerBoundGraph& h) {
    for (std::size_t id = 0; id < h.roles.size(); ++id) {
        const NodeRole& r = h.roles[id];
        switch (r.kind) {
            case RoleKind::copy:
                out << id << " copy " << r.copy_index << " " << r.original << "\n";
                break;
            case RoleKind::middle:
                out << id << " middle " << r.copy_index << " " << r.endpoint_u << " "
                    << r.endpoint_v << "\n";
                break;
            case RoleKind::t_node:
                out << id << " tnode " << r.original << "\n";
                break;
        }
    }
}

inline std::vector<NodeRole> read_roles(std::istream& in, int n) {
    std::vector<NodeRole> roles(n);
    std::vector<char> seen(n, 0);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        long long id;
        std::string kind;
        if (!(ls >> id >> kind)) throw std::runtime_error("bad role line");
        if (id < 0 || id >= n) throw std::runtime_error("role id out of range");
        NodeRole r;
        if (kind == "copy") {
            r.kind = RoleKind::copy;
            if (!(ls >> r.copy_index >> r.original)) throw std::runtime_error("bad copy role");
        } else if (kind == "middle") {
            r.kind = RoleKind::middle;
            if (!(ls >> r.copy_index >> r.endpoint_u >> r.endpoint_v))
                throw std::runtime_error("bad middle role");
        } else if (kind == "tnode") {
            r.kind = RoleKind::t_node;
            if (!(ls >> r.original)) throw std::runtime_error("bad tnode role");
        } else {
            throw std::runtime_error("unknown role kind: " + kind);
        }
        roles[id] = r;
        seen[id] = 1;
    }
    for (int v = 0; v < n; ++v)
        if (!seen[v]) throw std::runtime_error("missing role for node " + std::to_string(v));
    return roles;
}

inline void save_graph(const std::string& path, const WeightedGraph& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for write: " + path);
    write_graph(out, g);
}

inline WeightedGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return read_graph(in);
}

inline void save_lower_bound(const std::string& path, const LowerBoundGraph& h) {
    save_graph(path, h.graph);
    std::ofstream out(path + ".roles");
    if (!out) throw std::runtime_error("cannot open for write: " + path + ".roles");
    write_roles(out, h);
}

}  // namespace arbodom
