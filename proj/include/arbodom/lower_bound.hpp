#pragma once

#include <stdexcept>
#include <vector>

#include "arbodom/graph.hpp"

namespace arbodom {

enum class RoleKind { copy, middle, t_node };

/// Provenance tag per node of the lower-bound graph H: which copy a node
/// belongs to and which base node/edge it came from.
struct NodeRole {
    RoleKind kind = RoleKind::copy;
    int copy_index = -1;   // copy and middle nodes
    int original = -1;     // copy and t nodes: base node id
    int endpoint_u = -1;   // middle nodes: base edge endpoints, u < v
    int endpoint_v = -1;

    bool operator==(const NodeRole&) const = default;
};

struct LowerBoundGraph {
    WeightedGraph graph;
    int base_n = 0;
    int base_m = 0;
    int base_delta = 0;
    std::vector<NodeRole> roles;
};

/// Builds H from a simple unit-weighted base graph G with max degree D:
/// D^2 disjoint copies of G with every copy edge subdivided by a middle
/// node, plus one hub node per base node adjacent to all its copies.
/// H has D^2(n+m)+n nodes, D^2(2m+n) edges, and arboricity at most 2.
inline LowerBoundGraph build_lower_bound_graph(const WeightedGraph& g) {
    const int n = g.node_count();
    const int m = static_cast<int>(g.edge_count());
    if (m < 1) throw std::invalid_argument("base graph must have at least one edge");
    if (!g.has_unit_weights()) throw std::invalid_argument("base graph must be unit-weighted");

    const int delta = g.max_degree();
    const long long copies = static_cast<long long>(delta) * delta;
    const long long block = n + m;  // nodes per copy: n originals + m middles
    const long long total_nodes = copies * block + n;

    auto copy_id = [&](long long i, int v) { return static_cast<int>(i * block + v); };
    auto middle_id = [&](long long i, int e) { return static_cast<int>(i * block + n + e); };
    auto t_id = [&](int v) { return static_cast<int>(copies * block + v); };

    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(copies) * (2 * m + n));
    std::vector<NodeRole> roles(static_cast<std::size_t>(total_nodes));

    for (long long i = 0; i < copies; ++i) {
        for (int v = 0; v < n; ++v)
            roles[copy_id(i, v)] = NodeRole{RoleKind::copy, static_cast<int>(i), v, -1, -1};
        const auto& es = g.edges();
        for (int e = 0; e < m; ++e) {
            auto [u, v] = es[e];
            roles[middle_id(i, e)] =
                NodeRole{RoleKind::middle, static_cast<int>(i), -1, u, v};
            edges.emplace_back(copy_id(i, u), middle_id(i, e));
            edges.emplace_back(copy_id(i, v), middle_id(i, e));
        }
    }
    for (int v = 0; v < n; ++v) {
        roles[t_id(v)] = NodeRole{RoleKind::t_node, -1, v, -1, -1};
        for (long long i = 0; i < copies; ++i) edges.emplace_back(copy_id(i, v), t_id(v));
    }

    LowerBoundGraph h;
    h.graph = WeightedGraph::build(static_cast<int>(total_nodes), std::move(edges),
                                   std::vector<Weight>(total_nodes, 1), 2);
    h.base_n = n;
    h.base_m = m;
    h.base_delta = delta;
    h.roles = std::move(roles);
    return h;
}

}  // namespace arbodom
