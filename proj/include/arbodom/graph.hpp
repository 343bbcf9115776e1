#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "arbodom/rng.hpp"

namespace arbodom {

using Weight = long long;

/// Immutable simple undirected graph with positive integer node weights.
/// Node ids are dense integers 0..n-1. An optional declared arboricity
/// bound is carried alongside; it is checkable via exact_orientation.
class WeightedGraph {
public:
    static WeightedGraph build(int n, std::vector<std::pair<int, int>> edges,
                               std::vector<Weight> weights,
                               std::optional<int> declared_alpha = std::nullopt,
                               int weight_cap_exponent = 3) {
        if (n < 1) throw std::invalid_argument("graph must have at least one node");
        if (static_cast<int>(weights.size()) != n)
            throw std::invalid_argument("weight list size mismatch");
        Weight cap = 1;
        {
            // w_v <= n^c; read as max(n,2)^c so one-node graphs keep nontrivial weights
            Weight base = std::max<Weight>(n, 2);
            for (int i = 0; i < weight_cap_exponent; ++i) cap *= base;
        }
        for (Weight w : weights) {
            if (w < 1) throw std::invalid_argument("weights must be positive integers");
            if (w > cap) throw std::invalid_argument("weight exceeds n^c cap");
        }
        for (auto& [u, v] : edges) {
            if (u == v) throw std::invalid_argument("self-loop");
            if (u < 0 || v < 0 || u >= n || v >= n)
                throw std::invalid_argument("edge endpoint out of range");
            if (u > v) std::swap(u, v);
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            throw std::invalid_argument("parallel edge");

        WeightedGraph g;
        g.n_ = n;
        g.weights_ = std::move(weights);
        g.edges_ = std::move(edges);
        g.alpha_ = declared_alpha;
        g.weight_cap_exponent_ = weight_cap_exponent;
        g.adj_.assign(n, {});
        for (auto [u, v] : g.edges_) {
            g.adj_[u].push_back(v);
            g.adj_[v].push_back(u);
        }
        for (auto& nbrs : g.adj_) std::sort(nbrs.begin(), nbrs.end());
        return g;
    }

    int node_count() const { return n_; }
    long long edge_count() const { return static_cast<long long>(edges_.size()); }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    Weight weight(int v) const { return weights_[v]; }
    const std::vector<Weight>& weights() const { return weights_; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    std::optional<int> declared_alpha() const { return alpha_; }
    int weight_cap_exponent() const { return weight_cap_exponent_; }

    int max_degree() const {
        int d = 0;
        for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
        return d;
    }

    bool has_unit_weights() const {
        return std::all_of(weights_.begin(), weights_.end(), [](Weight w) { return w == 1; });
    }

    bool adjacent(int u, int v) const {
        return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
    }

    WeightedGraph with_declared_alpha(int alpha) const {
        WeightedGraph g = *this;
        g.alpha_ = alpha;
        return g;
    }

private:
    int n_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<Weight> weights_;
    std::vector<std::pair<int, int>> edges_;
    std::optional<int> alpha_;
    int weight_cap_exponent_ = 3;
};

/// Direction assignment covering every edge exactly once. Edge i of
/// g.edges() points first->second iff forward[i].
struct Orientation {
    std::vector<char> forward;
    std::vector<int> out_degree;

    int max_out_degree() const {
        int d = 0;
        for (int x : out_degree) d = std::max(d, x);
        return d;
    }

    std::vector<std::vector<int>> out_neighbors(const WeightedGraph& g) const {
        std::vector<std::vector<int>> out(g.node_count());
        const auto& es = g.edges();
        for (std::size_t i = 0; i < es.size(); ++i) {
            if (forward[i])
                out[es[i].first].push_back(es[i].second);
            else
                out[es[i].second].push_back(es[i].first);
        }
        return out;
    }
};

/// Decides k-orientability by augmenting-path reorientation. Starts from
/// the arbitrary low->high orientation; while some node exceeds out-degree
/// k, searches (BFS in node-id order) along out-edges for a node with
/// out-degree < k and reverses the path. If the search exhausts the
/// reachable set, that set has density > k and no k-orientation exists.
inline std::optional<Orientation> exact_orientation(const WeightedGraph& g, int k) {
    if (k < 0) throw std::invalid_argument("k must be nonnegative");
    const auto& es = g.edges();
    const int n = g.node_count();
    const int m = static_cast<int>(es.size());

    Orientation o;
    o.forward.assign(m, 1);
    o.out_degree.assign(n, 0);
    for (auto [u, v] : es) {
        (void)v;
        o.out_degree[u]++;
    }

    // incidence: node -> indices of edges touching it
    std::vector<std::vector<int>> inc(n);
    for (int i = 0; i < m; ++i) {
        inc[es[i].first].push_back(i);
        inc[es[i].second].push_back(i);
    }

    auto head = [&](int e) { return o.forward[e] ? es[e].second : es[e].first; };
    auto tail = [&](int e) { return o.forward[e] ? es[e].first : es[e].second; };

    for (;;) {
        int start = -1;
        for (int v = 0; v < n; ++v) {
            if (o.out_degree[v] > k) {
                start = v;
                break;
            }
        }
        if (start < 0) return o;

        std::vector<int> via_edge(n, -1);
        std::vector<char> seen(n, 0);
        std::deque<int> queue{start};
        seen[start] = 1;
        int found = -1;
        while (!queue.empty() && found < 0) {
            int v = queue.front();
            queue.pop_front();
            for (int e : inc[v]) {
                if (tail(e) != v) continue;
                int w = head(e);
                if (seen[w]) continue;
                seen[w] = 1;
                via_edge[w] = e;
                if (o.out_degree[w] < k) {
                    found = w;
                    break;
                }
                queue.push_back(w);
            }
        }
        if (found < 0) return std::nullopt;

        // reverse the path start -> found
        int v = found;
        while (v != start) {
            int e = via_edge[v];
            int prev = tail(e);
            o.forward[e] = !o.forward[e];
            v = prev;
        }
        o.out_degree[start]--;
        o.out_degree[found]++;
    }
}

/// Min-degree peeling; returns the max residual degree seen at removal.
inline int degeneracy(const WeightedGraph& g) {
    const int n = g.node_count();
    std::vector<int> deg(n);
    std::vector<char> alive(n, 1);
    for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
    int result = 0;
    for (int step = 0; step < n; ++step) {
        int pick = -1;
        for (int v = 0; v < n; ++v)
            if (alive[v] && (pick < 0 || deg[v] < deg[pick])) pick = v;
        result = std::max(result, deg[pick]);
        alive[pick] = 0;
        for (int u : g.neighbors(pick))
            if (alive[u]) deg[u]--;
    }
    return result;
}

namespace detail {

/// Uniform labeled tree on n nodes from a Prüfer sequence keyed by seed.
inline std::vector<std::pair<int, int>> random_tree_edges(int n, std::uint64_t seed,
                                                          std::uint64_t stream) {
    std::vector<std::pair<int, int>> edges;
    if (n < 2) return edges;
    if (n == 2) {
        edges.emplace_back(0, 1);
        return edges;
    }
    std::vector<int> prufer(n - 2);
    for (int i = 0; i < n - 2; ++i)
        prufer[i] = static_cast<int>(rng_range(0, n - 1, seed, stream, 0x7072, i));
    std::vector<int> deg(n, 1);
    for (int x : prufer) deg[x]++;
    std::set<int> leaves;
    for (int v = 0; v < n; ++v)
        if (deg[v] == 1) leaves.insert(v);
    for (int x : prufer) {
        int leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        edges.emplace_back(std::min(leaf, x), std::max(leaf, x));
        if (--deg[x] == 1) leaves.insert(x);
    }
    int a = *leaves.begin();
    int b = *std::next(leaves.begin());
    edges.emplace_back(std::min(a, b), std::max(a, b));
    return edges;
}

inline std::vector<Weight> random_weights(int n, Weight weight_max, std::uint64_t seed) {
    std::vector<Weight> w(n);
    for (int v = 0; v < n; ++v)
        w[v] = static_cast<Weight>(rng_range(1, static_cast<std::uint64_t>(weight_max), seed,
                                             0x77656967, v));
    return w;
}

}  // namespace detail

/// K_{1,delta}: center node 0 plus delta leaves, unit weights.
inline WeightedGraph generate_star(int delta) {
    if (delta < 0) throw std::invalid_argument("delta must be nonnegative");
    std::vector<std::pair<int, int>> edges;
    for (int leaf = 1; leaf <= delta; ++leaf) edges.emplace_back(0, leaf);
    return WeightedGraph::build(delta + 1, std::move(edges),
                                std::vector<Weight>(delta + 1, 1), 1);
}

/// Uniform random labeled tree (single node for n = 1).
inline WeightedGraph generate_tree(int n, std::uint64_t seed, Weight weight_max = 1) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    return WeightedGraph::build(n, detail::random_tree_edges(n, seed, 0),
                                detail::random_weights(n, weight_max, seed), 1);
}

/// Union of alpha random forests (random trees with each edge kept with
/// probability 7/8), deduplicated; weights uniform in [1, weight_max].
/// The construction guarantees an orientation with out-degree <= alpha.
inline WeightedGraph generate_bounded_arboricity(int n, int alpha, Weight weight_max,
                                                 std::uint64_t seed) {
    if (n < 1 || alpha < 1 || weight_max < 1)
        throw std::invalid_argument("n, alpha, weight_max must be positive");
    std::set<std::pair<int, int>> edge_set;
    for (int f = 0; f < alpha; ++f) {
        auto tree = detail::random_tree_edges(n, seed, static_cast<std::uint64_t>(f) + 1);
        for (std::size_t i = 0; i < tree.size(); ++i) {
            if (rng_u64(seed, 0x64656c, f, i) % 8 == 0) continue;  // subtree deletion
            edge_set.insert(tree[i]);
        }
    }
    std::vector<std::pair<int, int>> edges(edge_set.begin(), edge_set.end());
    return WeightedGraph::build(n, std::move(edges), detail::random_weights(n, weight_max, seed),
                                alpha);
}

inline WeightedGraph complete_graph(int k) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < k; ++u)
        for (int v = u + 1; v < k; ++v) edges.emplace_back(u, v);
    return WeightedGraph::build(k, std::move(edges), std::vector<Weight>(k, 1));
}

inline WeightedGraph cycle_graph(int k) {
    if (k < 3) throw std::invalid_argument("cycle needs at least 3 nodes");
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < k; ++v) edges.emplace_back(std::min(v, (v + 1) % k), std::max(v, (v + 1) % k));
    return WeightedGraph::build(k, std::move(edges), std::vector<Weight>(k, 1));
}

inline WeightedGraph path_graph(int k) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v + 1 < k; ++v) edges.emplace_back(v, v + 1);
    return WeightedGraph::build(k, std::move(edges), std::vector<Weight>(k, 1), 1);
}

inline WeightedGraph petersen_graph() {
    std::vector<std::pair<int, int>> edges;
    for (int v = 0; v < 5; ++v) {
        edges.emplace_back(std::min(v, (v + 1) % 5), std::max(v, (v + 1) % 5));      // outer cycle
        edges.emplace_back(5 + std::min(v, (v + 2) % 5), 5 + std::max(v, (v + 2) % 5));  // pentagram
        edges.emplace_back(v, v + 5);                                                // spokes
    }
    return WeightedGraph::build(10, std::move(edges), std::vector<Weight>(10, 1));
}

}  // namespace arbodom
