#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "arbodom/graph.hpp"
#include "arbodom/lower_bound.hpp"
#include "arbodom/packing.hpp"

namespace arbodom {

struct TooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct InfeasiblePacking : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotDominating : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OracleResult {
    Weight opt_weight = 0;
    std::vector<int> witness;
    std::uint64_t explored = 0;
};

inline bool is_dominating(const WeightedGraph& g, const std::vector<int>& s) {
    std::vector<char> covered(g.node_count(), 0);
    for (int v : s) {
        covered[v] = 1;
        for (int u : g.neighbors(v)) covered[u] = 1;
    }
    return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

namespace detail {

constexpr int kOracleCap = 26;

struct MdsSearch {
    const WeightedGraph* g;
    int n;
    std::vector<int> order;            // descending degree, ascending weight, ascending id
    std::vector<std::uint32_t> closed; // closed neighborhood masks
    long long scale;                   // lcm(1..n+1), makes the fractional bound integral
    Weight best_weight;
    std::vector<int> best_set;
    std::uint64_t explored = 0;

    explicit MdsSearch(const WeightedGraph& graph) : g(&graph), n(graph.node_count()) {
        order.resize(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (graph.degree(a) != graph.degree(b)) return graph.degree(a) > graph.degree(b);
            if (graph.weight(a) != graph.weight(b)) return graph.weight(a) < graph.weight(b);
            return a < b;
        });
        closed.assign(n, 0);
        for (int v = 0; v < n; ++v) {
            closed[v] = std::uint32_t{1} << v;
            for (int u : graph.neighbors(v)) closed[v] |= std::uint32_t{1} << u;
        }
        scale = 1;
        for (long long k = 2; k <= n + 1; ++k) scale = std::lcm(scale, k);
    }

    std::uint32_t full_mask() const {
        return n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
    }

    // Fractional cover bound: every undominated node must be covered, and a
    // node v of weight w covering c undominated nodes contributes w/c per
    // covered node, so sum_u min_v w_v/|cover_v| lower-bounds any completion.
    long long fractional_bound(std::uint32_t undominated, std::uint32_t excluded) const {
        long long bound = 0;
        for (int u = 0; u < n; ++u) {
            if (!(undominated >> u & 1)) continue;
            long long best = -1;
            std::uint32_t cands = closed[u] & ~excluded;
            for (int v = 0; v < n; ++v) {
                if (!(cands >> v & 1)) continue;
                int cover = std::popcount(closed[v] & undominated);
                long long score = g->weight(v) * (scale / cover);
                if (best < 0 || score < best) best = score;
            }
            if (best < 0) return -1;  // some node cannot be dominated on this branch
            bound += best;
        }
        return bound;
    }

    void greedy_seed() {
        std::uint32_t undominated = full_mask();
        Weight total = 0;
        std::vector<int> set;
        while (undominated) {
            int pick = -1;
            long long pick_score = 0;
            for (int v = 0; v < n; ++v) {
                int cover = std::popcount(closed[v] & undominated);
                if (cover == 0) continue;
                long long score = g->weight(v) * (scale / cover);
                if (pick < 0 || score < pick_score) {
                    pick = v;
                    pick_score = score;
                }
            }
            set.push_back(pick);
            total += g->weight(pick);
            undominated &= ~closed[pick];
        }
        std::sort(set.begin(), set.end());
        best_weight = total;
        best_set = std::move(set);
    }

    void search(std::uint32_t undominated, std::uint32_t excluded, Weight weight,
                std::vector<int>& chosen) {
        ++explored;
        if (!undominated) {
            if (weight < best_weight) {
                best_weight = weight;
                best_set = chosen;
                std::sort(best_set.begin(), best_set.end());
            }
            return;
        }
        long long bound = fractional_bound(undominated, excluded);
        if (bound < 0) return;
        if (weight * scale + bound >= best_weight * scale) return;

        // branch on the first undominated node in the fixed order; any
        // solution must pick one of its closed neighbors
        int u = -1;
        for (int cand : order) {
            if (undominated >> cand & 1) {
                u = cand;
                break;
            }
        }
        std::uint32_t cands = closed[u] & ~excluded;
        std::uint32_t newly_excluded = 0;
        for (int v : order) {
            if (!(cands >> v & 1)) continue;
            chosen.push_back(v);
            search(undominated & ~closed[v], excluded | newly_excluded, weight + g->weight(v),
                   chosen);
            chosen.pop_back();
            newly_excluded |= std::uint32_t{1} << v;
        }
    }
};

}  // namespace detail

/// Exact minimum weighted dominating set by branch and bound (n <= 26).
inline OracleResult exact_mds(const WeightedGraph& g) {
    if (g.node_count() > detail::kOracleCap)
        throw TooLarge("exact_mds is capped at n <= " + std::to_string(detail::kOracleCap));
    detail::MdsSearch search(g);
    search.greedy_seed();
    std::vector<int> chosen;
    search.search(search.full_mask(), 0, 0, chosen);
    OracleResult result;
    result.opt_weight = search.best_weight;
    result.witness = search.best_set;
    result.explored = search.explored;
    return result;
}

struct PackingCheck {
    bool feasible = true;
    int first_violation = -1;
};

/// Exact feasibility: X_u <= w_u for every u; reports the first violator.
inline PackingCheck packing_feasible(const WeightedGraph& g, const PackingAssignment& x) {
    for (int u = 0; u < g.node_count(); ++u) {
        if (packing_closed_sum(g, x, u) > g.weight(u)) return {false, u};
    }
    return {};
}

/// Weak duality: a feasible packing's total never exceeds OPT.
inline bool duality_check(const WeightedGraph& g, const PackingAssignment& x,
                          const OracleResult& oracle) {
    if (!packing_feasible(g, x).feasible)
        throw InfeasiblePacking("duality_check requires a feasible packing");
    return x.sum() <= oracle.opt_weight;
}

struct FractionalVC {
    std::vector<Rat> y;

    Rat sum() const {
        Rat total(0);
        for (const Rat& v : y) total += v;
        return total;
    }
};

inline bool fractional_vc_feasible(const WeightedGraph& g, const FractionalVC& fvc) {
    for (auto [u, v] : g.edges())
        if (fvc.y[u] + fvc.y[v] < 1) return false;
    return true;
}

/// Converts a dominating set of H into a fractional vertex cover of the
/// base graph: middle nodes are replaced by their lower-id endpoint, each
/// copy then induces a vertex cover of the base, and y_v averages the
/// copy memberships over the Delta^2 copies.
inline FractionalVC ds_to_fractional_vc(const LowerBoundGraph& h, const std::vector<int>& s) {
    if (!is_dominating(h.graph, s)) throw NotDominating("input set does not dominate H");

    const long long copies = static_cast<long long>(h.base_delta) * h.base_delta;
    std::vector<long long> copy_count(h.base_n, 0);
    std::vector<std::vector<char>> in_copy(static_cast<std::size_t>(copies),
                                           std::vector<char>(h.base_n, 0));
    for (int node : s) {
        const NodeRole& role = h.roles[node];
        int copy_index = -1;
        int original = -1;
        switch (role.kind) {
            case RoleKind::copy:
                copy_index = role.copy_index;
                original = role.original;
                break;
            case RoleKind::middle:
                copy_index = role.copy_index;
                original = std::min(role.endpoint_u, role.endpoint_v);
                break;
            case RoleKind::t_node:
                continue;  // hub nodes do not map into any copy
        }
        if (!in_copy[copy_index][original]) {
            in_copy[copy_index][original] = 1;
            copy_count[original]++;
        }
    }

    FractionalVC fvc;
    fvc.y.reserve(h.base_n);
    for (int v = 0; v < h.base_n; ++v) fvc.y.emplace_back(copy_count[v], copies);
    return fvc;
}

/// Optimal fractional vertex cover value for tiny graphs (n <= 10) via
/// half-integral enumeration; VC relaxations always have a half-integral
/// optimum.
inline Rat mfvc_opt(const WeightedGraph& g) {
    const int n = g.node_count();
    if (n > 10) throw TooLarge("mfvc_opt is capped at n <= 10");
    std::vector<int> halves(n, 0);  // y_v in {0, 1/2, 1} stored as 0,1,2
    long long best = -1;
    for (;;) {
        bool feasible = true;
        for (auto [u, v] : g.edges()) {
            if (halves[u] + halves[v] < 2) {
                feasible = false;
                break;
            }
        }
        if (feasible) {
            long long total = std::accumulate(halves.begin(), halves.end(), 0LL);
            if (best < 0 || total < best) best = total;
        }
        int pos = 0;
        while (pos < n && halves[pos] == 2) halves[pos++] = 0;
        if (pos == n) break;
        halves[pos]++;
    }
    return Rat(best, 2);
}

}  // namespace arbodom
