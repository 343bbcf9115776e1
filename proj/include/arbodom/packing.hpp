#pragma once

#include <stdexcept>
#include <vector>

#include "arbodom/graph.hpp"
#include "arbodom/rational.hpp"

namespace arbodom {

struct InvalidParams : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// One node's dual value in symbolic form:
///   x_v = tau * (1+eps)^mult_eps * gamma^mult_gamma / denom.
/// Exponents only ever grow; frozen nodes stop changing entirely.
struct NodePacking {
    Weight tau = 0;
    int mult_eps = 0;
    int mult_gamma = 0;
    Weight denom = 1;
    bool frozen = false;

    bool operator==(const NodePacking&) const = default;
};

struct PackingAssignment {
    Rat eps{0};
    Rat gamma{1};
    std::vector<NodePacking> node;

    Rat value_of(int v) const {
        const NodePacking& p = node[v];
        Rat x(p.tau, p.denom);
        if (p.mult_eps > 0) x *= rat_pow(1 + eps, p.mult_eps);
        if (p.mult_gamma > 0) x *= rat_pow(gamma, p.mult_gamma);
        return x;
    }

    Rat sum() const {
        Rat total(0);
        for (std::size_t v = 0; v < node.size(); ++v) total += value_of(static_cast<int>(v));
        return total;
    }
};

/// X_u: the packing mass over the closed neighborhood of u.
inline Rat packing_closed_sum(const WeightedGraph& g, const PackingAssignment& x, int u) {
    Rat total = x.value_of(u);
    for (int v : g.neighbors(u)) total += x.value_of(v);
    return total;
}

/// eps, lambda, and the derived iteration count r with
///   (1+eps)^(r-1)/(Delta+1) <= lambda < (1+eps)^r/(Delta+1)
/// when lambda >= 1/(Delta+1); r = 0 otherwise.
struct AlgoParams {
    Rat eps;
    Rat lambda;
    int r = 0;
};

inline AlgoParams derive_algo_params(const Rat& eps, const Rat& lambda, int delta) {
    if (eps <= 0 || eps >= 1) throw InvalidParams("eps must be in (0,1)");
    if (lambda <= 0) throw InvalidParams("lambda must be positive");
    AlgoParams p{eps, lambda, 0};
    Rat scaled = lambda * (delta + 1);
    if (scaled >= 1) p.r = static_cast<int>(floor_log(1 + eps, scaled)) + 1;
    return p;
}

/// Validates lambda < 1/((alpha+1)(1+eps)), the partial-set precondition.
inline void require_valid_lambda(const Rat& eps, const Rat& lambda, int alpha) {
    if (lambda <= 0 || lambda * (alpha + 1) * (1 + eps) >= 1)
        throw InvalidParams("lambda must satisfy 0 < lambda < 1/((alpha+1)(1+eps))");
}

}  // namespace arbodom
