#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "arbodom/oracle.hpp"
#include "arbodom/packing.hpp"
#include "arbodom/simulator.hpp"

namespace arbodom {

struct NonUnitWeights : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NotAForest : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DominatingSetResult {
    std::string algo;
    std::vector<int> members;
    Weight total_weight = 0;
    bool valid = false;
    PackingAssignment certificate;
    int rounds = 0;
    Rat claimed_factor{0};
    int iterations = 0;    // packing-growth iterations executed
    int phases = 0;        // gamma phases (randomized extension only)
    int max_message_bits = 0;
    long long total_messages = 0;
    Weight partial_weight = 0;      // weight of the tightness-selected part S
    std::vector<int> partial_members;
    int alpha_prime = -1;           // unknown-alpha: audited orientation out-degree
    long long max_cover_count = 0;  // randomized: max c_v over nodes
};

struct RunOptions {
    bool check_invariants = true;
    bool keep_trace = false;
};

struct DetNodeOutput {
    bool in_s = false;
    bool in_sp = false;
    bool dominated = false;
    NodePacking packing;
    int out_degree = -1;
    int alpha_hat = -1;

    bool operator==(const DetNodeOutput&) const = default;
};

namespace detail {

// flag bits for single-field payloads
constexpr std::uint64_t kJoinS = 1;   // sender joined S by tightness
constexpr std::uint64_t kJoinSp = 2;  // sender joined the extension set
constexpr std::uint64_t kSelect = 4;  // addressee is asked into the extension set
constexpr std::uint64_t kDom = 8;     // sender became dominated
constexpr std::uint64_t kPeel = 16;   // orientation peeling announcement

inline int neighbor_index(const std::vector<int>& sorted_ids, int id) {
    auto it = std::lower_bound(sorted_ids.begin(), sorted_ids.end(), id);
    return static_cast<int>(it - sorted_ids.begin());
}

}  // namespace detail

enum class ExtensionMode { none, select_tau, self_join };

/// Primal-dual partial dominating set with Delta known.
///
/// Schedule: weights are exchanged in round 1; round 2 sets
/// tau_v = min weight over N^+_v, initializes x_v = tau_v/(Delta+1) and
/// announces it. Each iteration then takes two rounds: a tightness round
/// where every u with X_u >= w_u/(1+eps) joins S, and a mark/raise round
/// where nodes dominated by the new members freeze while the rest set
/// x_v <- x_v(1+eps). The optional tail either adds the cheapest closed
/// neighbor of every uncovered node (select_tau) or the uncovered nodes
/// themselves (self_join).
///
/// Packing values travel symbolically as (tau, i) pairs meaning
/// x_v = tau_v (1+eps)^i / (Delta+1); receivers reconstruct exact
/// rationals locally, so every threshold comparison is exact.
class PartialDsProgram {
public:
    Rat eps;
    int iters = 0;
    int delta = 0;
    ExtensionMode extension = ExtensionMode::none;
    std::vector<Rat> eps_pow;

    PartialDsProgram(Rat eps_, int iters_, int delta_, ExtensionMode ext)
        : eps(std::move(eps_)), iters(iters_), delta(delta_), extension(ext) {
        eps_pow.assign(static_cast<std::size_t>(iters) + 2, Rat(1));
        for (std::size_t k = 1; k < eps_pow.size(); ++k) eps_pow[k] = eps_pow[k - 1] * (1 + eps);
    }

    enum class Phase { weights, tau_init, loop_a, loop_b, ext_select, ext_join, ext_marks };

    struct State {
        Phase phase = Phase::weights;
        int iter = 0;
        Weight w = 0;
        Weight tau = 0;
        int i = 0;
        bool in_s = false;
        bool in_sp = false;
        bool dominated = false;
        std::vector<Weight> nbr_w;
        std::vector<Weight> nbr_tau;
        std::vector<int> nbr_i;
    };
    using Output = DetNodeOutput;

    struct InitResult {
        State state;
        bool halt;
    };

    InitResult init(const NodeContext& ctx) const {
        State st;
        st.w = ctx.weight();
        st.nbr_w.assign(ctx.degree(), 0);
        st.nbr_tau.assign(ctx.degree(), 0);
        st.nbr_i.assign(ctx.degree(), 0);
        return {std::move(st), false};
    }

    bool on_round(State& st, const NodeContext& ctx, RoundIo& io) const {
        const auto& nbrs = ctx.neighbor_ids();
        switch (st.phase) {
            case Phase::weights:
                io.broadcast({static_cast<std::uint64_t>(st.w)});
                st.phase = Phase::tau_init;
                return false;

            case Phase::tau_init:
                st.tau = st.w;
                for (const Incoming& msg : io.inbox()) {
                    int idx = detail::neighbor_index(nbrs, msg.src);
                    st.nbr_w[idx] = static_cast<Weight>(msg.payload[0]);
                    st.tau = std::min(st.tau, st.nbr_w[idx]);
                }
                // neighbors' taus arrive with the first announcement below,
                // which every node sends before the first tightness test
                if (iters == 0) return begin_extension(st);
                io.broadcast({static_cast<std::uint64_t>(st.tau), 0});
                st.phase = Phase::loop_a;
                st.iter = 1;
                return false;

            case Phase::loop_a:
                absorb(st, nbrs, io);
                if (!st.in_s && tight(st)) {
                    st.in_s = true;
                    st.dominated = true;
                    io.broadcast({detail::kJoinS});
                }
                st.phase = Phase::loop_b;
                return false;

            case Phase::loop_b:
                absorb(st, nbrs, io);
                if (!st.dominated) {
                    st.i++;
                    io.broadcast(
                        {static_cast<std::uint64_t>(st.tau), static_cast<std::uint64_t>(st.i)});
                }
                if (st.iter == iters) return begin_extension(st);
                st.iter++;
                st.phase = Phase::loop_a;
                return false;

            case Phase::ext_select:
                absorb(st, nbrs, io);
                if (!st.dominated) {
                    int target = st.w == st.tau ? ctx.id() : -1;
                    for (std::size_t k = 0; k < nbrs.size(); ++k)
                        if (st.nbr_w[k] == st.tau && (target < 0 || nbrs[k] < target))
                            target = nbrs[k];
                    if (target == ctx.id()) {
                        st.in_sp = true;
                        st.dominated = true;
                        io.broadcast({detail::kJoinSp});
                    } else {
                        io.send(target, {detail::kSelect});
                    }
                }
                st.phase = Phase::ext_join;
                return false;

            case Phase::ext_join:
                for (const Incoming& msg : io.inbox()) {
                    if (msg.payload.size() != 1) continue;
                    if (msg.payload[0] & (detail::kJoinS | detail::kJoinSp)) st.dominated = true;
                    if ((msg.payload[0] & detail::kSelect) && !st.in_sp) {
                        st.in_sp = true;
                        st.dominated = true;
                        io.broadcast({detail::kJoinSp});
                    }
                }
                st.phase = Phase::ext_marks;
                return false;

            case Phase::ext_marks:
                absorb(st, nbrs, io);
                return true;
        }
        return true;
    }

    Output output(const State& st, const NodeContext&) const {
        Output out;
        out.in_s = st.in_s;
        out.in_sp = st.in_sp;
        out.dominated = st.dominated;
        out.packing = NodePacking{st.tau, st.i, 0, static_cast<Weight>(delta) + 1, st.dominated};
        return out;
    }

    static std::vector<NodePacking> packing_snapshot(const std::vector<State>& states, int delta) {
        std::vector<NodePacking> xs;
        xs.reserve(states.size());
        for (const State& st : states)
            xs.push_back({st.tau, st.i, 0, static_cast<Weight>(delta) + 1, st.dominated});
        return xs;
    }

private:
    void absorb(State& st, const std::vector<int>& nbrs, RoundIo& io) const {
        for (const Incoming& msg : io.inbox()) {
            if (msg.payload.size() == 2) {
                int idx = detail::neighbor_index(nbrs, msg.src);
                st.nbr_tau[idx] = static_cast<Weight>(msg.payload[0]);
                st.nbr_i[idx] = static_cast<int>(msg.payload[1]);
            } else if (msg.payload[0] & (detail::kJoinS | detail::kJoinSp)) {
                st.dominated = true;
            }
        }
    }

    // X_u >= w_u/(1+eps), cleared of denominators:
    // sum tau_v (1+eps)^{i_v} * (1+eps) >= w_u (Delta+1)
    bool tight(const State& st) const {
        Rat scaled = Rat(st.tau) * eps_pow[st.i];
        for (std::size_t k = 0; k < st.nbr_tau.size(); ++k)
            scaled += Rat(st.nbr_tau[k]) * eps_pow[st.nbr_i[k]];
        return scaled * eps_pow[1] >= Rat(st.w) * (delta + 1);
    }

    bool begin_extension(State& st) const {
        switch (extension) {
            case ExtensionMode::none:
                return true;
            case ExtensionMode::self_join:
                if (!st.dominated) {
                    st.in_sp = true;
                    st.dominated = true;
                }
                return true;
            case ExtensionMode::select_tau:
                st.phase = Phase::ext_select;
                return false;
        }
        return true;
    }
};

/// Two-round broadcast program computing tau_v = min weight over N^+_v.
class ComputeTauProgram {
public:
    struct State {
        int round = 0;
        Weight w = 0;
        Weight tau = 0;
    };
    using Output = Weight;

    struct InitResult {
        State state;
        bool halt;
    };

    InitResult init(const NodeContext& ctx) const {
        return {State{0, ctx.weight(), ctx.weight()}, ctx.degree() == 0};
    }

    bool on_round(State& st, const NodeContext&, RoundIo& io) const {
        if (++st.round == 1) {
            io.broadcast({static_cast<std::uint64_t>(st.w)});
            return false;
        }
        for (const Incoming& msg : io.inbox())
            st.tau = std::min(st.tau, static_cast<Weight>(msg.payload[0]));
        return true;
    }

    Output output(const State& st, const NodeContext&) const { return st.tau; }
};

/// Forest 3-approximation: all nodes of degree >= 2, the single node of a
/// 1-node component, and the lower-id endpoint of a 2-node component.
class TreeMdsProgram {
public:
    struct State {
        int round = 0;
        bool in_ds = false;
    };
    using Output = DetNodeOutput;

    struct InitResult {
        State state;
        bool halt;
    };

    InitResult init(const NodeContext& ctx) const {
        if (ctx.degree() == 0) return {State{0, true}, true};
        if (ctx.degree() >= 2) return {State{0, true}, false};
        return {State{}, false};
    }

    bool on_round(State& st, const NodeContext& ctx, RoundIo& io) const {
        if (++st.round == 1) {
            io.broadcast({static_cast<std::uint64_t>(ctx.degree())});
            return false;
        }
        if (ctx.degree() == 1) {
            int nbr_degree = static_cast<int>(io.inbox().at(0).payload[0]);
            if (nbr_degree == 1 && ctx.id() < io.inbox()[0].src) st.in_ds = true;
        }
        return true;
    }

    Output output(const State& st, const NodeContext&) const {
        Output out;
        out.in_sp = st.in_ds;
        out.dominated = true;
        return out;
    }
};

namespace detail {

/// Exact per-round feasibility: X_u <= w_u for every node, evaluated on a
/// symbolic packing snapshot. Throws on the first violation.
inline void require_feasible_round(const WeightedGraph& g, const std::vector<NodePacking>& xs,
                                   const PowCache& eps_pows, const PowCache& gamma_pows,
                                   int round) {
    auto value = [&](int v) {
        return Rat(xs[v].tau, xs[v].denom) * eps_pows[xs[v].mult_eps] *
               gamma_pows[xs[v].mult_gamma];
    };
    for (int u = 0; u < g.node_count(); ++u) {
        Rat total = value(u);
        for (int v : g.neighbors(u)) total += value(v);
        if (total > g.weight(u))
            throw std::logic_error("packing infeasible at node " + std::to_string(u) +
                                   " after round " + std::to_string(round));
    }
}

/// Exponents never decrease; frozen nodes never change at all.
inline void require_monotone(const std::vector<NodePacking>& prev,
                             const std::vector<NodePacking>& now, int round) {
    for (std::size_t v = 0; v < prev.size(); ++v) {
        if (now[v].mult_eps < prev[v].mult_eps || now[v].mult_gamma < prev[v].mult_gamma)
            throw std::logic_error("packing exponent decreased at node " + std::to_string(v) +
                                   " in round " + std::to_string(round));
        if (prev[v].frozen && (now[v].mult_eps != prev[v].mult_eps ||
                               now[v].mult_gamma != prev[v].mult_gamma ||
                               now[v].tau != prev[v].tau || !now[v].frozen))
            throw std::logic_error("frozen packing value changed at node " + std::to_string(v) +
                                   " in round " + std::to_string(round));
    }
}

inline std::vector<char> closed_neighborhood_mask(const WeightedGraph& g,
                                                  const std::vector<int>& s) {
    std::vector<char> mask(g.node_count(), 0);
    for (int v : s) {
        mask[v] = 1;
        for (int u : g.neighbors(v)) mask[u] = 1;
    }
    return mask;
}

inline int required_alpha(const WeightedGraph& g) {
    if (!g.declared_alpha()) throw InvalidParams("algorithm requires a declared arboricity bound");
    return *g.declared_alpha();
}

}  // namespace detail

/// Lemma 4.1 properties, checked exactly on a finished run:
///   (a) w_S (1/(1+eps) - lambda(alpha+1)) <= alpha * sum_{v in N^+_S} x_v
///   (b) x_v >= lambda tau_v off N^+_S, and x_v <= lambda tau_v on it.
inline void check_partial_properties(const WeightedGraph& g, const std::vector<int>& s,
                                     const PackingAssignment& x, const Rat& eps,
                                     const Rat& lambda, int alpha) {
    auto mask = detail::closed_neighborhood_mask(g, s);
    Rat covered_sum(0);
    for (int v = 0; v < g.node_count(); ++v)
        if (mask[v]) covered_sum += x.value_of(v);
    Rat w_s(0);
    for (int v : s) w_s += g.weight(v);
    if (w_s * (Rat(1) / (1 + eps) - lambda * (alpha + 1)) > Rat(alpha) * covered_sum)
        throw std::logic_error("partial dominating set property (a) violated");
    for (int v = 0; v < g.node_count(); ++v) {
        Rat xv = x.value_of(v);
        Rat bound = lambda * x.node[v].tau;
        if (!mask[v] && xv < bound)
            throw std::logic_error("partial dominating set property (b) violated at node " +
                                   std::to_string(v));
        if (mask[v] && xv > bound)
            throw std::logic_error("dominated node exceeds lambda*tau at node " +
                                   std::to_string(v));
    }
}

struct PartialDsOutcome {
    std::vector<int> s;
    PackingAssignment packing;
    std::vector<bool> dominated;
    int rounds = 0;
    int iterations = 0;
    int max_message_bits = 0;
    long long total_messages = 0;
};

/// Runs a program and wires in the exact per-round packing checks.
template <typename Program>
SimulationResult<typename Program::Output> run_with_packing_checks(
    const WeightedGraph& g, const Program& program, Knowns knowns, std::uint64_t seed,
    SimOptions opts, const Rat& eps, const Rat& gamma, bool check, int delta_for_snapshot) {
    if (!check) return run_synchronous(g, program, knowns, seed, opts);
    PowCache eps_pows(1 + eps);
    PowCache gamma_pows(gamma);
    std::vector<NodePacking> prev(g.node_count());
    auto hook = [&](int round, const std::vector<typename Program::State>& states) {
        auto xs = Program::packing_snapshot(states, delta_for_snapshot);
        detail::require_feasible_round(g, xs, eps_pows, gamma_pows, round);
        detail::require_monotone(prev, xs, round);
        prev = std::move(xs);
    };
    return run_synchronous(g, program, knowns, seed, opts, hook);
}

inline std::vector<Weight> compute_tau(const WeightedGraph& g) {
    auto result = run_synchronous(g, ComputeTauProgram{}, Knowns{}, 0, SimOptions{16});
    return result.per_node_output;
}

/// Lemma 4.1: partial dominating set plus a packing certificate with
/// properties (a) and (b). Runs exactly r iterations of the procedure.
inline PartialDsOutcome partial_dominating_set(const WeightedGraph& g, const Rat& eps,
                                               const Rat& lambda, RunOptions opts = {}) {
    int alpha = detail::required_alpha(g);
    require_valid_lambda(eps, lambda, alpha);
    AlgoParams params = derive_algo_params(eps, lambda, g.max_degree());

    PartialDsProgram program(eps, params.r, g.max_degree(), ExtensionMode::none);
    SimOptions sim{64LL * (2 * params.r + 10), opts.keep_trace};
    auto result = run_with_packing_checks(g, program, Knowns{false, true, true}, 0, sim, eps,
                                          Rat(1), opts.check_invariants, g.max_degree());

    PartialDsOutcome out;
    out.packing.eps = eps;
    out.packing.gamma = Rat(1);
    for (int v = 0; v < g.node_count(); ++v) {
        const DetNodeOutput& o = result.per_node_output[v];
        if (o.in_s) out.s.push_back(v);
        out.dominated.push_back(o.dominated);
        out.packing.node.push_back(o.packing);
    }
    out.rounds = result.rounds_executed;
    out.iterations = params.r;
    out.max_message_bits = result.max_message_bits;
    out.total_messages = result.total_messages;

    if (opts.check_invariants)
        check_partial_properties(g, out.s, out.packing, eps, lambda, alpha);
    return out;
}

namespace detail {

inline DominatingSetResult assemble_result(const WeightedGraph& g, std::string algo,
                                           std::vector<int> members, PackingAssignment cert,
                                           Rat claimed, bool check) {
    DominatingSetResult r;
    r.algo = std::move(algo);
    r.members = std::move(members);
    std::sort(r.members.begin(), r.members.end());
    for (int v : r.members) r.total_weight += g.weight(v);
    r.certificate = std::move(cert);
    r.claimed_factor = std::move(claimed);
    r.valid = is_dominating(g, r.members) && packing_feasible(g, r.certificate).feasible;
    if (check && !r.valid)
        throw std::logic_error("algorithm produced an invalid result on " + r.algo);
    return r;
}

}  // namespace detail

/// Theorem 1.1: deterministic (2*alpha+1)(1+eps)-approximation of minimum
/// weighted dominating set, with lambda = 1/((2*alpha+1)(1+eps)).
inline DominatingSetResult mds_deterministic(const WeightedGraph& g, const Rat& eps,
                                             RunOptions opts = {}) {
    int alpha = detail::required_alpha(g);
    if (eps <= 0 || eps >= 1) throw InvalidParams("eps must be in (0,1)");
    Rat lambda = Rat(1) / ((2 * alpha + 1) * (1 + eps));
    AlgoParams params = derive_algo_params(eps, lambda, g.max_degree());

    PartialDsProgram program(eps, params.r, g.max_degree(), ExtensionMode::select_tau);
    SimOptions sim{64LL * (2 * params.r + 10), opts.keep_trace};
    auto result = run_with_packing_checks(g, program, Knowns{false, true, true}, 0, sim, eps,
                                          Rat(1), opts.check_invariants, g.max_degree());

    PackingAssignment cert;
    cert.eps = eps;
    std::vector<int> members;
    Weight w_s = 0;
    for (int v = 0; v < g.node_count(); ++v) {
        const DetNodeOutput& o = result.per_node_output[v];
        if (o.in_s) w_s += g.weight(v);
        if (o.in_s || o.in_sp) members.push_back(v);
        cert.node.push_back(o.packing);
    }

    Rat claimed = Rat(2 * alpha + 1) * (1 + eps);
    auto r = detail::assemble_result(g, "det", std::move(members), std::move(cert), claimed,
                                     opts.check_invariants);
    r.rounds = result.rounds_executed;
    r.iterations = params.r;
    r.max_message_bits = result.max_message_bits;
    r.total_messages = result.total_messages;
    r.partial_weight = w_s;
    for (int v = 0; v < g.node_count(); ++v)
        if (result.per_node_output[v].in_s) r.partial_members.push_back(v);
    if (opts.check_invariants) {
        check_partial_properties(g, r.partial_members, r.certificate, eps, lambda, alpha);
        if (Rat(r.total_weight) > r.claimed_factor * r.certificate.sum())
            throw std::logic_error("weight exceeds claimed factor times certificate sum");
    }
    return r;
}

/// Section 3 warm-up for unit weights: S from the tightness procedure,
/// then every still-uncovered node joins wholesale.
inline DominatingSetResult mds_unweighted(const WeightedGraph& g, const Rat& eps,
                                          RunOptions opts = {}) {
    if (!g.has_unit_weights()) throw NonUnitWeights("mds_unweighted requires unit weights");
    int alpha = detail::required_alpha(g);
    if (eps <= 0 || eps >= 1) throw InvalidParams("eps must be in (0,1)");
    Rat lambda = Rat(1) / ((2 * alpha + 1) * (1 + eps));
    AlgoParams params = derive_algo_params(eps, lambda, g.max_degree());
    int iters = std::max(1, params.r);

    PartialDsProgram program(eps, iters, g.max_degree(), ExtensionMode::self_join);
    SimOptions sim{64LL * (2 * iters + 10), opts.keep_trace};
    auto result = run_with_packing_checks(g, program, Knowns{false, true, true}, 0, sim, eps,
                                          Rat(1), opts.check_invariants, g.max_degree());

    PackingAssignment cert;
    cert.eps = eps;
    std::vector<int> members;
    std::vector<int> s;
    Weight w_s = 0;
    for (int v = 0; v < g.node_count(); ++v) {
        const DetNodeOutput& o = result.per_node_output[v];
        if (o.in_s) {
            s.push_back(v);
            w_s += 1;
        }
        if (o.in_s || o.in_sp) members.push_back(v);
        cert.node.push_back(o.packing);
    }

    Rat claimed = Rat(2 * alpha + 1) * (1 + eps);
    auto r = detail::assemble_result(g, "unweighted", std::move(members), std::move(cert), claimed,
                                     opts.check_invariants);
    r.rounds = result.rounds_executed;
    r.iterations = iters;
    r.max_message_bits = result.max_message_bits;
    r.total_messages = result.total_messages;
    r.partial_weight = w_s;
    r.partial_members = s;
    if (opts.check_invariants) {
        // every node off N^+_S ends with x_v >= 1/((2 alpha + 1)(1 + eps))
        auto mask = detail::closed_neighborhood_mask(g, s);
        for (int v = 0; v < g.node_count(); ++v)
            if (!mask[v] && r.certificate.value_of(v) < lambda)
                throw std::logic_error("uncovered node with small packing value");
        if (Rat(r.total_weight) > r.claimed_factor * r.certificate.sum())
            throw std::logic_error("weight exceeds claimed factor times certificate sum");
    }
    return r;
}

/// Appendix A: forest 3-approximation in one communication round.
inline DominatingSetResult tree_mds(const WeightedGraph& g, RunOptions opts = {}) {
    if (!g.has_unit_weights()) throw NonUnitWeights("tree_mds requires unit weights");
    if (g.node_count() > 1 && degeneracy(g) > 1) throw NotAForest("tree_mds requires a forest");

    auto result = run_synchronous(g, TreeMdsProgram{}, Knowns{}, 0,
                                  SimOptions{16, opts.keep_trace});
    PackingAssignment cert;  // the all-zero packing
    cert.node.assign(g.node_count(), NodePacking{0, 0, 0, 1, true});
    std::vector<int> members;
    for (int v = 0; v < g.node_count(); ++v)
        if (result.per_node_output[v].in_sp) members.push_back(v);

    auto r = detail::assemble_result(g, "tree", std::move(members), std::move(cert), Rat(3),
                                     opts.check_invariants);
    r.rounds = result.rounds_executed;
    r.max_message_bits = result.max_message_bits;
    r.total_messages = result.total_messages;
    return r;
}

}  // namespace arbodom
