#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "arbodom/mds_det.hpp"

namespace arbodom {

struct InvalidPacking : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CoverTally {
    std::vector<long long> c;     // covering numbers; 0 for nodes covered by S
    std::vector<int> first_phase; // -1 when never newly covered by S'
    std::vector<int> first_iter;
};

struct ExtendOutcome {
    std::vector<int> s_prime;
    CoverTally tally;
    PackingAssignment final_packing;  // includes the inter-phase gamma rescales
    int rounds = 0;
    int phases = 0;
    int iters_per_phase = 0;
    int max_message_bits = 0;
    long long total_messages = 0;
};

/// Smallest exponent e >= 0 with base^e >= value (value >= 1, base > 1).
inline int ceil_log(const Rat& base, const Rat& value) {
    long f = floor_log(base, value);
    if (f < 0) return 0;
    return rat_pow(base, static_cast<unsigned long>(f)) == value ? static_cast<int>(f)
                                                                 : static_cast<int>(f) + 1;
}

/// Smallest z/2^20 whose root_exp-th power is >= value, verified in exact
/// integer arithmetic (float only seeds the search).
inline Rat approx_root_upper(long long value, int root_exp) {
    if (value < 1 || root_exp < 1) throw InvalidParams("approx_root_upper needs positive inputs");
    const long long scale = 1LL << 20;
    double guess = std::pow(static_cast<double>(value), 1.0 / root_exp) * scale;
    BigInt target = BigInt(value) * boost::multiprecision::pow(BigInt(2), 20u * root_exp);
    BigInt z = BigInt(std::max<long long>(1, static_cast<long long>(guess) - 4));
    while (boost::multiprecision::pow(z, static_cast<unsigned>(root_exp)) < target) ++z;
    return Rat(z, scale);
}

struct RandNodeOutput {
    bool in_s = false;
    bool in_sp = false;
    bool dominated = false;
    NodePacking packing;
    long long c_v = 0;
    int first_phase = -1;
    int first_iter = -1;

    bool operator==(const RandNodeOutput&) const = default;
};

/// Lemma 4.4 sampling extension. Near-tight non-members (X_u over the
/// still-uncovered part of N^+_u at least gamma^-1 w_u) are sampled with a
/// probability that grows by gamma per iteration and reaches 1, for
/// r = ceil(log_gamma(Delta+1)) + 1 iterations per phase; between phases
/// the packing values of all non-members rise by gamma. Each iteration is
/// two rounds: a sampling round announcing joins, then a mark round
/// announcing cover transitions.
class RandomizedExtensionProgram {
public:
    Rat gamma;
    Rat eps;
    int t_phases = 1;
    int r_iters = 1;
    std::vector<Rat> p_schedule;  // p_k = min(gamma^{k-1}/(Delta+1), 1)
    PowCache eps_pow;
    PowCache gamma_pow;

    struct NodeInit {
        bool in_s = false;
        bool dominated = false;
        NodePacking x;
    };
    std::vector<NodeInit> seeds;

    RandomizedExtensionProgram(Rat gamma_, Rat eps_, int t, int r, int delta,
                               std::vector<NodeInit> seeds_)
        : gamma(std::move(gamma_)),
          eps(std::move(eps_)),
          t_phases(t),
          r_iters(r),
          eps_pow(1 + eps),
          gamma_pow(gamma),
          seeds(std::move(seeds_)) {
        for (int k = 1; k <= r_iters; ++k) {
            Rat p = rat_pow(gamma, static_cast<unsigned long>(k - 1)) / (delta + 1);
            p_schedule.push_back(std::min(p, Rat(1)));
        }
    }

    struct State {
        int round = 0;
        int phase = 1;
        int iter = 1;
        bool in_s = false;
        bool in_sp = false;
        bool dominated = false;
        bool uncovered_at_iter_start = false;
        bool self_joined_this_iter = false;
        bool counted = false;
        long long c_v = 0;
        int first_phase = -1;
        int first_iter = -1;
        NodePacking x;
        std::vector<NodePacking> nbr_x;
        std::vector<char> nbr_member;
        std::vector<char> nbr_dominated;
    };
    using Output = RandNodeOutput;

    struct InitResult {
        State state;
        bool halt;
    };

    InitResult init(const NodeContext& ctx) const {
        State st;
        const NodeInit& me = seeds[ctx.id()];
        st.in_s = me.in_s;
        st.dominated = me.dominated;
        st.counted = me.dominated;  // covered by S: c_v stays 0
        st.x = me.x;
        st.nbr_x.assign(ctx.degree(), NodePacking{});
        st.nbr_member.assign(ctx.degree(), 0);
        st.nbr_dominated.assign(ctx.degree(), 0);
        return {std::move(st), false};
    }

    bool on_round(State& st, const NodeContext& ctx, RoundIo& io) const {
        ++st.round;
        const auto& nbrs = ctx.neighbor_ids();
        if (st.round == 1) {
            std::uint64_t status = (st.in_s ? 1u : 0u) | (st.dominated ? 2u : 0u);
            io.broadcast({static_cast<std::uint64_t>(st.x.tau),
                          static_cast<std::uint64_t>(st.x.mult_eps), status});
            return false;
        }

        const bool sampling_round = (st.round % 2) == 0;
        if (sampling_round) {
            absorb_status_and_covers(st, nbrs, io);
            if (st.phase > 1 && st.iter == 1) rescale_non_members(st);
            st.uncovered_at_iter_start = !st.dominated;
            st.self_joined_this_iter = false;
            if (!st.in_s && !st.in_sp && residual_tight(st, ctx)) {
                if (ctx.coin(p_schedule[st.iter - 1], st.phase, st.iter)) {
                    st.in_sp = true;
                    st.self_joined_this_iter = true;
                    st.dominated = true;
                    io.broadcast({detail::kJoinSp});
                }
            }
            return false;
        }

        // mark round: count co-samplers that covered us, announce transitions
        long long new_dominators = st.self_joined_this_iter ? 1 : 0;
        bool newly_covered_by_nbr = false;
        for (const Incoming& msg : io.inbox()) {
            int idx = detail::neighbor_index(nbrs, msg.src);
            std::uint64_t f = msg.payload[0];
            if (f & detail::kJoinSp) {
                st.nbr_member[idx] = 1;
                st.nbr_dominated[idx] = 1;
                new_dominators++;
                newly_covered_by_nbr = true;
            } else if (f & detail::kDom) {
                st.nbr_dominated[idx] = 1;
            }
        }
        if (st.uncovered_at_iter_start && !st.counted && new_dominators > 0) {
            st.c_v = new_dominators;
            st.counted = true;
            st.first_phase = st.phase;
            st.first_iter = st.iter;
        }
        if (newly_covered_by_nbr && !st.dominated) {
            st.dominated = true;
            io.broadcast({detail::kDom});  // self-joins were announced already
        }

        bool last = st.phase == t_phases && st.iter == r_iters;
        if (st.iter == r_iters) {
            st.iter = 1;
            st.phase++;
        } else {
            st.iter++;
        }
        return last;
    }

    Output output(const State& st, const NodeContext&) const {
        Output out;
        out.in_s = st.in_s;
        out.in_sp = st.in_sp;
        out.dominated = st.dominated;
        out.packing = st.x;
        out.c_v = st.c_v;
        out.first_phase = st.first_phase;
        out.first_iter = st.first_iter;
        return out;
    }

    static std::vector<NodePacking> packing_snapshot(const std::vector<State>& states, int) {
        std::vector<NodePacking> xs;
        xs.reserve(states.size());
        for (const State& st : states) xs.push_back(st.x);
        return xs;
    }

private:
    void absorb_status_and_covers(State& st, const std::vector<int>& nbrs, RoundIo& io) const {
        for (const Incoming& msg : io.inbox()) {
            int idx = detail::neighbor_index(nbrs, msg.src);
            if (msg.payload.size() == 3) {
                st.nbr_x[idx] =
                    NodePacking{static_cast<Weight>(msg.payload[0]),
                                static_cast<int>(msg.payload[1]), 0, st.x.denom, false};
                std::uint64_t status = msg.payload[2];
                if (status & 1) st.nbr_member[idx] = 1;
                if (status & 2) st.nbr_dominated[idx] = 1;
            } else {
                std::uint64_t f = msg.payload[0];
                if (f & detail::kJoinSp) {
                    st.nbr_member[idx] = 1;
                    st.nbr_dominated[idx] = 1;
                } else if (f & detail::kDom) {
                    st.nbr_dominated[idx] = 1;
                }
            }
        }
    }

    // the inter-phase raise applies to every node outside S and S',
    // covered or not; each node also tracks it for its neighbors
    void rescale_non_members(State& st) const {
        if (!st.in_s && !st.in_sp) st.x.mult_gamma++;
        for (std::size_t k = 0; k < st.nbr_x.size(); ++k)
            if (!st.nbr_member[k]) st.nbr_x[k].mult_gamma++;
    }

    Rat value_of(const NodePacking& p) const {
        return Rat(p.tau, p.denom) * eps_pow[p.mult_eps] * gamma_pow[p.mult_gamma];
    }

    // X_u over the still-uncovered part of N^+_u, tested against
    // gamma^-1 w_u as gamma * X_u >= w_u
    bool residual_tight(const State& st, const NodeContext& ctx) const {
        Rat total(0);
        if (!st.dominated) total += value_of(st.x);
        for (std::size_t k = 0; k < st.nbr_x.size(); ++k)
            if (!st.nbr_dominated[k]) total += value_of(st.nbr_x[k]);
        return total * gamma >= ctx.weight();
    }
};

/// Lemma 4.4 driver: validates the input packing (feasible, and
/// x_v >= lambda tau_v off N^+_S), runs t = max(1, ceil(log_gamma 1/lambda))
/// phases and asserts that S together with the sampled set covers
/// everything. The per-round hook asserts residual feasibility and, right
/// before each rescale, X_u <= gamma^-1 w_u for every non-member.
inline ExtendOutcome extend_randomized(const WeightedGraph& g, const std::vector<int>& s,
                                       const PackingAssignment& packing, const Rat& lambda,
                                       const Rat& gamma, std::uint64_t seed,
                                       RunOptions opts = {}) {
    if (gamma <= 1) throw InvalidParams("gamma must be greater than 1");
    if (lambda <= 0) throw InvalidParams("lambda must be positive");
    if (static_cast<int>(packing.node.size()) != g.node_count())
        throw InvalidPacking("packing size mismatch");
    if (!packing_feasible(g, packing).feasible)
        throw InvalidPacking("input packing is infeasible");

    auto covered = detail::closed_neighborhood_mask(g, s);
    for (int v = 0; v < g.node_count(); ++v) {
        if (!covered[v] && packing.value_of(v) < lambda * packing.node[v].tau)
            throw InvalidPacking("packing value below lambda*tau at uncovered node " +
                                 std::to_string(v));
    }

    const int delta = g.max_degree();
    const int t = std::max(1, lambda >= 1 ? 0 : ceil_log(gamma, Rat(1) / lambda));
    const int r = ceil_log(gamma, Rat(delta) + 1) + 1;

    std::vector<RandomizedExtensionProgram::NodeInit> seeds(g.node_count());
    std::vector<char> in_s_mask(g.node_count(), 0);
    for (int v : s) in_s_mask[v] = 1;
    for (int v = 0; v < g.node_count(); ++v) {
        seeds[v] = {in_s_mask[v] != 0, covered[v] != 0, packing.node[v]};
        // the working packing is the residual subproblem's: the certificate
        // keeps the input values, so the freeze marks do not carry over
        seeds[v].x.frozen = false;
    }

    RandomizedExtensionProgram program(gamma, packing.eps, t, r, delta, std::move(seeds));
    SimOptions sim{2LL * t * r + 16, opts.keep_trace};

    SimulationResult<RandNodeOutput> result;
    if (opts.check_invariants) {
        PowCache eps_pows(1 + packing.eps);
        PowCache gamma_pows(gamma);
        std::vector<NodePacking> prev(g.node_count());
        auto hook = [&](int round, const std::vector<RandomizedExtensionProgram::State>& states) {
            auto xs = RandomizedExtensionProgram::packing_snapshot(states, 0);
            detail::require_monotone(prev, xs, round);
            prev = std::move(xs);
            auto value = [&](const NodePacking& p) {
                return Rat(p.tau, p.denom) * eps_pows[p.mult_eps] * gamma_pows[p.mult_gamma];
            };
            // phase boundaries: the mark round of iteration r of each phase
            bool phase_end = round >= 2 && round % 2 == 1 && ((round - 1) / 2) % r == 0;
            for (int u = 0; u < g.node_count(); ++u) {
                const auto& su = states[u];
                if (su.in_s || su.in_sp) continue;
                Rat residual(0);
                if (!su.dominated) residual += value(su.x);
                for (int v : g.neighbors(u))
                    if (!states[v].dominated) residual += value(states[v].x);
                if (residual > g.weight(u))
                    throw std::logic_error("residual packing infeasible at node " +
                                           std::to_string(u));
                if (phase_end && residual * gamma > g.weight(u))
                    throw std::logic_error("pre-rescale residual above gamma^-1 w at node " +
                                           std::to_string(u));
            }
        };
        result = run_synchronous(g, program, Knowns{false, true, false}, seed, sim, hook);
    } else {
        result = run_synchronous(g, program, Knowns{false, true, false}, seed, sim);
    }

    ExtendOutcome out;
    out.tally.c.resize(g.node_count());
    out.tally.first_phase.resize(g.node_count());
    out.tally.first_iter.resize(g.node_count());
    out.final_packing.eps = packing.eps;
    out.final_packing.gamma = gamma;
    std::vector<int> full = s;
    for (int v = 0; v < g.node_count(); ++v) {
        const RandNodeOutput& o = result.per_node_output[v];
        if (o.in_sp) {
            out.s_prime.push_back(v);
            full.push_back(v);
        }
        out.tally.c[v] = o.c_v;
        out.tally.first_phase[v] = o.first_phase;
        out.tally.first_iter[v] = o.first_iter;
        out.final_packing.node.push_back(o.packing);
    }
    out.rounds = result.rounds_executed;
    out.phases = t;
    out.iters_per_phase = r;
    out.max_message_bits = result.max_message_bits;
    out.total_messages = result.total_messages;

    // the composition covers everything; this is proved, not assumed
    if (!is_dominating(g, full))
        throw std::logic_error("extension finished without covering every node");
    return out;
}

namespace detail {

inline int max_t_for_alpha(int alpha) {
    if (alpha <= 1) return 1;
    // smallest k with k*log2(alpha) >= alpha, i.e. alpha^k >= 2^alpha
    BigInt two_pow = boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(alpha));
    int k = 1;
    while (boost::multiprecision::pow(BigInt(alpha), static_cast<unsigned>(k)) < two_pow) ++k;
    return k;
}

}  // namespace detail

/// Theorem 1.2 schedule: eps = 1/(4t), lambda = eps/(alpha+1),
/// gamma = max(2, alpha^(1/2t)) taken as the smallest binary rational of
/// the form z/2^20 at least the real root, so every later comparison stays
/// exact while all upper bounds still hold.
inline DominatingSetResult mds_randomized(const WeightedGraph& g, int t, std::uint64_t seed,
                                          RunOptions opts = {}) {
    int alpha = detail::required_alpha(g);
    if (t < 1 || t > detail::max_t_for_alpha(alpha))
        throw InvalidParams("t must satisfy 1 <= t <= max(1, ceil(alpha/log2 alpha))");

    Rat eps = Rat(1, 4LL * t);
    Rat lambda = eps / (alpha + 1);
    Rat gamma = std::max(Rat(2), approx_root_upper(alpha, 2 * t));

    auto partial = partial_dominating_set(g, eps, lambda, opts);
    auto ext = extend_randomized(g, partial.s, partial.packing, lambda, gamma,
                                 rng_u64(seed, 0x657874), opts);

    std::vector<int> members = partial.s;
    members.insert(members.end(), ext.s_prime.begin(), ext.s_prime.end());
    Rat claimed = Rat(alpha) / (Rat(1) / (1 + eps) - lambda * (alpha + 1)) +
                  gamma * (gamma + 1) * ext.phases;
    auto r = detail::assemble_result(g, "rand", std::move(members), partial.packing, claimed,
                                     opts.check_invariants);
    r.rounds = partial.rounds + ext.rounds;
    r.iterations = partial.iterations;
    r.phases = ext.phases;
    r.max_message_bits = std::max(partial.max_message_bits, ext.max_message_bits);
    r.total_messages = partial.total_messages + ext.total_messages;
    for (int v : partial.s) r.partial_weight += g.weight(v);
    for (long long c : ext.tally.c) r.max_cover_count = std::max(r.max_cover_count, c);

    if (opts.check_invariants) {
        // deterministic part of the Theorem 1.2 chain, exact:
        // w_S <= (alpha + alpha/t) * sum_v x_v
        Rat bound = (Rat(alpha) + Rat(alpha, t)) * r.certificate.sum();
        if (Rat(r.partial_weight) > bound)
            throw std::logic_error("partial weight exceeds (alpha + alpha/t) * packing sum");
    }
    return r;
}

/// Theorem 1.3: general graphs, no arboricity assumption. S is empty,
/// lambda = 1/(Delta+1), gamma = Delta^(1/k) (clamped above 1 for
/// degenerate Delta <= 1), and the packing starts at tau_v/(Delta+1).
inline DominatingSetResult mds_general(const WeightedGraph& g, int k, std::uint64_t seed,
                                       RunOptions opts = {}) {
    if (k < 1) throw InvalidParams("k must be at least 1");
    const int delta = g.max_degree();
    Rat gamma = delta >= 2 ? approx_root_upper(delta, k) : Rat(0);
    Rat floor_gamma = Rat(1) + Rat(1, 1 << 20);
    if (gamma < floor_gamma) gamma = floor_gamma;
    Rat lambda = Rat(1, delta + 1);

    auto taus = compute_tau(g);
    PackingAssignment packing;  // tau_v/(Delta+1), no eps exponents
    for (int v = 0; v < g.node_count(); ++v)
        packing.node.push_back(NodePacking{taus[v], 0, 0, static_cast<Weight>(delta) + 1, false});

    auto ext = extend_randomized(g, {}, packing, lambda, gamma, rng_u64(seed, 0x67656e), opts);

    Rat claimed = gamma * (gamma + 1) * ext.phases;
    auto r = detail::assemble_result(g, "general", ext.s_prime, packing, claimed,
                                     opts.check_invariants);
    r.rounds = 2 + ext.rounds;
    r.phases = ext.phases;
    r.iterations = 0;
    r.max_message_bits = ext.max_message_bits;
    r.total_messages = ext.total_messages;
    for (long long c : ext.tally.c) r.max_cover_count = std::max(r.max_cover_count, c);
    return r;
}

}  // namespace arbodom
