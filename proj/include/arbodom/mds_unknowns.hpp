#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "arbodom/mds_det.hpp"

namespace arbodom {

/// Primal-dual dominating set for the settings where Delta (and possibly
/// alpha) is unknown to the nodes.
///
/// Both variants run the tightness/raise loop with an extra step at the
/// start of each iteration: any uncovered node whose packing value has
/// passed lambda*tau_v pulls the cheapest node of its closed neighborhood
/// into the set. Since no node can tell locally when the loop would end,
/// nodes run until their whole closed neighborhood is covered, announcing
/// cover transitions so neighbors can stop too.
///
/// unknown_delta initializes x_v = tau_v / max_{u in N^+_v} |N^+_u|.
/// unknown_alpha first orients edges by synchronized peeling over doubled
/// degree guesses, estimates alpha locally as the largest out-degree in
/// the closed neighborhood, and uses a per-node lambda with x_v = 1/(n+1).
class AdaptiveDsProgram {
public:
    enum class Mode { unknown_delta, unknown_alpha };

    Mode mode;
    Rat eps;
    Rat lambda;           // global threshold (unknown_delta only)
    int guesses = 0;      // orientation schedule (unknown_alpha only)
    int rounds_per_guess = 0;
    PowCache eps_pow;

    AdaptiveDsProgram(Mode m, Rat eps_, Rat lambda_, int guesses_ = 0, int rounds_per_guess_ = 0)
        : mode(m),
          eps(std::move(eps_)),
          lambda(std::move(lambda_)),
          guesses(guesses_),
          rounds_per_guess(rounds_per_guess_),
          eps_pow(1 + eps) {}

    enum class Phase { exchange, init_x, orient, outdeg, alpha_init, loop_a, loop_b };

    struct State {
        Phase phase = Phase::exchange;
        int round = 0;
        Weight w = 0;
        Weight tau = 0;
        Weight denom = 1;
        int i = 0;
        Rat lambda_v{0};
        bool in_s = false;
        bool in_sp = false;
        bool dominated = false;
        bool announced = false;
        bool select_sent = false;
        // neighbor caches, indexed like ctx.neighbor_ids()
        std::vector<Weight> nbr_w;
        std::vector<Weight> nbr_tau;
        std::vector<Weight> nbr_denom;
        std::vector<int> nbr_i;
        std::vector<char> nbr_dominated;
        // orientation bookkeeping (unknown_alpha)
        bool peeled = false;
        int peel_round = -1;
        std::vector<int> nbr_peel_round;
        int known_peeled = 0;
        int out_degree = -1;
        int alpha_hat = -1;
    };
    using Output = DetNodeOutput;

    struct InitResult {
        State state;
        bool halt;
    };

    InitResult init(const NodeContext& ctx) const {
        State st;
        st.w = ctx.weight();
        int d = ctx.degree();
        st.nbr_w.assign(d, 0);
        st.nbr_tau.assign(d, 0);
        st.nbr_denom.assign(d, 1);
        st.nbr_i.assign(d, 0);
        st.nbr_dominated.assign(d, 0);
        st.nbr_peel_round.assign(d, -1);
        if (mode == Mode::unknown_alpha) st.phase = Phase::orient;
        return {std::move(st), false};
    }

    bool on_round(State& st, const NodeContext& ctx, RoundIo& io) const {
        ++st.round;
        const auto& nbrs = ctx.neighbor_ids();
        std::uint64_t flags_out = 0;

        switch (st.phase) {
            case Phase::exchange:
                io.broadcast({static_cast<std::uint64_t>(st.w),
                              static_cast<std::uint64_t>(ctx.degree()) + 1});
                st.phase = Phase::init_x;
                return false;

            case Phase::init_x: {
                st.tau = st.w;
                st.denom = ctx.degree() + 1;
                for (const Incoming& msg : io.inbox()) {
                    int idx = detail::neighbor_index(nbrs, msg.src);
                    st.nbr_w[idx] = static_cast<Weight>(msg.payload[0]);
                    st.tau = std::min(st.tau, st.nbr_w[idx]);
                    st.denom = std::max(st.denom, static_cast<Weight>(msg.payload[1]));
                }
                io.broadcast({static_cast<std::uint64_t>(st.tau),
                              static_cast<std::uint64_t>(st.denom), 0});
                st.lambda_v = lambda;
                st.phase = Phase::loop_a;
                return false;
            }

            case Phase::orient: {
                absorb_peels(st, nbrs, io);
                if (!st.peeled) {
                    int guess_index = std::min((st.round - 1) / rounds_per_guess, guesses - 1);
                    long long allowance = 1LL << guess_index;
                    // residual <= (2+eps)*A, cleared of the denominator of eps
                    BigInt lhs = BigInt(ctx.degree() - st.known_peeled) * denominator(eps);
                    BigInt rhs = BigInt(allowance) * (2 * denominator(eps) + numerator(eps));
                    if (lhs <= rhs) {
                        st.peeled = true;
                        st.peel_round = st.round;
                        io.broadcast({detail::kPeel});
                    }
                }
                if (st.round == guesses * rounds_per_guess) st.phase = Phase::outdeg;
                return false;
            }

            case Phase::outdeg: {
                absorb_peels(st, nbrs, io);
                // edge u-v points u->v iff u peeled strictly earlier, ties to
                // the smaller id; every edge gets exactly one direction
                st.out_degree = 0;
                for (std::size_t k = 0; k < nbrs.size(); ++k) {
                    int their = st.nbr_peel_round[k];
                    if (their > st.peel_round || (their == st.peel_round && nbrs[k] > ctx.id()))
                        st.out_degree++;
                }
                io.broadcast({static_cast<std::uint64_t>(st.out_degree)});
                st.phase = Phase::alpha_init;
                return false;
            }

            case Phase::alpha_init: {
                st.alpha_hat = st.out_degree;
                for (const Incoming& msg : io.inbox())
                    st.alpha_hat = std::max(st.alpha_hat, static_cast<int>(msg.payload[0]));
                st.lambda_v = Rat(1) / ((2 * st.alpha_hat + 1) * (1 + eps));
                st.tau = 1;
                st.denom = ctx.n() + 1;
                for (std::size_t k = 0; k < nbrs.size(); ++k) {
                    st.nbr_w[k] = 1;
                    st.nbr_tau[k] = 1;
                    st.nbr_denom[k] = st.denom;
                }
                run_loop_a(st, ctx, io, flags_out);
                finish_round(st, io, flags_out);
                st.phase = Phase::loop_b;
                return false;
            }

            case Phase::loop_a:
                absorb_loop(st, nbrs, io, flags_out);
                run_loop_a(st, ctx, io, flags_out);
                finish_round(st, io, flags_out);
                st.phase = Phase::loop_b;
                return halt_ready(st);

            case Phase::loop_b:
                absorb_loop(st, nbrs, io, flags_out);
                if (!st.dominated) {
                    st.i++;
                    io.broadcast({static_cast<std::uint64_t>(st.tau),
                                  static_cast<std::uint64_t>(st.i)});
                }
                finish_round(st, io, flags_out);
                st.phase = Phase::loop_a;
                return halt_ready(st);
        }
        return true;
    }

    Output output(const State& st, const NodeContext&) const {
        Output out;
        out.in_s = st.in_s;
        out.in_sp = st.in_sp;
        out.dominated = st.dominated;
        out.packing = NodePacking{st.tau, st.i, 0, st.denom, st.dominated};
        out.out_degree = st.out_degree;
        out.alpha_hat = st.alpha_hat;
        return out;
    }

    static std::vector<NodePacking> packing_snapshot(const std::vector<State>& states, int) {
        std::vector<NodePacking> xs;
        xs.reserve(states.size());
        for (const State& st : states) xs.push_back({st.tau, st.i, 0, st.denom, st.dominated});
        return xs;
    }

private:
    void absorb_peels(State& st, const std::vector<int>& nbrs, RoundIo& io) const {
        for (const Incoming& msg : io.inbox()) {
            int idx = detail::neighbor_index(nbrs, msg.src);
            if (st.nbr_peel_round[idx] < 0) {
                st.nbr_peel_round[idx] = st.round - 1;
                st.known_peeled++;
            }
        }
    }

    void mark_nbr_dominated(State& st, int idx) const {
        if (!st.nbr_dominated[idx]) st.nbr_dominated[idx] = 1;
    }

    void absorb_loop(State& st, const std::vector<int>& nbrs, RoundIo& io,
                     std::uint64_t& flags_out) const {
        for (const Incoming& msg : io.inbox()) {
            int idx = detail::neighbor_index(nbrs, msg.src);
            if (msg.payload.size() == 3) {
                st.nbr_tau[idx] = static_cast<Weight>(msg.payload[0]);
                st.nbr_denom[idx] = static_cast<Weight>(msg.payload[1]);
                st.nbr_i[idx] = static_cast<int>(msg.payload[2]);
            } else if (msg.payload.size() == 2) {
                st.nbr_tau[idx] = static_cast<Weight>(msg.payload[0]);
                st.nbr_i[idx] = static_cast<int>(msg.payload[1]);
            } else {
                std::uint64_t f = msg.payload[0];
                if (f & (detail::kJoinS | detail::kJoinSp | detail::kDom))
                    mark_nbr_dominated(st, idx);
                if (f & (detail::kJoinS | detail::kJoinSp)) st.dominated = true;
                if ((f & detail::kSelect) && !st.in_s && !st.in_sp) {
                    st.in_sp = true;
                    st.dominated = true;
                    st.announced = true;
                    flags_out |= detail::kJoinSp;
                }
            }
        }
    }

    void run_loop_a(State& st, const NodeContext& ctx, RoundIo& io,
                    std::uint64_t& flags_out) const {
        const auto& nbrs = ctx.neighbor_ids();
        // extra step: an uncovered node past its threshold recruits the
        // cheapest closed neighbor into the final set
        if (!st.dominated && !st.select_sent && eps_pow[st.i] > st.lambda_v * st.denom) {
            st.select_sent = true;
            int target = st.w == st.tau ? ctx.id() : -1;
            for (std::size_t k = 0; k < nbrs.size(); ++k)
                if (st.nbr_w[k] == st.tau && (target < 0 || nbrs[k] < target)) target = nbrs[k];
            if (target == ctx.id()) {
                st.in_sp = true;
                st.dominated = true;
                st.announced = true;
                flags_out |= detail::kJoinSp;
            } else {
                io.send(target, {detail::kSelect});
            }
        }
        // tightness: X_u (1+eps) >= w_u with per-node denominators
        if (!st.in_s) {
            Rat x_sum = Rat(st.tau, st.denom) * eps_pow[st.i];
            for (std::size_t k = 0; k < nbrs.size(); ++k)
                x_sum += Rat(st.nbr_tau[k], st.nbr_denom[k]) * eps_pow[st.nbr_i[k]];
            if (x_sum * eps_pow[1] >= st.w) {
                st.in_s = true;
                st.dominated = true;
                st.announced = true;
                flags_out |= detail::kJoinS;
            }
        }
    }

    void finish_round(State& st, RoundIo& io, std::uint64_t& flags_out) const {
        if (st.dominated && !st.announced) {
            flags_out |= detail::kDom;
            st.announced = true;
        }
        if (flags_out) io.broadcast({flags_out});
    }

    bool halt_ready(const State& st) const {
        if (!st.dominated || !st.announced) return false;
        for (char d : st.nbr_dominated)
            if (!d) return false;
        return true;
    }
};

/// Remark on unknown Delta: same guarantee as the deterministic algorithm,
/// with packing values initialized by local neighborhood sizes and the
/// per-iteration early-exit step standing in for the closed-form stop.
inline DominatingSetResult mds_unknown_delta(const WeightedGraph& g, const Rat& eps,
                                             RunOptions opts = {}) {
    int alpha = detail::required_alpha(g);
    if (eps <= 0 || eps >= 1) throw InvalidParams("eps must be in (0,1)");
    Rat lambda = Rat(1) / ((2 * alpha + 1) * (1 + eps));
    int r_audit = derive_algo_params(eps, lambda, g.max_degree()).r;

    AdaptiveDsProgram program(AdaptiveDsProgram::Mode::unknown_delta, eps, lambda);
    SimOptions sim{64LL * (2 * r_audit + 40), opts.keep_trace};
    auto result = run_with_packing_checks(g, program, Knowns{false, false, true}, 0, sim, eps,
                                          Rat(1), opts.check_invariants, g.max_degree());

    PackingAssignment cert;
    cert.eps = eps;
    std::vector<int> members;
    Weight w_s = 0;
    int iterations = 0;
    for (int v = 0; v < g.node_count(); ++v) {
        const DetNodeOutput& o = result.per_node_output[v];
        if (o.in_s) w_s += g.weight(v);
        if (o.in_s || o.in_sp) members.push_back(v);
        cert.node.push_back(o.packing);
        iterations = std::max(iterations, o.packing.mult_eps);
    }

    Rat claimed = Rat(2 * alpha + 1) * (1 + eps);
    auto r = detail::assemble_result(g, "unknown-delta", std::move(members), std::move(cert),
                                     claimed, opts.check_invariants);
    r.rounds = result.rounds_executed;
    r.iterations = iterations;
    r.max_message_bits = result.max_message_bits;
    r.total_messages = result.total_messages;
    r.partial_weight = w_s;
    if (opts.check_invariants && r.rounds > 4 * r_audit + 40)
        throw std::logic_error("unknown-delta run exceeded its round budget");
    return r;
}

/// Remark on unknown alpha: distributed low-out-degree orientation by
/// synchronized peeling over doubling guesses, then the adaptive loop with
/// per-node lambda from the local out-degree maximum. The achieved factor
/// is (2 alpha' + 1)(2 + O(eps)) for the audited max out-degree alpha'.
inline DominatingSetResult mds_unknown_alpha(const WeightedGraph& g, const Rat& eps,
                                             RunOptions opts = {}) {
    if (!g.has_unit_weights()) throw NonUnitWeights("mds_unknown_alpha requires unit weights");
    if (eps <= 0 || eps >= 1) throw InvalidParams("eps must be in (0,1)");
    const int n = g.node_count();
    int guesses = ceil_log2(static_cast<std::uint64_t>(n)) + 1;
    int rounds_per_guess =
        2 * static_cast<int>(floor_log(1 + eps / 2, Rat(std::max(n, 2)))) + 4;

    AdaptiveDsProgram program(AdaptiveDsProgram::Mode::unknown_alpha, eps, Rat(0), guesses,
                              rounds_per_guess);
    long long orient_rounds = static_cast<long long>(guesses) * rounds_per_guess;
    long long loop_budget = 2 * (floor_log(1 + eps, Rat(n) + 1) + 8) + 20;
    SimOptions sim{64LL * (orient_rounds + loop_budget), opts.keep_trace};
    auto result = run_with_packing_checks(g, program, Knowns{true, false, false}, 0, sim, eps,
                                          Rat(1), opts.check_invariants, g.max_degree());

    PackingAssignment cert;
    cert.eps = eps;
    std::vector<int> members;
    Weight w_s = 0;
    int iterations = 0;
    int alpha_prime = 0;
    long long out_degree_total = 0;
    for (int v = 0; v < n; ++v) {
        const DetNodeOutput& o = result.per_node_output[v];
        if (o.in_s) w_s += g.weight(v);
        if (o.in_s || o.in_sp) members.push_back(v);
        cert.node.push_back(o.packing);
        iterations = std::max(iterations, o.packing.mult_eps);
        alpha_prime = std::max(alpha_prime, o.out_degree);
        out_degree_total += o.out_degree;
    }
    if (opts.check_invariants && out_degree_total != g.edge_count())
        throw std::logic_error("orientation does not cover every edge exactly once");

    Rat claimed = Rat(2 * alpha_prime + 1) * (2 + 6 * eps);
    auto r = detail::assemble_result(g, "unknown-alpha", std::move(members), std::move(cert),
                                     claimed, opts.check_invariants);
    r.rounds = result.rounds_executed;
    r.iterations = iterations;
    r.max_message_bits = result.max_message_bits;
    r.total_messages = result.total_messages;
    r.partial_weight = w_s;
    r.alpha_prime = alpha_prime;
    return r;
}

}  // namespace arbodom
