#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "arbodom/graph.hpp"
#include "arbodom/rational.hpp"
#include "arbodom/rng.hpp"

namespace arbodom {

struct SimulationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RoundCapExceeded : SimulationError {
    using SimulationError::SimulationError;
};
struct IllegalSend : SimulationError {
    using SimulationError::SimulationError;
};
struct UnknownGlobal : SimulationError {
    using SimulationError::SimulationError;
};
struct MissingTrace : SimulationError {
    using SimulationError::SimulationError;
};

/// Which global quantities the nodes are allowed to read.
struct Knowns {
    bool n_known = false;
    bool delta_known = false;
    bool alpha_known = false;
};

/// Message payload: a small tuple of bounded integers. The wire width is
/// the canonical varint (LEB128) encoding length of all fields.
using Payload = std::vector<std::uint64_t>;

inline int varint_bytes(std::uint64_t x) {
    int bytes = 1;
    while (x >= 128) {
        x >>= 7;
        ++bytes;
    }
    return bytes;
}

inline int payload_width_bits(const Payload& p) {
    int bits = 0;
    for (std::uint64_t f : p) bits += 8 * varint_bytes(f);
    return bits;
}

inline std::string payload_hex(const Payload& p) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    for (std::uint64_t f : p) {
        do {
            out += digits[f & 0xf];
            f >>= 4;
        } while (f);
        out += ':';
    }
    if (!out.empty()) out.pop_back();
    return out;
}

/// Static per-node view: own id, weight, neighborhood, the declared
/// global knowns, and a counter-based RNG stream keyed by (seed, id).
class NodeContext {
public:
    NodeContext(const WeightedGraph& g, int id, Knowns knowns, std::uint64_t seed)
        : g_(&g), id_(id), knowns_(knowns), seed_(seed) {}

    int id() const { return id_; }
    Weight weight() const { return g_->weight(id_); }
    int degree() const { return g_->degree(id_); }
    const std::vector<int>& neighbor_ids() const { return g_->neighbors(id_); }

    int n() const {
        require(knowns_.n_known, "n");
        return g_->node_count();
    }
    int delta() const {
        require(knowns_.delta_known, "delta");
        return g_->max_degree();
    }
    int alpha() const {
        require(knowns_.alpha_known, "alpha");
        if (!g_->declared_alpha()) throw UnknownGlobal("graph has no declared alpha");
        return *g_->declared_alpha();
    }

    std::uint64_t rng(std::uint64_t a, std::uint64_t b = 0) const {
        return rng_u64(seed_, static_cast<std::uint64_t>(id_) + 1, a, b);
    }
    bool coin(const Rat& p, std::uint64_t a, std::uint64_t b = 0) const {
        return rng_coin(p, seed_, static_cast<std::uint64_t>(id_) + 1, a, b);
    }

private:
    void require(bool ok, const char* what) const {
        if (!ok) throw UnknownGlobal(std::string("node program read undeclared global: ") + what);
    }

    const WeightedGraph* g_;
    int id_;
    Knowns knowns_;
    std::uint64_t seed_;
};

struct Incoming {
    int src;
    Payload payload;
};

/// Inbox of the current round plus the outbox collector. Messages sent in
/// round r are delivered at the start of round r+1.
class RoundIo {
public:
    RoundIo(const WeightedGraph& g, int self, const std::vector<Incoming>& inbox)
        : g_(&g), self_(self), inbox_(&inbox) {}

    const std::vector<Incoming>& inbox() const { return *inbox_; }

    void send(int dst, Payload payload) {
        if (!g_->adjacent(self_, dst))
            throw IllegalSend("node " + std::to_string(self_) + " sent to non-neighbor " +
                              std::to_string(dst));
        outbox_.emplace_back(dst, std::move(payload));
    }

    void broadcast(const Payload& payload) {
        for (int v : g_->neighbors(self_)) outbox_.emplace_back(v, payload);
    }

    std::vector<std::pair<int, Payload>>& outbox() { return outbox_; }

private:
    const WeightedGraph* g_;
    int self_;
    const std::vector<Incoming>* inbox_;
    std::vector<std::pair<int, Payload>> outbox_;
};

struct TraceEvent {
    int round;
    int src;
    int dst;
    int width_bits;
    Payload payload;

    bool operator==(const TraceEvent&) const = default;
};

template <typename Output>
struct SimulationResult {
    int rounds_executed = 0;
    std::vector<Output> per_node_output;
    int max_message_bits = 0;
    long long total_messages = 0;
    std::optional<std::vector<TraceEvent>> trace;

    bool operator==(const SimulationResult&) const = default;
};

struct SimOptions {
    long long round_cap = 1'000'000;
    bool keep_trace = false;
};

namespace detail {
struct NoHook {
    template <typename State>
    void operator()(int, const std::vector<State>&) const {}
};
}  // namespace detail

/// Runs a node program synchronously until every node has halted.
///
/// Program requirements:
///   struct State; using Output = ...;
///   struct InitResult { State state; bool halt; };
///   InitResult init(const NodeContext&) const;
///   bool on_round(State&, const NodeContext&, RoundIo&) const;  // true = halt
///   Output output(const State&, const NodeContext&) const;
///
/// Nodes are processed in id order each round; all randomness comes from
/// the per-node counter streams, so the schedule cannot leak into results.
/// The post_round hook sees the full state vector after each round (used
/// by the drivers to assert exact invariants round by round).
template <typename Program, typename Hook = detail::NoHook>
SimulationResult<typename Program::Output> run_synchronous(const WeightedGraph& g,
                                                           const Program& program, Knowns knowns,
                                                           std::uint64_t seed, SimOptions opts = {},
                                                           Hook post_round = Hook{}) {
    if (opts.round_cap < 1) throw std::invalid_argument("round_cap must be at least 1");
    const int n = g.node_count();

    std::vector<NodeContext> ctx;
    ctx.reserve(n);
    for (int v = 0; v < n; ++v) ctx.emplace_back(g, v, knowns, seed);

    std::vector<typename Program::State> states;
    states.reserve(n);
    std::vector<char> halted(n, 0);
    int active = n;
    for (int v = 0; v < n; ++v) {
        auto r = program.init(ctx[v]);
        states.push_back(std::move(r.state));
        if (r.halt) {
            halted[v] = 1;
            --active;
        }
    }

    SimulationResult<typename Program::Output> result;
    if (opts.keep_trace) result.trace.emplace();

    std::vector<std::vector<Incoming>> inboxes(n), next_inboxes(n);
    int round = 0;
    while (active > 0) {
        if (round == opts.round_cap)
            throw RoundCapExceeded("round cap " + std::to_string(opts.round_cap) +
                                   " reached with " + std::to_string(active) + " active nodes");
        ++round;
        for (int v = 0; v < n; ++v) {
            if (halted[v]) continue;
            RoundIo io(g, v, inboxes[v]);
            bool halt = program.on_round(states[v], ctx[v], io);
            for (auto& [dst, payload] : io.outbox()) {
                int width = payload_width_bits(payload);
                result.max_message_bits = std::max(result.max_message_bits, width);
                result.total_messages++;
                if (result.trace) result.trace->push_back({round, v, dst, width, payload});
                if (!halted[dst]) next_inboxes[dst].push_back({v, std::move(payload)});
            }
            if (halt) {
                halted[v] = 1;
                --active;
            }
        }
        post_round(round, states);
        for (int v = 0; v < n; ++v) {
            inboxes[v] = std::move(next_inboxes[v]);
            next_inboxes[v].clear();
        }
    }

    result.rounds_executed = round;
    result.per_node_output.reserve(n);
    for (int v = 0; v < n; ++v) result.per_node_output.push_back(program.output(states[v], ctx[v]));
    return result;
}

struct WidthAudit {
    int max_bits = 0;
    int threshold_bits = 0;
    bool pass = true;
};

/// Advisory check of the O(log n)-bit message discipline: compares the
/// widest traced message against c * ceil(log2(n+1)) bits.
template <typename Output>
WidthAudit message_width_audit(const SimulationResult<Output>& result, int n, int c) {
    if (!result.trace) throw MissingTrace("message_width_audit requires a retained trace");
    WidthAudit audit;
    for (const TraceEvent& e : *result.trace) audit.max_bits = std::max(audit.max_bits, e.width_bits);
    audit.threshold_bits = c * ceil_log2(static_cast<std::uint64_t>(n) + 1);
    audit.pass = audit.max_bits <= audit.threshold_bits;
    return audit;
}

}  // namespace arbodom
