#pragma once

#include "lola/analysis.hpp"
#include "lola/ast.hpp"
#include "lola/feedback.hpp"
#include "lola/value.hpp"

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace lola {

/// One synchronous tick: a value for every input stream, in the
/// specification's input declaration order.
struct Event {
    int64_t position = 0;
    std::vector<Value> inputs;
};

struct ResolvedValue {
    int64_t position = 0;
    int32_t output_index = 0; // index into Specification::outputs
    Value value;
};

struct StepOutput {
    std::vector<ResolvedValue> resolved; // (position, declaration order) sorted
    std::vector<FeedbackEvent> feedback;
};

struct MonitorOptions {
    /// Pre-allocated rings (efficiently monitorable specs). When false the
    /// stores grow with the trace, which offline evaluation of
    /// non-efficiently-monitorable specs requires.
    bool bounded_memory = true;
};

/// Fixed-capacity ring of resolved values (the past array), or an unbounded
/// store when capacity 0. Slots are tagged with their position; the
/// watermark is the first position not yet resolved.
class ValueStore {
public:
    void init(int64_t capacity);
    bool has(int64_t pos) const;
    const Value& get(int64_t pos) const;
    void put(int64_t pos, Value v);
    int64_t watermark() const { return watermark_; }
    size_t slots() const { return values_.size(); }

private:
    std::vector<Value> values_;
    std::vector<int64_t> tags_;
    int64_t capacity_ = 1; // 0 = unbounded
    int64_t watermark_ = 0;
};

/// Incremental evaluator over the resolved-store / unresolved-store design:
/// per-stream rings plus pinned absolute slots (past array) and an inverted
/// index of suspended evaluations keyed by the awaited value (future index).
class Monitor {
public:
    Monitor(const Specification& spec, const AnalysisResult& analysis,
            MonitorOptions opts = {});

    /// Feed the event for the next position. Inputs are stored, outputs are
    /// evaluated in the fixed order, suspensions are parked in the future
    /// index, and every wake-up this value train triggers is re-evaluated.
    StepOutput step(const Event& event);

    /// End of trace: pending out-of-range accesses resolve to their
    /// declared defaults and all remaining positions emit.
    StepOutput finalize();

    int64_t next_position() const { return newest_ + 1; }
    int64_t finalized_positions() const { return frontier_; }

    /// Structural state measure: ring and pinned slots, pending
    /// obligations, feedback latches. Constant over the run for efficiently
    /// monitorable specifications.
    size_t state_size_slots() const;

    int64_t runtime_errors() const { return runtime_errors_; }

    const Specification& spec() const { return spec_; }

private:
    struct Obligation {
        int32_t stream = -1;
        int64_t position = 0;
    };

    struct EvalResult {
        enum class Status : uint8_t { Ok, Suspended, Error } status;
        Value value;
        int32_t await_stream = -1;
        int64_t await_position = 0;
        std::string error;
    };

    static uint64_t key_of(int32_t stream, int64_t pos) {
        return (static_cast<uint64_t>(static_cast<uint32_t>(stream)) << 40) |
               static_cast<uint64_t>(pos);
    }

    EvalResult eval(const Expr& expr, int64_t position);
    std::optional<Value> read_value(int32_t stream, int64_t pos) const;
    void attempt(Obligation ob, StepOutput& out);
    void store_value(int32_t stream, int64_t pos, Value v, StepOutput& out);
    void drain_wakeups(StepOutput& out);
    void advance_frontier(StepOutput& out);
    const Expr& definition_of(int32_t stream) const;

    const Specification& spec_;
    const AnalysisResult& analysis_;
    MonitorOptions opts_;

    std::vector<ValueStore> stores_;                   // per vertex id
    std::unordered_map<uint64_t, Value> pinned_;       // (stream,pos) -> value
    std::unordered_map<uint64_t, std::vector<Obligation>> future_index_;
    std::deque<uint64_t> wakeups_; // resolved (stream,pos) keys to service

    FeedbackState feedback_state_;
    int64_t newest_ = -1;   // last event position received
    int64_t frontier_ = 0;  // first position not yet fully finalized
    bool end_of_trace_ = false;
    bool finalized_ = false;
    int64_t runtime_errors_ = 0;
    int64_t pending_count_ = 0;
};

} // namespace lola
