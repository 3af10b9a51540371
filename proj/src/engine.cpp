#include "lola/engine.hpp"

#include "lola/builtins.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lola {

// ── ValueStore ──────────────────────────────────────────────────────────

void ValueStore::init(int64_t capacity) {
    capacity_ = capacity;
    watermark_ = 0;
    if (capacity_ > 0) {
        values_.assign(static_cast<size_t>(capacity_), Value{});
        tags_.assign(static_cast<size_t>(capacity_), -1);
    } else {
        values_.clear();
        tags_.clear();
    }
}

bool ValueStore::has(int64_t pos) const {
    if (pos < 0) return false;
    if (capacity_ > 0) return tags_[static_cast<size_t>(pos % capacity_)] == pos;
    return pos < static_cast<int64_t>(tags_.size()) &&
           tags_[static_cast<size_t>(pos)] == pos;
}

const Value& ValueStore::get(int64_t pos) const {
    size_t idx = capacity_ > 0 ? static_cast<size_t>(pos % capacity_)
                               : static_cast<size_t>(pos);
    return values_[idx];
}

void ValueStore::put(int64_t pos, Value v) {
    if (capacity_ == 0 && pos >= static_cast<int64_t>(values_.size())) {
        values_.resize(static_cast<size_t>(pos) + 1);
        tags_.resize(static_cast<size_t>(pos) + 1, -1);
    }
    size_t idx = capacity_ > 0 ? static_cast<size_t>(pos % capacity_)
                               : static_cast<size_t>(pos);
    values_[idx] = std::move(v);
    tags_[idx] = pos;
    while (has(watermark_)) ++watermark_;
}

// ── Monitor ─────────────────────────────────────────────────────────────

Monitor::Monitor(const Specification& spec, const AnalysisResult& analysis,
                 MonitorOptions opts)
    : spec_(spec),
      analysis_(analysis),
      opts_(opts),
      feedback_state_(spec.feedback.size()) {
    if (!analysis_.well_formed.ok)
        throw SpecError("specification is not well-formed: " +
                        analysis_.well_formed.witness);
    if (opts_.bounded_memory && !analysis_.efficiently_monitorable.ok)
        throw SpecError(
            "specification is outside the efficiently monitorable fragment (" +
            analysis_.efficiently_monitorable.witness +
            "); bounded-memory evaluation is not possible");

    const EngineLayout& lay = analysis_.layout;
    stores_.resize(static_cast<size_t>(lay.num_vertices));
    for (int32_t v = 0; v < lay.num_vertices; ++v)
        stores_[static_cast<size_t>(v)].init(opts_.bounded_memory
                                                 ? lay.ring_capacity[v]
                                                 : 0);
}

const Expr& Monitor::definition_of(int32_t stream) const {
    const EngineLayout& lay = analysis_.layout;
    if (stream >= lay.num_streams)
        return *spec_.feedback[static_cast<size_t>(stream - lay.num_streams)].condition;
    return *spec_.outputs[static_cast<size_t>(stream - lay.num_inputs)].definition;
}

std::optional<Value> Monitor::read_value(int32_t stream, int64_t pos) const {
    auto pin = pinned_.find(key_of(stream, pos));
    if (pin != pinned_.end()) return pin->second;
    const ValueStore& store = stores_[static_cast<size_t>(stream)];
    if (store.has(pos)) return store.get(pos);
    if (pos < store.watermark())
        throw std::logic_error("ring buffer under-provisioned: stream " +
                               std::to_string(stream) + " position " +
                               std::to_string(pos) + " already evicted");
    return std::nullopt;
}

namespace {

thread_local std::vector<std::string>* t_eval_errors = nullptr;

void note_error(const std::string& msg) {
    if (t_eval_errors) t_eval_errors->push_back(msg);
}

int64_t saturated(bool negative) {
    return negative ? std::numeric_limits<int64_t>::min()
                    : std::numeric_limits<int64_t>::max();
}

int64_t int_arith(BinaryOp op, int64_t a, int64_t b) {
    int64_t r = 0;
    switch (op) {
        case BinaryOp::Add:
            if (__builtin_add_overflow(a, b, &r)) {
                note_error("integer overflow in '+'");
                return saturated(a < 0);
            }
            return r;
        case BinaryOp::Sub:
            if (__builtin_sub_overflow(a, b, &r)) {
                note_error("integer overflow in '-'");
                return saturated(a < 0);
            }
            return r;
        case BinaryOp::Mul:
            if (__builtin_mul_overflow(a, b, &r)) {
                note_error("integer overflow in '*'");
                return saturated((a < 0) != (b < 0));
            }
            return r;
        case BinaryOp::Div:
            if (b == 0) {
                note_error("integer division by zero");
                return 0;
            }
            if (a == std::numeric_limits<int64_t>::min() && b == -1) {
                note_error("integer overflow in '/'");
                return std::numeric_limits<int64_t>::max();
            }
            return a / b;
        default: return 0;
    }
}

double double_arith(BinaryOp op, double a, double b) {
    switch (op) {
        case BinaryOp::Add: return a + b;
        case BinaryOp::Sub: return a - b;
        case BinaryOp::Mul: return a * b;
        case BinaryOp::Div: return a / b; // IEEE: +-inf / nan
        case BinaryOp::Pow: return std::pow(a, b);
        default: return 0.0;
    }
}

template <typename T>
bool ordered_compare(BinaryOp op, const T& a, const T& b) {
    switch (op) {
        case BinaryOp::Lt: return a < b;
        case BinaryOp::Le: return a <= b;
        case BinaryOp::Gt: return a > b;
        case BinaryOp::Ge: return a >= b;
        default: return false;
    }
}

} // namespace

Monitor::EvalResult Monitor::eval(const Expr& expr, int64_t position) {
    using Status = EvalResult::Status;
    auto ok = [](Value v) {
        return EvalResult{Status::Ok, std::move(v), -1, 0, {}};
    };
    auto suspend = [](int32_t stream, int64_t pos) {
        return EvalResult{Status::Suspended, Value{}, stream, pos, {}};
    };

    return std::visit(
        [&](const auto& n) -> EvalResult {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Literal>) {
                return ok(n.value);
            } else if constexpr (std::is_same_v<T, KeywordAtom>) {
                switch (n.word) {
                    case Keyword::Position: return ok(Value{position});
                    case Keyword::IntMin:
                        return ok(Value{std::numeric_limits<int64_t>::min()});
                    case Keyword::IntMax:
                        return ok(Value{std::numeric_limits<int64_t>::max()});
                    case Keyword::DoubleMin:
                        return ok(Value{std::numeric_limits<double>::lowest()});
                    case Keyword::DoubleMax:
                        return ok(Value{std::numeric_limits<double>::max()});
                }
                return ok(Value{});
            } else if constexpr (std::is_same_v<T, StreamAccess> ||
                                 std::is_same_v<T, AbsoluteAccess>) {
                int64_t q;
                if constexpr (std::is_same_v<T, StreamAccess>)
                    q = position + n.offset;
                else
                    q = n.index;
                if (q < 0) return eval(*n.fallback, position);
                if (q > newest_) {
                    if (end_of_trace_) return eval(*n.fallback, position);
                    return suspend(expr.stream_id, q);
                }
                std::optional<Value> v = read_value(expr.stream_id, q);
                if (!v) return suspend(expr.stream_id, q);
                return ok(std::move(*v));
            } else if constexpr (std::is_same_v<T, Call>) {
                std::vector<Value> args;
                args.reserve(n.args.size());
                for (const auto& a : n.args) {
                    EvalResult r = eval(*a, position);
                    if (r.status != Status::Ok) return r;
                    args.push_back(std::move(r.value));
                }
                return ok(builtin_catalog()[static_cast<size_t>(expr.builtin_id)].apply(
                    args));
            } else if constexpr (std::is_same_v<T, Unary>) {
                EvalResult r = eval(*n.operand, position);
                if (r.status != Status::Ok) return r;
                if (n.op == UnaryOp::Not) return ok(Value{!std::get<bool>(r.value)});
                if (auto* i = std::get_if<int64_t>(&r.value)) {
                    if (*i == std::numeric_limits<int64_t>::min()) {
                        note_error("integer overflow in unary '-'");
                        return ok(Value{std::numeric_limits<int64_t>::max()});
                    }
                    return ok(Value{-*i});
                }
                return ok(Value{-std::get<double>(r.value)});
            } else if constexpr (std::is_same_v<T, Binary>) {
                if (n.op == BinaryOp::And || n.op == BinaryOp::Or) {
                    EvalResult l = eval(*n.lhs, position);
                    if (l.status != Status::Ok) return l;
                    bool lv = std::get<bool>(l.value);
                    if (n.op == BinaryOp::And && !lv) return ok(Value{false});
                    if (n.op == BinaryOp::Or && lv) return ok(Value{true});
                    EvalResult r = eval(*n.rhs, position);
                    if (r.status != Status::Ok) return r;
                    return ok(Value{std::get<bool>(r.value)});
                }
                EvalResult l = eval(*n.lhs, position);
                if (l.status != Status::Ok) return l;
                EvalResult r = eval(*n.rhs, position);
                if (r.status != Status::Ok) return r;
                switch (n.op) {
                    case BinaryOp::Add:
                    case BinaryOp::Sub:
                    case BinaryOp::Mul:
                    case BinaryOp::Div:
                    case BinaryOp::Pow:
                        if (auto* a = std::get_if<int64_t>(&l.value))
                            return ok(Value{
                                int_arith(n.op, *a, std::get<int64_t>(r.value))});
                        return ok(Value{double_arith(n.op, std::get<double>(l.value),
                                                     std::get<double>(r.value))});
                    case BinaryOp::Eq: return ok(Value{l.value == r.value});
                    case BinaryOp::Ne: return ok(Value{l.value != r.value});
                    default:
                        if (auto* a = std::get_if<int64_t>(&l.value))
                            return ok(Value{ordered_compare(n.op, *a,
                                                            std::get<int64_t>(r.value))});
                        if (auto* d = std::get_if<double>(&l.value))
                            return ok(Value{ordered_compare(n.op, *d,
                                                            std::get<double>(r.value))});
                        return ok(Value{ordered_compare(
                            n.op, std::get<std::string>(l.value),
                            std::get<std::string>(r.value))});
                }
            } else if constexpr (std::is_same_v<T, Conditional>) {
                for (const auto& b : n.branches) {
                    EvalResult c = eval(*b.condition, position);
                    if (c.status != Status::Ok) return c;
                    if (std::get<bool>(c.value)) return eval(*b.value, position);
                }
                return eval(*n.otherwise, position);
            } else {
                static_assert(std::is_same_v<T, Switch>);
                EvalResult s = eval(*n.scrutinee, position);
                if (s.status != Status::Ok) return s;
                // first match short-circuits every later case and the default
                for (const auto& c : n.cases)
                    if (c.label == s.value) return eval(*c.value, position);
                return eval(*n.fallback, position);
            }
        },
        expr.node);
}

void Monitor::store_value(int32_t stream, int64_t pos, Value v, StepOutput& out) {
    const EngineLayout& lay = analysis_.layout;
    const auto& pins = lay.pinned_slots[static_cast<size_t>(stream)];
    if (std::binary_search(pins.begin(), pins.end(), pos))
        pinned_[key_of(stream, pos)] = v;
    if (stream >= lay.num_inputs && stream < lay.num_streams)
        out.resolved.push_back(
            ResolvedValue{pos, stream - lay.num_inputs, v});
    stores_[static_cast<size_t>(stream)].put(pos, std::move(v));
    wakeups_.push_back(key_of(stream, pos));
}

void Monitor::attempt(Obligation ob, StepOutput& out) {
    std::vector<std::string> errors;
    t_eval_errors = &errors;
    EvalResult res = eval(definition_of(ob.stream), ob.position);
    t_eval_errors = nullptr;

    if (res.status == EvalResult::Status::Suspended) {
        future_index_[key_of(res.await_stream, res.await_position)].push_back(ob);
        ++pending_count_;
        return;
    }
    for (const auto& msg : errors) {
        ++runtime_errors_;
        FeedbackEvent ev;
        ev.kind = FeedbackEventKind::RuntimeError;
        ev.position = ob.position;
        const EngineLayout& lay = analysis_.layout;
        std::string where =
            ob.stream >= lay.num_streams
                ? std::string(to_string(
                      spec_.feedback[static_cast<size_t>(ob.stream - lay.num_streams)]
                          .kind)) + " condition"
                : "stream '" +
                      spec_.outputs[static_cast<size_t>(ob.stream - lay.num_inputs)]
                          .name + "'";
        ev.message = msg + " in " + where;
        out.feedback.push_back(std::move(ev));
    }
    store_value(ob.stream, ob.position, std::move(res.value), out);
}

void Monitor::drain_wakeups(StepOutput& out) {
    while (!wakeups_.empty()) {
        uint64_t key = wakeups_.front();
        wakeups_.pop_front();
        auto it = future_index_.find(key);
        if (it == future_index_.end()) continue;
        std::vector<Obligation> waiters = std::move(it->second);
        future_index_.erase(it);
        pending_count_ -= static_cast<int64_t>(waiters.size());
        for (const Obligation& ob : waiters) attempt(ob, out);
    }
}

void Monitor::advance_frontier(StepOutput& out) {
    const EngineLayout& lay = analysis_.layout;
    for (;;) {
        if (frontier_ > newest_) break;
        bool complete = true;
        for (const auto& store : stores_) {
            if (store.watermark() <= frontier_) {
                complete = false;
                break;
            }
        }
        if (!complete) break;

        if (!spec_.feedback.empty()) {
            std::vector<bool> conds(spec_.feedback.size());
            for (size_t k = 0; k < spec_.feedback.size(); ++k) {
                int32_t id = lay.num_streams + static_cast<int32_t>(k);
                conds[k] = std::get<bool>(
                    stores_[static_cast<size_t>(id)].get(frontier_));
            }
            FeedbackContext ctx;
            ctx.position = frontier_;
            if (lay.time_stream >= 0) {
                auto t = read_value(lay.time_stream, frontier_);
                if (t) ctx.timestamp = std::get<double>(*t);
            }
            ctx.read = [&](std::string_view name) -> Value {
                auto v = read_value(lay.id_of.at(std::string(name)), frontier_);
                return v ? *v : Value{};
            };
            ctx.snapshot = [&]() {
                std::vector<std::pair<std::string, Value>> pairs;
                for (int32_t id = 0; id < lay.num_streams; ++id) {
                    auto v = read_value(id, frontier_);
                    pairs.emplace_back(analysis_.graph.vertices[static_cast<size_t>(id)],
                                       v ? *v : Value{});
                }
                return pairs;
            };
            auto events = evaluate_feedback(spec_.feedback, conds, ctx, feedback_state_);
            for (auto& ev : events) out.feedback.push_back(std::move(ev));
        }
        ++frontier_;
    }
}

StepOutput Monitor::step(const Event& event) {
    if (finalized_ || end_of_trace_)
        throw std::logic_error("step() after finalize()");
    if (event.position != newest_ + 1)
        throw std::logic_error("event out of order: expected position " +
                               std::to_string(newest_ + 1) + ", got " +
                               std::to_string(event.position));
    if (event.inputs.size() != spec_.inputs.size())
        throw IoError("event at position " + std::to_string(event.position) +
                      " carries " + std::to_string(event.inputs.size()) +
                      " values for " + std::to_string(spec_.inputs.size()) +
                      " declared inputs");

    newest_ = event.position;
    StepOutput out;
    for (size_t k = 0; k < event.inputs.size(); ++k)
        store_value(static_cast<int32_t>(k), newest_, event.inputs[k], out);
    for (int32_t id : analysis_.layout.evaluation_order)
        attempt(Obligation{id, newest_}, out);
    drain_wakeups(out);
    advance_frontier(out);

    std::sort(out.resolved.begin(), out.resolved.end(),
              [](const ResolvedValue& a, const ResolvedValue& b) {
                  return a.position != b.position ? a.position < b.position
                                                  : a.output_index < b.output_index;
              });
    return out;
}

StepOutput Monitor::finalize() {
    if (finalized_) throw std::logic_error("finalize() called twice");
    finalized_ = true;
    end_of_trace_ = true;

    StepOutput out;
    std::vector<Obligation> pending;
    for (auto& [key, waiters] : future_index_)
        for (const Obligation& ob : waiters) pending.push_back(ob);
    future_index_.clear();
    pending_count_ = 0;
    // stable order: by position, then stream, so emission order is canonical
    std::sort(pending.begin(), pending.end(),
              [](const Obligation& a, const Obligation& b) {
                  return a.position != b.position ? a.position < b.position
                                                  : a.stream < b.stream;
              });
    for (const Obligation& ob : pending) attempt(ob, out);
    drain_wakeups(out);

    if (!future_index_.empty())
        throw std::logic_error("future index not empty after finalize");
    advance_frontier(out);

    std::sort(out.resolved.begin(), out.resolved.end(),
              [](const ResolvedValue& a, const ResolvedValue& b) {
                  return a.position != b.position ? a.position < b.position
                                                  : a.output_index < b.output_index;
              });
    return out;
}

size_t Monitor::state_size_slots() const {
    size_t total = 0;
    for (const auto& store : stores_) total += store.slots();
    total += pinned_.size();
    total += static_cast<size_t>(pending_count_);
    total += feedback_state_.slots();
    return total;
}

} // namespace lola
