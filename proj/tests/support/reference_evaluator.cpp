#include "reference_evaluator.hpp"

#include "lola/builtins.hpp"

#include <cmath>
#include <cstring>
#include <limits>

namespace lola::testing {

namespace {

using Table = std::map<std::string, std::vector<std::optional<Value>>>;

struct RefContext {
    const Table& table;
    int64_t last_position;
    int64_t* runtime_errors;
};

std::optional<Value> ref_eval(const Expr& e, int64_t j, const RefContext& ctx);

std::optional<Value> ref_access(const std::string& stream, int64_t q,
                                const Expr* fallback, int64_t j,
                                const RefContext& ctx) {
    if (q < 0 || q > ctx.last_position) return ref_eval(*fallback, j, ctx);
    return ctx.table.at(stream)[static_cast<size_t>(q)];
}

int64_t ref_int_arith(BinaryOp op, int64_t a, int64_t b, int64_t* errors) {
    auto sat = [](bool neg) {
        return neg ? std::numeric_limits<int64_t>::min()
                   : std::numeric_limits<int64_t>::max();
    };
    int64_t r = 0;
    switch (op) {
        case BinaryOp::Add:
            if (__builtin_add_overflow(a, b, &r)) { ++*errors; return sat(a < 0); }
            return r;
        case BinaryOp::Sub:
            if (__builtin_sub_overflow(a, b, &r)) { ++*errors; return sat(a < 0); }
            return r;
        case BinaryOp::Mul:
            if (__builtin_mul_overflow(a, b, &r)) {
                ++*errors;
                return sat((a < 0) != (b < 0));
            }
            return r;
        case BinaryOp::Div:
            if (b == 0) { ++*errors; return 0; }
            if (a == std::numeric_limits<int64_t>::min() && b == -1) {
                ++*errors;
                return std::numeric_limits<int64_t>::max();
            }
            return a / b;
        default: return 0;
    }
}

std::optional<Value> ref_eval(const Expr& e, int64_t j, const RefContext& ctx) {
    return std::visit(
        [&](const auto& n) -> std::optional<Value> {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Literal>) {
                return n.value;
            } else if constexpr (std::is_same_v<T, KeywordAtom>) {
                switch (n.word) {
                    case Keyword::Position: return Value{j};
                    case Keyword::IntMin:
                        return Value{std::numeric_limits<int64_t>::min()};
                    case Keyword::IntMax:
                        return Value{std::numeric_limits<int64_t>::max()};
                    case Keyword::DoubleMin:
                        return Value{std::numeric_limits<double>::lowest()};
                    case Keyword::DoubleMax:
                        return Value{std::numeric_limits<double>::max()};
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, StreamAccess>) {
                if (n.offset == 0)
                    return ctx.table.at(n.stream)[static_cast<size_t>(j)];
                return ref_access(n.stream, j + n.offset, n.fallback.get(), j, ctx);
            } else if constexpr (std::is_same_v<T, AbsoluteAccess>) {
                return ref_access(n.stream, n.index, n.fallback.get(), j, ctx);
            } else if constexpr (std::is_same_v<T, Call>) {
                std::vector<Value> args;
                std::vector<StreamType> types;
                for (const auto& a : n.args) {
                    auto v = ref_eval(*a, j, ctx);
                    if (!v) return std::nullopt;
                    types.push_back(type_of(*v));
                    args.push_back(std::move(*v));
                }
                int id = find_builtin(n.function, types);
                if (id < 0) return std::nullopt; // cannot happen on checked specs
                return builtin_catalog()[static_cast<size_t>(id)].apply(args);
            } else if constexpr (std::is_same_v<T, Unary>) {
                auto v = ref_eval(*n.operand, j, ctx);
                if (!v) return std::nullopt;
                if (n.op == UnaryOp::Not) return Value{!std::get<bool>(*v)};
                if (auto* i = std::get_if<int64_t>(&*v)) {
                    if (*i == std::numeric_limits<int64_t>::min()) {
                        ++*ctx.runtime_errors;
                        return Value{std::numeric_limits<int64_t>::max()};
                    }
                    return Value{-*i};
                }
                return Value{-std::get<double>(*v)};
            } else if constexpr (std::is_same_v<T, Binary>) {
                if (n.op == BinaryOp::And || n.op == BinaryOp::Or) {
                    auto l = ref_eval(*n.lhs, j, ctx);
                    if (!l) return std::nullopt;
                    bool lv = std::get<bool>(*l);
                    if (n.op == BinaryOp::And && !lv) return Value{false};
                    if (n.op == BinaryOp::Or && lv) return Value{true};
                    return ref_eval(*n.rhs, j, ctx);
                }
                auto l = ref_eval(*n.lhs, j, ctx);
                if (!l) return std::nullopt;
                auto r = ref_eval(*n.rhs, j, ctx);
                if (!r) return std::nullopt;
                switch (n.op) {
                    case BinaryOp::Add:
                    case BinaryOp::Sub:
                    case BinaryOp::Mul:
                    case BinaryOp::Div:
                        if (auto* a = std::get_if<int64_t>(&*l))
                            return Value{ref_int_arith(n.op, *a, std::get<int64_t>(*r),
                                                       ctx.runtime_errors)};
                        switch (n.op) {
                            case BinaryOp::Add:
                                return Value{std::get<double>(*l) +
                                             std::get<double>(*r)};
                            case BinaryOp::Sub:
                                return Value{std::get<double>(*l) -
                                             std::get<double>(*r)};
                            case BinaryOp::Mul:
                                return Value{std::get<double>(*l) *
                                             std::get<double>(*r)};
                            default:
                                return Value{std::get<double>(*l) /
                                             std::get<double>(*r)};
                        }
                    case BinaryOp::Pow:
                        return Value{
                            std::pow(std::get<double>(*l), std::get<double>(*r))};
                    case BinaryOp::Eq: return Value{*l == *r};
                    case BinaryOp::Ne: return Value{*l != *r};
                    default: {
                        auto cmp = [&](const auto& a, const auto& b) -> bool {
                            switch (n.op) {
                                case BinaryOp::Lt: return a < b;
                                case BinaryOp::Le: return a <= b;
                                case BinaryOp::Gt: return a > b;
                                default: return a >= b;
                            }
                        };
                        if (auto* a = std::get_if<int64_t>(&*l))
                            return Value{cmp(*a, std::get<int64_t>(*r))};
                        if (auto* d = std::get_if<double>(&*l))
                            return Value{cmp(*d, std::get<double>(*r))};
                        return Value{cmp(std::get<std::string>(*l),
                                         std::get<std::string>(*r))};
                    }
                }
            } else if constexpr (std::is_same_v<T, Conditional>) {
                for (const auto& b : n.branches) {
                    auto c = ref_eval(*b.condition, j, ctx);
                    if (!c) return std::nullopt;
                    if (std::get<bool>(*c)) return ref_eval(*b.value, j, ctx);
                }
                return ref_eval(*n.otherwise, j, ctx);
            } else {
                static_assert(std::is_same_v<T, Switch>);
                auto s = ref_eval(*n.scrutinee, j, ctx);
                if (!s) return std::nullopt;
                for (const auto& c : n.cases)
                    if (c.label == *s) return ref_eval(*c.value, j, ctx);
                return ref_eval(*n.fallback, j, ctx);
            }
        },
        e.node);
}

} // namespace

ReferenceResult reference_evaluate(const Specification& spec,
                                   const std::vector<Event>& trace) {
    const int64_t N = static_cast<int64_t>(trace.size()) - 1;
    Table table;
    for (size_t k = 0; k < spec.inputs.size(); ++k) {
        auto& column = table[spec.inputs[k].name];
        column.resize(trace.size());
        for (size_t j = 0; j < trace.size(); ++j) column[j] = trace[j].inputs[k];
    }
    for (const auto& d : spec.outputs) table[d.name].resize(trace.size());

    ReferenceResult result;
    RefContext ctx{table, N, &result.runtime_errors};

    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& d : spec.outputs) {
            for (int64_t j = 0; j <= N; ++j) {
                if (table[d.name][static_cast<size_t>(j)]) continue;
                // partial attempts may count errors they will recount later;
                // keep only the successful pass
                int64_t errors_before = result.runtime_errors;
                auto v = ref_eval(*d.definition, j, ctx);
                if (!v) {
                    result.runtime_errors = errors_before;
                    continue;
                }
                table[d.name][static_cast<size_t>(j)] = std::move(*v);
                progress = true;
            }
        }
    }

    for (const auto& d : spec.outputs) {
        auto& column = table[d.name];
        auto& dense = result.outputs[d.name];
        for (auto& cell : column) {
            if (!cell) {
                result.complete = false;
                break;
            }
            dense.push_back(std::move(*cell));
        }
    }
    return result;
}

bool values_close(const Value& a, const Value& b) {
    if (a.index() != b.index()) return false;
    if (a.index() != 2) return a == b;
    double x = std::get<double>(a), y = std::get<double>(b);
    if (std::isnan(x) && std::isnan(y)) return true;
    if (x == y) return true;
    return std::nextafter(x, y) == y; // within 1 ulp
}

} // namespace lola::testing
