#include "lola/ast.hpp"

namespace lola {

const char* to_string(UnaryOp op) {
    switch (op) {
        case UnaryOp::Not: return "!";
        case UnaryOp::Neg: return "-";
    }
    return "?";
}

const char* to_string(BinaryOp op) {
    switch (op) {
        case BinaryOp::Add: return "+";
        case BinaryOp::Sub: return "-";
        case BinaryOp::Mul: return "*";
        case BinaryOp::Div: return "/";
        case BinaryOp::Pow: return "^";
        case BinaryOp::Eq: return "=";
        case BinaryOp::Ne: return "!=";
        case BinaryOp::Lt: return "<";
        case BinaryOp::Le: return "<=";
        case BinaryOp::Gt: return ">";
        case BinaryOp::Ge: return ">=";
        case BinaryOp::And: return "&";
        case BinaryOp::Or: return "|";
    }
    return "?";
}

const char* to_string(Keyword word) {
    switch (word) {
        case Keyword::Position: return "position";
        case Keyword::IntMin: return "int_min";
        case Keyword::IntMax: return "int_max";
        case Keyword::DoubleMin: return "double_min";
        case Keyword::DoubleMax: return "double_max";
    }
    return "?";
}

const char* to_string(FeedbackKind kind) {
    switch (kind) {
        case FeedbackKind::Trigger: return "trigger";
        case FeedbackKind::TriggerOnce: return "trigger_once";
        case FeedbackKind::TriggerChange: return "trigger_change";
        case FeedbackKind::Snapshot: return "snapshot";
        case FeedbackKind::Tag: return "tag";
        case FeedbackKind::Filter: return "filter";
    }
    return "?";
}

ExprPtr make_expr(ExprNode node, SourceSpan span) {
    return std::make_unique<Expr>(std::move(node), span);
}

namespace {

ExprPtr clone_ptr(const ExprPtr& p) { return p ? p->clone() : nullptr; }

} // namespace

ExprPtr Expr::clone() const {
    ExprNode copy = std::visit(
        [](const auto& n) -> ExprNode {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Literal>) {
                return Literal{n.value};
            } else if constexpr (std::is_same_v<T, KeywordAtom>) {
                return KeywordAtom{n.word};
            } else if constexpr (std::is_same_v<T, StreamAccess>) {
                return StreamAccess{n.stream, n.offset, clone_ptr(n.fallback)};
            } else if constexpr (std::is_same_v<T, AbsoluteAccess>) {
                return AbsoluteAccess{n.stream, n.index, clone_ptr(n.fallback)};
            } else if constexpr (std::is_same_v<T, Call>) {
                Call c;
                c.function = n.function;
                for (const auto& a : n.args) c.args.push_back(a->clone());
                return c;
            } else if constexpr (std::is_same_v<T, Unary>) {
                return Unary{n.op, n.operand->clone()};
            } else if constexpr (std::is_same_v<T, Binary>) {
                return Binary{n.op, n.lhs->clone(), n.rhs->clone()};
            } else if constexpr (std::is_same_v<T, Conditional>) {
                Conditional c;
                for (const auto& b : n.branches)
                    c.branches.push_back(
                        CondBranch{b.condition->clone(), b.value->clone()});
                c.otherwise = n.otherwise->clone();
                return c;
            } else {
                static_assert(std::is_same_v<T, Switch>);
                Switch s;
                s.scrutinee = n.scrutinee->clone();
                for (const auto& c : n.cases)
                    s.cases.push_back(SwitchCase{c.label, c.value->clone()});
                s.fallback = n.fallback->clone();
                return s;
            }
        },
        node);
    auto out = make_expr(std::move(copy), span);
    out->type = type;
    out->stream_id = stream_id;
    out->builtin_id = builtin_id;
    return out;
}

StreamDecl StreamDecl::clone() const {
    StreamDecl d;
    d.name = name;
    d.type = type;
    d.kind = kind;
    d.definition = definition ? definition->clone() : nullptr;
    d.pos = pos;
    return d;
}

FeedbackDecl FeedbackDecl::clone() const {
    FeedbackDecl d;
    d.kind = kind;
    d.condition = condition ? condition->clone() : nullptr;
    d.message = message;
    d.auto_message = auto_message;
    d.columns = columns;
    d.sources = sources;
    d.location = location;
    d.pos = pos;
    return d;
}

const StreamDecl* Specification::find_stream(std::string_view name) const {
    for (const auto& d : inputs)
        if (d.name == name) return &d;
    for (const auto& d : outputs)
        if (d.name == name) return &d;
    return nullptr;
}

Specification Specification::clone() const {
    Specification s;
    s.source_file = source_file;
    for (const auto& d : inputs) s.inputs.push_back(d.clone());
    for (const auto& d : outputs) s.outputs.push_back(d.clone());
    for (const auto& d : feedback) s.feedback.push_back(d.clone());
    return s;
}

} // namespace lola
