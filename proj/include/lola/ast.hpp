#pragma once

#include "lola/diagnostics.hpp"
#include "lola/value.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace lola {

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

enum class UnaryOp : uint8_t { Not, Neg };
enum class BinaryOp : uint8_t {
    Add, Sub, Mul, Div, Pow,
    Eq, Ne, Lt, Le, Gt, Ge,
    And, Or,
};
enum class Keyword : uint8_t { Position, IntMin, IntMax, DoubleMin, DoubleMax };

const char* to_string(UnaryOp op);
const char* to_string(BinaryOp op);
const char* to_string(Keyword word);

struct Literal {
    Value value;
};

struct KeywordAtom {
    Keyword word;
};

/// Relative stream access `s[offset, fallback]`. Offset 0 is the plain
/// present-value reference `s` and carries no fallback.
struct StreamAccess {
    std::string stream;
    int64_t offset = 0;
    ExprPtr fallback; // null iff offset == 0
};

/// Absolute stream access `s#[index, fallback]`: a fixed trace position.
struct AbsoluteAccess {
    std::string stream;
    int64_t index = 0;
    ExprPtr fallback;
};

struct Call {
    std::string function;
    std::vector<ExprPtr> args;
};

struct Unary {
    UnaryOp op;
    ExprPtr operand;
};

struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
};

struct CondBranch {
    ExprPtr condition;
    ExprPtr value;
};

/// `if c {a} elif c2 {b} else {z}`. Parsed with the full branch list;
/// desugaring rewrites to nested single-branch conditionals.
struct Conditional {
    std::vector<CondBranch> branches;
    ExprPtr otherwise;
};

struct SwitchCase {
    Value label;
    ExprPtr value;
};

/// Monotone switch. Cases are tested in declared order and a match
/// short-circuits every later case body and the default.
struct Switch {
    ExprPtr scrutinee;
    std::vector<SwitchCase> cases;
    ExprPtr fallback;
};

using ExprNode = std::variant<Literal, KeywordAtom, StreamAccess, AbsoluteAccess,
                              Call, Unary, Binary, Conditional, Switch>;

struct Expr {
    ExprNode node;
    SourceSpan span;

    // Filled in by analysis; parsing leaves them untouched.
    mutable StreamType type = StreamType::Bool;
    mutable int32_t stream_id = -1;  // StreamAccess / AbsoluteAccess
    mutable int32_t builtin_id = -1; // Call

    Expr() = default;
    Expr(ExprNode n, SourceSpan s) : node(std::move(n)), span(s) {}

    ExprPtr clone() const;
};

ExprPtr make_expr(ExprNode node, SourceSpan span = {});

enum class StreamKind : uint8_t { Input, Output, Constant };

struct StreamDecl {
    std::string name;
    StreamType type = StreamType::Double;
    StreamKind kind = StreamKind::Input;
    ExprPtr definition; // null for inputs
    SourcePos pos;

    StreamDecl clone() const;
};

enum class FeedbackKind : uint8_t { Trigger, TriggerOnce, TriggerChange, Snapshot, Tag, Filter };

const char* to_string(FeedbackKind kind);

struct FeedbackDecl {
    FeedbackKind kind = FeedbackKind::Trigger;
    ExprPtr condition;
    std::string message;       // trigger family / snapshot
    bool auto_message = false; // message synthesized from the condition text
    std::vector<std::string> columns; // tag: target column names y_i
    std::vector<std::string> sources; // tag: source streams x_i
    std::string location;             // tag/filter sink path
    SourcePos pos;

    FeedbackDecl clone() const;
};

struct Specification {
    std::vector<StreamDecl> inputs;
    std::vector<StreamDecl> outputs; // declaration order preserved; consts included
    std::vector<FeedbackDecl> feedback;
    std::string source_file;

    const StreamDecl* find_stream(std::string_view name) const;
    Specification clone() const;
};

} // namespace lola
