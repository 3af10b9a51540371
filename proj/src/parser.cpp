#include "lola/parser.hpp"

#include "lola/token.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_set>

namespace lola {

namespace {

StreamType type_of_token(Tok kind) {
    switch (kind) {
        case Tok::KwBool: return StreamType::Bool;
        case Tok::KwInt: return StreamType::Int;
        case Tok::KwDouble: return StreamType::Double;
        default: return StreamType::String;
    }
}

bool is_type_keyword(Tok kind) {
    return kind == Tok::KwBool || kind == Tok::KwInt || kind == Tok::KwDouble ||
           kind == Tok::KwString;
}

class Parser {
public:
    Parser(std::string_view source, std::string_view file)
        : source_(source), file_(file), tokens_(tokenize(source, file)) {}

    Specification run() {
        Specification spec;
        spec.source_file = std::string(file_);
        while (!check(Tok::Eof)) parse_declaration(spec);
        check_names(spec);
        return spec;
    }

private:
    std::string_view source_;
    std::string_view file_;
    std::vector<Token> tokens_;
    size_t i_ = 0;

    const Token& peek(size_t ahead = 0) const {
        size_t k = std::min(i_ + ahead, tokens_.size() - 1);
        return tokens_[k];
    }

    const Token& advance() { return tokens_[std::min(i_++, tokens_.size() - 1)]; }

    bool check(Tok kind) const { return peek().kind == kind; }

    bool accept(Tok kind) {
        if (!check(kind)) return false;
        ++i_;
        return true;
    }

    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = peek();
        std::string found = t.kind == Tok::Identifier || t.kind == Tok::IntLiteral ||
                                    t.kind == Tok::DoubleLiteral
                                ? "'" + t.text + "'"
                            : t.kind == Tok::StringLiteral ? "string literal"
                                                           : std::string("'") +
                                                                 token_name(t.kind) + "'";
        throw SpecError("expected " + expected + ", found " + found, t.pos,
                        std::string(file_));
    }

    const Token& expect(Tok kind, const std::string& what) {
        if (!check(kind)) fail(what);
        return tokens_[i_++];
    }

    // ── declarations ────────────────────────────────────────────────────

    void parse_declaration(Specification& spec) {
        switch (peek().kind) {
            case Tok::KwInput: parse_input(spec); break;
            case Tok::KwOutput: parse_output(spec, StreamKind::Output); break;
            case Tok::KwConst: parse_output(spec, StreamKind::Constant); break;
            case Tok::KwTrigger:
                parse_observation(spec, FeedbackKind::Trigger);
                break;
            case Tok::KwTriggerOnce:
                parse_observation(spec, FeedbackKind::TriggerOnce);
                break;
            case Tok::KwTriggerChange:
                parse_observation(spec, FeedbackKind::TriggerChange);
                break;
            case Tok::KwSnapshot:
                parse_observation(spec, FeedbackKind::Snapshot);
                break;
            case Tok::KwTag: parse_tag(spec); break;
            case Tok::KwFilter: parse_filter(spec); break;
            default:
                fail("a declaration (input, output, const, trigger, trigger_once, "
                     "trigger_change, snapshot, tag, or filter)");
        }
    }

    StreamType parse_type() {
        if (!is_type_keyword(peek().kind)) fail("a stream type (bool, int, double, string)");
        return type_of_token(advance().kind);
    }

    void parse_input(Specification& spec) {
        advance(); // input
        StreamType type = parse_type();
        do {
            const Token& name = expect(Tok::Identifier, "a stream name");
            StreamDecl d;
            d.name = name.text;
            d.type = type;
            d.kind = StreamKind::Input;
            d.pos = name.pos;
            spec.inputs.push_back(std::move(d));
        } while (accept(Tok::Comma));
    }

    void parse_output(Specification& spec, StreamKind kind) {
        advance(); // output / const
        StreamType type = parse_type();
        const Token& name = expect(Tok::Identifier, "a stream name");
        expect(Tok::Assign, "':='");
        StreamDecl d;
        d.name = name.text;
        d.type = type;
        d.kind = kind;
        d.definition = parse_expression();
        d.pos = name.pos;
        spec.outputs.push_back(std::move(d));
    }

    std::string slice_source(const SourceSpan& span) const {
        std::string text(source_.substr(span.begin, span.end - span.begin));
        // collapse internal runs of whitespace so multi-line conditions make
        // one-line messages
        std::string out;
        bool in_ws = false;
        for (char c : text) {
            if (std::isspace(static_cast<unsigned char>(c))) {
                in_ws = true;
                continue;
            }
            if (in_ws && !out.empty()) out += ' ';
            in_ws = false;
            out += c;
        }
        return out;
    }

    void parse_observation(Specification& spec, FeedbackKind kind) {
        FeedbackDecl d;
        d.kind = kind;
        d.pos = peek().pos;
        advance();
        d.condition = parse_expression();
        if (accept(Tok::KwWith)) {
            d.message = expect(Tok::StringLiteral, "a message string").text;
        } else if (check(Tok::StringLiteral)) {
            d.message = advance().text; // juxtaposed message form
        } else {
            d.message = slice_source(d.condition->span);
            d.auto_message = true;
        }
        spec.feedback.push_back(std::move(d));
    }

    std::vector<std::string> parse_name_list() {
        std::vector<std::string> names;
        do {
            names.push_back(expect(Tok::Identifier, "a stream name").text);
        } while (accept(Tok::Comma));
        return names;
    }

    void parse_tag(Specification& spec) {
        FeedbackDecl d;
        d.kind = FeedbackKind::Tag;
        d.pos = peek().pos;
        advance(); // tag
        expect(Tok::KwAs, "'as'");
        d.columns = parse_name_list();
        expect(Tok::KwIf, "'if'");
        d.condition = parse_expression();
        expect(Tok::KwWith, "'with'");
        d.sources = parse_name_list();
        expect(Tok::KwAt, "'at'");
        d.location = expect(Tok::StringLiteral, "a sink path string").text;
        if (d.columns.size() != d.sources.size())
            throw SpecError("tag declares " + std::to_string(d.columns.size()) +
                                " target columns but " + std::to_string(d.sources.size()) +
                                " source streams",
                            d.pos, std::string(file_));
        check_distinct(d.columns, d.pos, "tag target column");
        d.message = "tag at " + d.location;
        spec.feedback.push_back(std::move(d));
    }

    void parse_filter(Specification& spec) {
        FeedbackDecl d;
        d.kind = FeedbackKind::Filter;
        d.pos = peek().pos;
        advance(); // filter
        d.columns = parse_name_list();
        d.sources = d.columns; // tag with identical source and target names
        expect(Tok::KwIf, "'if'");
        d.condition = parse_expression();
        expect(Tok::KwAt, "'at'");
        d.location = expect(Tok::StringLiteral, "a sink path string").text;
        check_distinct(d.columns, d.pos, "filter stream");
        d.message = "filter at " + d.location;
        spec.feedback.push_back(std::move(d));
    }

    void check_distinct(const std::vector<std::string>& names, SourcePos pos,
                        const std::string& what) {
        std::unordered_set<std::string> seen;
        for (const auto& n : names)
            if (!seen.insert(n).second)
                throw SpecError("duplicate " + what + " '" + n + "'", pos,
                                std::string(file_));
    }

    void check_names(const Specification& spec) {
        std::unordered_set<std::string> seen;
        auto add = [&](const StreamDecl& d) {
            if (!seen.insert(d.name).second)
                throw SpecError("duplicate stream name '" + d.name + "'", d.pos,
                                std::string(file_));
        };
        for (const auto& d : spec.inputs) add(d);
        for (const auto& d : spec.outputs) add(d);
    }

    // ── expressions ─────────────────────────────────────────────────────

    SourceSpan span_from(size_t start_index) const {
        SourceSpan s;
        s.begin = tokens_[start_index].offset;
        s.pos = tokens_[start_index].pos;
        s.end = i_ > 0 ? tokens_[i_ - 1].end_offset : s.begin;
        return s;
    }

    ExprPtr parse_expression() { return parse_or(); }

    ExprPtr parse_or() {
        size_t start = i_;
        ExprPtr lhs = parse_and();
        while (accept(Tok::Pipe)) {
            ExprPtr rhs = parse_and();
            lhs = make_expr(Binary{BinaryOp::Or, std::move(lhs), std::move(rhs)},
                            span_from(start));
        }
        return lhs;
    }

    ExprPtr parse_and() {
        size_t start = i_;
        ExprPtr lhs = parse_comparison();
        while (accept(Tok::Amp)) {
            ExprPtr rhs = parse_comparison();
            lhs = make_expr(Binary{BinaryOp::And, std::move(lhs), std::move(rhs)},
                            span_from(start));
        }
        return lhs;
    }

    ExprPtr parse_comparison() {
        size_t start = i_;
        ExprPtr lhs = parse_additive();
        for (;;) {
            BinaryOp op;
            switch (peek().kind) {
                case Tok::Eq: op = BinaryOp::Eq; break;
                case Tok::Ne: op = BinaryOp::Ne; break;
                case Tok::Lt: op = BinaryOp::Lt; break;
                case Tok::Le: op = BinaryOp::Le; break;
                case Tok::Gt: op = BinaryOp::Gt; break;
                case Tok::Ge: op = BinaryOp::Ge; break;
                default: return lhs;
            }
            advance();
            ExprPtr rhs = parse_additive();
            lhs = make_expr(Binary{op, std::move(lhs), std::move(rhs)},
                            span_from(start));
        }
    }

    ExprPtr parse_additive() {
        size_t start = i_;
        ExprPtr lhs = parse_multiplicative();
        for (;;) {
            BinaryOp op;
            if (check(Tok::Plus)) op = BinaryOp::Add;
            else if (check(Tok::Minus)) op = BinaryOp::Sub;
            else return lhs;
            advance();
            ExprPtr rhs = parse_multiplicative();
            lhs = make_expr(Binary{op, std::move(lhs), std::move(rhs)},
                            span_from(start));
        }
    }

    ExprPtr parse_multiplicative() {
        size_t start = i_;
        ExprPtr lhs = parse_power();
        for (;;) {
            BinaryOp op;
            if (check(Tok::Star)) op = BinaryOp::Mul;
            else if (check(Tok::Slash)) op = BinaryOp::Div;
            else return lhs;
            advance();
            ExprPtr rhs = parse_power();
            lhs = make_expr(Binary{op, std::move(lhs), std::move(rhs)},
                            span_from(start));
        }
    }

    ExprPtr parse_power() {
        size_t start = i_;
        ExprPtr base = parse_unary();
        if (accept(Tok::Caret)) {
            ExprPtr exp = parse_power(); // right-associative
            return make_expr(Binary{BinaryOp::Pow, std::move(base), std::move(exp)},
                             span_from(start));
        }
        return base;
    }

    ExprPtr parse_unary() {
        size_t start = i_;
        if (accept(Tok::Bang)) {
            ExprPtr operand = parse_unary();
            return make_expr(Unary{UnaryOp::Not, std::move(operand)}, span_from(start));
        }
        if (accept(Tok::Minus)) {
            ExprPtr operand = parse_unary();
            return make_expr(Unary{UnaryOp::Neg, std::move(operand)}, span_from(start));
        }
        return parse_primary();
    }

    ExprPtr parse_primary() {
        size_t start = i_;
        const Token& t = peek();
        switch (t.kind) {
            case Tok::IntLiteral:
                advance();
                return make_expr(Literal{Value{t.int_value}}, span_from(start));
            case Tok::DoubleLiteral:
                advance();
                return make_expr(Literal{Value{t.double_value}}, span_from(start));
            case Tok::StringLiteral:
                advance();
                return make_expr(Literal{Value{t.text}}, span_from(start));
            case Tok::KwTrue:
                advance();
                return make_expr(Literal{Value{true}}, span_from(start));
            case Tok::KwFalse:
                advance();
                return make_expr(Literal{Value{false}}, span_from(start));
            case Tok::KwPosition:
                advance();
                return make_expr(KeywordAtom{Keyword::Position}, span_from(start));
            case Tok::KwIntMin:
                advance();
                return make_expr(KeywordAtom{Keyword::IntMin}, span_from(start));
            case Tok::KwIntMax:
                advance();
                return make_expr(KeywordAtom{Keyword::IntMax}, span_from(start));
            case Tok::KwDoubleMin:
                advance();
                return make_expr(KeywordAtom{Keyword::DoubleMin}, span_from(start));
            case Tok::KwDoubleMax:
                advance();
                return make_expr(KeywordAtom{Keyword::DoubleMax}, span_from(start));
            case Tok::LParen: {
                advance();
                ExprPtr inner = parse_expression();
                expect(Tok::RParen, "')'");
                return inner;
            }
            case Tok::KwIf: return parse_conditional();
            case Tok::KwSwitch: return parse_switch();
            case Tok::KwInt:
            case Tok::KwDouble:
            case Tok::KwBool:
            case Tok::KwString: {
                // cast syntax: the type name used as a function
                std::string name = token_name(t.kind);
                advance();
                expect(Tok::LParen, "'(' after cast");
                Call call;
                call.function = name;
                call.args.push_back(parse_expression());
                expect(Tok::RParen, "')'");
                return make_expr(std::move(call), span_from(start));
            }
            case Tok::Identifier: return parse_identifier_expression();
            default: fail("an expression");
        }
    }

    int64_t parse_signed_int(const std::string& what) {
        bool neg = accept(Tok::Minus);
        const Token& t = expect(Tok::IntLiteral, what);
        return neg ? -t.int_value : t.int_value;
    }

    ExprPtr parse_identifier_expression() {
        size_t start = i_;
        const Token name = advance();
        if (accept(Tok::LParen)) {
            Call call;
            call.function = name.text;
            if (!check(Tok::RParen)) {
                do {
                    call.args.push_back(parse_expression());
                } while (accept(Tok::Comma));
            }
            expect(Tok::RParen, "')'");
            return make_expr(std::move(call), span_from(start));
        }
        if (accept(Tok::LBracket)) {
            SourcePos offset_pos = peek().pos;
            int64_t offset = parse_signed_int("an integer offset");
            expect(Tok::Comma, "','");
            ExprPtr fallback = parse_expression();
            expect(Tok::RBracket, "']'");
            if (offset == 0)
                throw SpecError("present-value access carries no default; write '" +
                                    name.text + "' instead of '" + name.text + "[0,...]'",
                                offset_pos, std::string(file_));
            return make_expr(StreamAccess{name.text, offset, std::move(fallback)},
                             span_from(start));
        }
        if (accept(Tok::Hash)) {
            expect(Tok::LBracket, "'[' after '#'");
            SourcePos index_pos = peek().pos;
            int64_t index = parse_signed_int("a trace position");
            if (index < 0)
                throw SpecError("absolute offset must be a non-negative trace position",
                                index_pos, std::string(file_));
            expect(Tok::Comma, "','");
            ExprPtr fallback = parse_expression();
            expect(Tok::RBracket, "']'");
            return make_expr(AbsoluteAccess{name.text, index, std::move(fallback)},
                             span_from(start));
        }
        return make_expr(StreamAccess{name.text, 0, nullptr}, span_from(start));
    }

    ExprPtr parse_braced_expression() {
        expect(Tok::LBrace, "'{'");
        ExprPtr e = parse_expression();
        expect(Tok::RBrace, "'}'");
        return e;
    }

    ExprPtr parse_conditional() {
        size_t start = i_;
        advance(); // if
        Conditional cond;
        ExprPtr c = parse_expression();
        ExprPtr v = parse_braced_expression();
        cond.branches.push_back(CondBranch{std::move(c), std::move(v)});
        while (accept(Tok::KwElif)) {
            ExprPtr ec = parse_expression();
            ExprPtr ev = parse_braced_expression();
            cond.branches.push_back(CondBranch{std::move(ec), std::move(ev)});
        }
        expect(Tok::KwElse, "'elif' or 'else'");
        cond.otherwise = parse_braced_expression();
        return make_expr(std::move(cond), span_from(start));
    }

    Value parse_case_label() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Minus:
            case Tok::IntLiteral: {
                if (t.kind == Tok::Minus && peek(1).kind == Tok::DoubleLiteral) {
                    advance();
                    return Value{-advance().double_value};
                }
                return Value{parse_signed_int("a case label")};
            }
            case Tok::DoubleLiteral: advance(); return Value{t.double_value};
            case Tok::StringLiteral: advance(); return Value{t.text};
            case Tok::KwTrue: advance(); return Value{true};
            case Tok::KwFalse: advance(); return Value{false};
            default: fail("a constant case label");
        }
    }

    static bool label_less(const Value& a, const Value& b) {
        if (a.index() != b.index()) return false;
        return a < b;
    }

    ExprPtr parse_switch() {
        size_t start = i_;
        advance(); // switch
        Switch sw;
        sw.scrutinee = parse_expression();
        expect(Tok::LBrace, "'{'");
        while (check(Tok::KwCase)) {
            SourcePos case_pos = peek().pos;
            advance();
            Value label = parse_case_label();
            if (!sw.cases.empty() && label.index() == sw.cases.back().label.index() &&
                !label_less(sw.cases.back().label, label))
                throw SpecError("switch case labels must be monotonically increasing "
                                "(offending label " + format_value(label) + ")",
                                case_pos, std::string(file_));
            ExprPtr v = parse_braced_expression();
            sw.cases.push_back(SwitchCase{std::move(label), std::move(v)});
        }
        expect(Tok::KwDefault, "'case' or 'default'");
        sw.fallback = parse_braced_expression();
        expect(Tok::RBrace, "'}'");
        return make_expr(std::move(sw), span_from(start));
    }
};

// ── desugaring ──────────────────────────────────────────────────────────

ExprPtr desugar_expr(ExprPtr e) {
    ExprNode& node = e->node;
    if (auto* access = std::get_if<StreamAccess>(&node)) {
        if (access->fallback) access->fallback = desugar_expr(std::move(access->fallback));
        return e;
    }
    if (auto* abs = std::get_if<AbsoluteAccess>(&node)) {
        if (abs->fallback) abs->fallback = desugar_expr(std::move(abs->fallback));
        return e;
    }
    if (auto* call = std::get_if<Call>(&node)) {
        for (auto& a : call->args) a = desugar_expr(std::move(a));
        if (call->function == "ite" && call->args.size() == 3) {
            Conditional cond;
            cond.branches.push_back(
                CondBranch{std::move(call->args[0]), std::move(call->args[1])});
            cond.otherwise = std::move(call->args[2]);
            return make_expr(std::move(cond), e->span);
        }
        return e;
    }
    if (auto* un = std::get_if<Unary>(&node)) {
        un->operand = desugar_expr(std::move(un->operand));
        return e;
    }
    if (auto* bin = std::get_if<Binary>(&node)) {
        bin->lhs = desugar_expr(std::move(bin->lhs));
        bin->rhs = desugar_expr(std::move(bin->rhs));
        return e;
    }
    if (auto* cond = std::get_if<Conditional>(&node)) {
        for (auto& b : cond->branches) {
            b.condition = desugar_expr(std::move(b.condition));
            b.value = desugar_expr(std::move(b.value));
        }
        cond->otherwise = desugar_expr(std::move(cond->otherwise));
        // elif chain -> nested if/else, innermost first
        while (cond->branches.size() > 1) {
            Conditional inner;
            inner.branches.push_back(std::move(cond->branches.back()));
            cond->branches.pop_back();
            inner.otherwise = std::move(cond->otherwise);
            cond->otherwise = make_expr(std::move(inner), e->span);
        }
        return e;
    }
    if (auto* sw = std::get_if<Switch>(&node)) {
        sw->scrutinee = desugar_expr(std::move(sw->scrutinee));
        for (auto& c : sw->cases) c.value = desugar_expr(std::move(c.value));
        sw->fallback = desugar_expr(std::move(sw->fallback));
        return e;
    }
    return e; // Literal, KeywordAtom
}

} // namespace

Specification parse_specification(std::string_view source, std::string_view file) {
    return Parser(source, file).run();
}

Specification desugar(Specification spec) {
    for (auto& d : spec.outputs) {
        if (d.kind == StreamKind::Constant) d.kind = StreamKind::Output;
        if (d.definition) d.definition = desugar_expr(std::move(d.definition));
    }
    for (auto& f : spec.feedback)
        if (f.condition) f.condition = desugar_expr(std::move(f.condition));
    return spec;
}

Specification merge_specifications(std::vector<Specification> specs) {
    if (specs.empty()) throw SpecError("no specifications to merge");
    Specification merged = std::move(specs.front());
    for (size_t k = 1; k < specs.size(); ++k) {
        Specification& next = specs[k];
        if (!merged.source_file.empty() && !next.source_file.empty())
            merged.source_file += "+" + next.source_file;
        for (auto& in : next.inputs) {
            const StreamDecl* existing = merged.find_stream(in.name);
            if (!existing) {
                merged.inputs.push_back(std::move(in));
                continue;
            }
            if (existing->kind != StreamKind::Input || existing->type != in.type)
                throw SpecError("conflicting declarations of stream '" + in.name +
                                    "' across specification files",
                                in.pos, next.source_file);
        }
        for (auto& out : next.outputs) {
            const StreamDecl* existing = merged.find_stream(out.name);
            if (!existing) {
                merged.outputs.push_back(std::move(out));
                continue;
            }
            bool identical = existing->kind != StreamKind::Input &&
                             existing->type == out.type && existing->definition &&
                             out.definition &&
                             structurally_equal(*existing->definition, *out.definition);
            if (!identical)
                throw SpecError("conflicting definitions of stream '" + out.name +
                                    "' across specification files",
                                out.pos, next.source_file);
        }
        for (auto& f : next.feedback) merged.feedback.push_back(std::move(f));
    }
    return merged;
}

// ── pretty-printing ─────────────────────────────────────────────────────

namespace {

void print_expr(const Expr& e, std::ostream& os) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Literal>) {
                os << format_value(n.value);
            } else if constexpr (std::is_same_v<T, KeywordAtom>) {
                os << to_string(n.word);
            } else if constexpr (std::is_same_v<T, StreamAccess>) {
                os << n.stream;
                if (n.offset != 0) {
                    os << "[" << n.offset << ",";
                    print_expr(*n.fallback, os);
                    os << "]";
                }
            } else if constexpr (std::is_same_v<T, AbsoluteAccess>) {
                os << n.stream << "#[" << n.index << ",";
                print_expr(*n.fallback, os);
                os << "]";
            } else if constexpr (std::is_same_v<T, Call>) {
                os << n.function << "(";
                for (size_t k = 0; k < n.args.size(); ++k) {
                    if (k) os << ", ";
                    print_expr(*n.args[k], os);
                }
                os << ")";
            } else if constexpr (std::is_same_v<T, Unary>) {
                os << "(" << to_string(n.op);
                print_expr(*n.operand, os);
                os << ")";
            } else if constexpr (std::is_same_v<T, Binary>) {
                os << "(";
                print_expr(*n.lhs, os);
                os << " " << to_string(n.op) << " ";
                print_expr(*n.rhs, os);
                os << ")";
            } else if constexpr (std::is_same_v<T, Conditional>) {
                for (size_t k = 0; k < n.branches.size(); ++k) {
                    os << (k == 0 ? "if " : " elif ");
                    print_expr(*n.branches[k].condition, os);
                    os << " { ";
                    print_expr(*n.branches[k].value, os);
                    os << " }";
                }
                os << " else { ";
                print_expr(*n.otherwise, os);
                os << " }";
            } else {
                static_assert(std::is_same_v<T, Switch>);
                os << "switch ";
                print_expr(*n.scrutinee, os);
                os << " {";
                for (const auto& c : n.cases) {
                    os << " case " << format_value(c.label) << " { ";
                    print_expr(*c.value, os);
                    os << " }";
                }
                os << " default { ";
                print_expr(*n.fallback, os);
                os << " } }";
            }
        },
        e.node);
}

} // namespace

std::string pretty_print(const Expr& expr) {
    std::ostringstream os;
    print_expr(expr, os);
    return os.str();
}

std::string pretty_print(const Specification& spec) {
    std::ostringstream os;
    for (const auto& d : spec.inputs)
        os << "input " << to_string(d.type) << " " << d.name << "\n";
    for (const auto& d : spec.outputs) {
        os << (d.kind == StreamKind::Constant ? "const " : "output ")
           << to_string(d.type) << " " << d.name << " := ";
        print_expr(*d.definition, os);
        os << "\n";
    }
    for (const auto& f : spec.feedback) {
        switch (f.kind) {
            case FeedbackKind::Trigger:
            case FeedbackKind::TriggerOnce:
            case FeedbackKind::TriggerChange:
            case FeedbackKind::Snapshot:
                os << to_string(f.kind) << " ";
                print_expr(*f.condition, os);
                if (!f.auto_message) os << " with " << escape_string(f.message);
                os << "\n";
                break;
            case FeedbackKind::Tag: {
                os << "tag as ";
                for (size_t k = 0; k < f.columns.size(); ++k)
                    os << (k ? ", " : "") << f.columns[k];
                os << " if ";
                print_expr(*f.condition, os);
                os << " with ";
                for (size_t k = 0; k < f.sources.size(); ++k)
                    os << (k ? ", " : "") << f.sources[k];
                os << " at " << escape_string(f.location) << "\n";
                break;
            }
            case FeedbackKind::Filter: {
                os << "filter ";
                for (size_t k = 0; k < f.columns.size(); ++k)
                    os << (k ? ", " : "") << f.columns[k];
                os << " if ";
                print_expr(*f.condition, os);
                os << " at " << escape_string(f.location) << "\n";
                break;
            }
        }
    }
    return os.str();
}

// ── structural equality ─────────────────────────────────────────────────

bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, Literal>) {
                return x.value == y.value;
            } else if constexpr (std::is_same_v<T, KeywordAtom>) {
                return x.word == y.word;
            } else if constexpr (std::is_same_v<T, StreamAccess>) {
                if (x.stream != y.stream || x.offset != y.offset) return false;
                if (!x.fallback != !y.fallback) return false;
                return !x.fallback || structurally_equal(*x.fallback, *y.fallback);
            } else if constexpr (std::is_same_v<T, AbsoluteAccess>) {
                return x.stream == y.stream && x.index == y.index &&
                       structurally_equal(*x.fallback, *y.fallback);
            } else if constexpr (std::is_same_v<T, Call>) {
                if (x.function != y.function || x.args.size() != y.args.size())
                    return false;
                for (size_t k = 0; k < x.args.size(); ++k)
                    if (!structurally_equal(*x.args[k], *y.args[k])) return false;
                return true;
            } else if constexpr (std::is_same_v<T, Unary>) {
                return x.op == y.op && structurally_equal(*x.operand, *y.operand);
            } else if constexpr (std::is_same_v<T, Binary>) {
                return x.op == y.op && structurally_equal(*x.lhs, *y.lhs) &&
                       structurally_equal(*x.rhs, *y.rhs);
            } else if constexpr (std::is_same_v<T, Conditional>) {
                if (x.branches.size() != y.branches.size()) return false;
                for (size_t k = 0; k < x.branches.size(); ++k) {
                    if (!structurally_equal(*x.branches[k].condition,
                                            *y.branches[k].condition) ||
                        !structurally_equal(*x.branches[k].value, *y.branches[k].value))
                        return false;
                }
                return structurally_equal(*x.otherwise, *y.otherwise);
            } else {
                static_assert(std::is_same_v<T, Switch>);
                if (!structurally_equal(*x.scrutinee, *y.scrutinee)) return false;
                if (x.cases.size() != y.cases.size()) return false;
                for (size_t k = 0; k < x.cases.size(); ++k) {
                    if (x.cases[k].label != y.cases[k].label) return false;
                    if (!structurally_equal(*x.cases[k].value, *y.cases[k].value))
                        return false;
                }
                return structurally_equal(*x.fallback, *y.fallback);
            }
        },
        a.node);
}

bool structurally_equal(const Specification& a, const Specification& b) {
    if (a.inputs.size() != b.inputs.size() || a.outputs.size() != b.outputs.size() ||
        a.feedback.size() != b.feedback.size())
        return false;
    for (size_t k = 0; k < a.inputs.size(); ++k) {
        if (a.inputs[k].name != b.inputs[k].name ||
            a.inputs[k].type != b.inputs[k].type)
            return false;
    }
    for (size_t k = 0; k < a.outputs.size(); ++k) {
        const auto& x = a.outputs[k];
        const auto& y = b.outputs[k];
        if (x.name != y.name || x.type != y.type || x.kind != y.kind) return false;
        if (!structurally_equal(*x.definition, *y.definition)) return false;
    }
    for (size_t k = 0; k < a.feedback.size(); ++k) {
        const auto& x = a.feedback[k];
        const auto& y = b.feedback[k];
        if (x.kind != y.kind || x.columns != y.columns || x.sources != y.sources ||
            x.location != y.location)
            return false;
        if (x.auto_message != y.auto_message) return false;
        if (!x.auto_message && x.message != y.message) return false;
        if (!structurally_equal(*x.condition, *y.condition)) return false;
    }
    return true;
}

} // namespace lola
