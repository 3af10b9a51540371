#include "lola/token.hpp"

#include <cctype>
#include <charconv>
#include <unordered_map>

namespace lola {

const char* token_name(Tok kind) {
    switch (kind) {
        case Tok::KwInput: return "input";
        case Tok::KwOutput: return "output";
        case Tok::KwConst: return "const";
        case Tok::KwIf: return "if";
        case Tok::KwElif: return "elif";
        case Tok::KwElse: return "else";
        case Tok::KwSwitch: return "switch";
        case Tok::KwCase: return "case";
        case Tok::KwDefault: return "default";
        case Tok::KwTrigger: return "trigger";
        case Tok::KwTriggerOnce: return "trigger_once";
        case Tok::KwTriggerChange: return "trigger_change";
        case Tok::KwSnapshot: return "snapshot";
        case Tok::KwTag: return "tag";
        case Tok::KwFilter: return "filter";
        case Tok::KwAs: return "as";
        case Tok::KwWith: return "with";
        case Tok::KwAt: return "at";
        case Tok::KwBool: return "bool";
        case Tok::KwInt: return "int";
        case Tok::KwDouble: return "double";
        case Tok::KwString: return "string";
        case Tok::KwPosition: return "position";
        case Tok::KwIntMin: return "int_min";
        case Tok::KwIntMax: return "int_max";
        case Tok::KwDoubleMin: return "double_min";
        case Tok::KwDoubleMax: return "double_max";
        case Tok::KwTrue: return "true";
        case Tok::KwFalse: return "false";
        case Tok::Identifier: return "identifier";
        case Tok::IntLiteral: return "integer literal";
        case Tok::DoubleLiteral: return "double literal";
        case Tok::StringLiteral: return "string literal";
        case Tok::Assign: return ":=";
        case Tok::Plus: return "+";
        case Tok::Minus: return "-";
        case Tok::Star: return "*";
        case Tok::Slash: return "/";
        case Tok::Caret: return "^";
        case Tok::Eq: return "=";
        case Tok::Ne: return "!=";
        case Tok::Lt: return "<";
        case Tok::Le: return "<=";
        case Tok::Gt: return ">";
        case Tok::Ge: return ">=";
        case Tok::Amp: return "&";
        case Tok::Pipe: return "|";
        case Tok::Bang: return "!";
        case Tok::LParen: return "(";
        case Tok::RParen: return ")";
        case Tok::LBrace: return "{";
        case Tok::RBrace: return "}";
        case Tok::LBracket: return "[";
        case Tok::RBracket: return "]";
        case Tok::Hash: return "#";
        case Tok::Comma: return ",";
        case Tok::Eof: return "end of input";
    }
    return "?";
}

namespace {

const std::unordered_map<std::string_view, Tok>& keyword_table() {
    static const std::unordered_map<std::string_view, Tok> table = {
        {"input", Tok::KwInput},
        {"output", Tok::KwOutput},
        {"const", Tok::KwConst},
        {"if", Tok::KwIf},
        {"elif", Tok::KwElif},
        {"else", Tok::KwElse},
        {"switch", Tok::KwSwitch},
        {"case", Tok::KwCase},
        {"default", Tok::KwDefault},
        {"trigger", Tok::KwTrigger},
        {"trigger_once", Tok::KwTriggerOnce},
        {"trigger_change", Tok::KwTriggerChange},
        {"snapshot", Tok::KwSnapshot},
        {"tag", Tok::KwTag},
        {"filter", Tok::KwFilter},
        {"as", Tok::KwAs},
        {"with", Tok::KwWith},
        {"at", Tok::KwAt},
        {"bool", Tok::KwBool},
        {"int", Tok::KwInt},
        {"double", Tok::KwDouble},
        {"string", Tok::KwString},
        {"position", Tok::KwPosition},
        {"int_min", Tok::KwIntMin},
        {"int_max", Tok::KwIntMax},
        {"double_min", Tok::KwDoubleMin},
        {"double_max", Tok::KwDoubleMax},
        {"true", Tok::KwTrue},
        {"false", Tok::KwFalse},
    };
    return table;
}

class Lexer {
public:
    Lexer(std::string_view src, std::string_view file) : src_(src), file_(file) {}

    std::vector<Token> run() {
        std::vector<Token> tokens;
        for (;;) {
            skip_trivia();
            Token t = next();
            bool eof = t.kind == Tok::Eof;
            tokens.push_back(std::move(t));
            if (eof) break;
        }
        return tokens;
    }

private:
    std::string_view src_;
    std::string_view file_;
    size_t i_ = 0;
    SourcePos pos_;

    [[noreturn]] void fail(const std::string& msg) const {
        throw SpecError(msg, pos_, std::string(file_));
    }

    char peek(size_t ahead = 0) const {
        return i_ + ahead < src_.size() ? src_[i_ + ahead] : '\0';
    }

    void bump() {
        if (src_[i_] == '\n') {
            pos_.line++;
            pos_.column = 1;
        } else {
            pos_.column++;
        }
        i_++;
    }

    void skip_trivia() {
        while (i_ < src_.size()) {
            char c = src_[i_];
            if (c == '/' && peek(1) == '/') {
                while (i_ < src_.size() && src_[i_] != '\n') bump();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else {
                break;
            }
        }
    }

    Token make(Tok kind, size_t start, SourcePos start_pos) {
        Token t;
        t.kind = kind;
        t.text = std::string(src_.substr(start, i_ - start));
        t.pos = start_pos;
        t.offset = start;
        t.end_offset = i_;
        return t;
    }

    Token next() {
        if (i_ >= src_.size()) {
            Token t;
            t.kind = Tok::Eof;
            t.pos = pos_;
            t.offset = src_.size();
            t.end_offset = src_.size();
            return t;
        }
        size_t start = i_;
        SourcePos start_pos = pos_;
        char c = src_[i_];

        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
            return identifier(start, start_pos);
        if (std::isdigit(static_cast<unsigned char>(c)))
            return number(start, start_pos);
        if (c == '"') return string_literal(start, start_pos);

        bump();
        switch (c) {
            case '+': return make(Tok::Plus, start, start_pos);
            case '-': return make(Tok::Minus, start, start_pos);
            case '*': return make(Tok::Star, start, start_pos);
            case '/': return make(Tok::Slash, start, start_pos);
            case '^': return make(Tok::Caret, start, start_pos);
            case '=': return make(Tok::Eq, start, start_pos);
            case '(': return make(Tok::LParen, start, start_pos);
            case ')': return make(Tok::RParen, start, start_pos);
            case '{': return make(Tok::LBrace, start, start_pos);
            case '}': return make(Tok::RBrace, start, start_pos);
            case '[': return make(Tok::LBracket, start, start_pos);
            case ']': return make(Tok::RBracket, start, start_pos);
            case '#': return make(Tok::Hash, start, start_pos);
            case ',': return make(Tok::Comma, start, start_pos);
            case '&': return make(Tok::Amp, start, start_pos);
            case '|': return make(Tok::Pipe, start, start_pos);
            case '!':
                if (peek() == '=') {
                    bump();
                    return make(Tok::Ne, start, start_pos);
                }
                return make(Tok::Bang, start, start_pos);
            case '<':
                if (peek() == '=') {
                    bump();
                    return make(Tok::Le, start, start_pos);
                }
                return make(Tok::Lt, start, start_pos);
            case '>':
                if (peek() == '=') {
                    bump();
                    return make(Tok::Ge, start, start_pos);
                }
                return make(Tok::Gt, start, start_pos);
            case ':':
                if (peek() == '=') {
                    bump();
                    return make(Tok::Assign, start, start_pos);
                }
                fail("unexpected ':' (did you mean ':='?)");
            default:
                fail(std::string("unrecognized character '") + c + "'");
        }
    }

    Token identifier(size_t start, SourcePos start_pos) {
        while (i_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_'))
            bump();
        std::string_view text = src_.substr(start, i_ - start);
        auto it = keyword_table().find(text);
        return make(it != keyword_table().end() ? it->second : Tok::Identifier,
                    start, start_pos);
    }

    Token number(size_t start, SourcePos start_pos) {
        while (std::isdigit(static_cast<unsigned char>(peek()))) bump();
        bool is_double = false;
        if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
            is_double = true;
            bump();
            while (std::isdigit(static_cast<unsigned char>(peek()))) bump();
        }
        if (peek() == 'e' || peek() == 'E') {
            size_t mark = 1;
            if (peek(1) == '+' || peek(1) == '-') mark = 2;
            if (std::isdigit(static_cast<unsigned char>(peek(mark)))) {
                is_double = true;
                for (size_t k = 0; k <= mark; ++k) bump();
                while (std::isdigit(static_cast<unsigned char>(peek()))) bump();
            }
        }
        Token t = make(is_double ? Tok::DoubleLiteral : Tok::IntLiteral, start, start_pos);
        if (is_double) {
            auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(),
                                       t.double_value);
            if (res.ec != std::errc{}) fail("invalid double literal '" + t.text + "'");
        } else {
            auto res = std::from_chars(t.text.data(), t.text.data() + t.text.size(),
                                       t.int_value);
            if (res.ec != std::errc{})
                fail("integer literal out of range '" + t.text + "'");
        }
        return t;
    }

    Token string_literal(size_t start, SourcePos start_pos) {
        bump(); // opening quote
        std::string content;
        for (;;) {
            if (i_ >= src_.size()) fail("unterminated string literal");
            char c = src_[i_];
            if (c == '"') {
                bump();
                break;
            }
            if (c == '\n') fail("unterminated string literal");
            if (c == '\\') {
                bump();
                char esc = peek();
                switch (esc) {
                    case '"': content += '"'; break;
                    case '\\': content += '\\'; break;
                    case 'n': content += '\n'; break;
                    case 't': content += '\t'; break;
                    case 'r': content += '\r'; break;
                    default: fail(std::string("unknown escape '\\") + esc + "'");
                }
                bump();
            } else {
                content += c;
                bump();
            }
        }
        Token t = make(Tok::StringLiteral, start, start_pos);
        t.text = std::move(content);
        return t;
    }
};

} // namespace

std::vector<Token> tokenize(std::string_view source, std::string_view file) {
    return Lexer(source, file).run();
}

} // namespace lola
