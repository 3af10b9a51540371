#pragma once

#include "lola/diagnostics.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lola {

enum class Tok : uint8_t {
    // declaration keywords
    KwInput, KwOutput, KwConst,
    KwIf, KwElif, KwElse, KwSwitch, KwCase, KwDefault,
    KwTrigger, KwTriggerOnce, KwTriggerChange, KwSnapshot,
    KwTag, KwFilter, KwAs, KwWith, KwAt,
    // type keywords
    KwBool, KwInt, KwDouble, KwString,
    // keyword atoms
    KwPosition, KwIntMin, KwIntMax, KwDoubleMin, KwDoubleMax,
    KwTrue, KwFalse,
    // literals
    Identifier, IntLiteral, DoubleLiteral, StringLiteral,
    // operators
    Assign,      // :=
    Plus, Minus, Star, Slash, Caret,
    Eq,          // =
    Ne,          // !=
    Lt, Le, Gt, Ge,
    Amp, Pipe, Bang,
    // punctuation
    LParen, RParen, LBrace, RBrace, LBracket, RBracket,
    Hash, Comma,
    Eof,
};

const char* token_name(Tok kind);

struct Token {
    Tok kind = Tok::Eof;
    std::string text;       // raw lexeme (string literals: decoded content)
    int64_t int_value = 0;
    double double_value = 0.0;
    SourcePos pos;
    size_t offset = 0;      // byte offset of lexeme start
    size_t end_offset = 0;  // one past the lexeme
};

/// Tokenize a full specification source. Throws SpecError on any character
/// outside the alphabet; `//` line comments are skipped.
std::vector<Token> tokenize(std::string_view source, std::string_view file = "");

} // namespace lola
