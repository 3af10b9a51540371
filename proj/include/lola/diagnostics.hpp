#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lola {

struct SourcePos {
    uint32_t line = 1;
    uint32_t column = 1;
};

/// Half-open byte range into the original source, plus the start position.
/// The byte range lets diagnostics and auto-generated trigger messages quote
/// the exact source text.
struct SourceSpan {
    size_t begin = 0;
    size_t end = 0;
    SourcePos pos;
};

std::string format_location(const std::string& file, SourcePos pos);

/// Specification-level failure: lexical, syntactic, type, structural.
class SpecError : public std::runtime_error {
public:
    SpecError(std::string message, SourcePos pos, std::string file = "")
        : std::runtime_error(format_location(file, pos) + message),
          bare_message_(std::move(message)),
          pos_(pos),
          file_(std::move(file)) {}

    explicit SpecError(std::string message)
        : std::runtime_error(message), bare_message_(std::move(message)) {}

    const std::string& bare_message() const noexcept { return bare_message_; }
    SourcePos pos() const noexcept { return pos_; }
    const std::string& file() const noexcept { return file_; }

private:
    std::string bare_message_;
    SourcePos pos_{};
    std::string file_;
};

/// Environment failure: missing files, unreadable logs, unwritable sinks.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace lola
