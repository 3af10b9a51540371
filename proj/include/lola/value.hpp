#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace lola {

enum class StreamType : uint8_t { Bool, Int, Double, String };

const char* to_string(StreamType t);

/// Runtime value of one stream position. Int is 64-bit signed, Double is
/// IEEE 754 binary64.
using Value = std::variant<bool, int64_t, double, std::string>;

StreamType type_of(const Value& v);

/// Shortest representation that parses back to the same bit pattern.
std::string format_double(double d);

/// Render a value for logs, notifications and pretty-printing. Strings are
/// double-quoted with backslash escapes; bools are `true`/`false`.
std::string format_value(const Value& v);

std::string escape_string(std::string_view s);

} // namespace lola
