#include "lola/value.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace lola {

const char* to_string(StreamType t) {
    switch (t) {
        case StreamType::Bool: return "bool";
        case StreamType::Int: return "int";
        case StreamType::Double: return "double";
        case StreamType::String: return "string";
    }
    return "?";
}

StreamType type_of(const Value& v) {
    switch (v.index()) {
        case 0: return StreamType::Bool;
        case 1: return StreamType::Int;
        case 2: return StreamType::Double;
        default: return StreamType::String;
    }
}

std::string format_double(double d) {
    if (std::isnan(d)) return "nan";
    if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), d);
    std::string s(buf, res.ptr);
    // Keep integral doubles visibly doubles so log round-trips preserve the
    // declared column type and spec literals reparse as doubles.
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

std::string escape_string(std::string_view s) {
    std::string out;
    out.reserve(s.size() + 2);
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

std::string format_value(const Value& v) {
    switch (v.index()) {
        case 0: return std::get<bool>(v) ? "true" : "false";
        case 1: return std::to_string(std::get<int64_t>(v));
        case 2: return format_double(std::get<double>(v));
        default: return escape_string(std::get<std::string>(v));
    }
}

} // namespace lola
