#pragma once

#include "lola/value.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace lola {

struct BuiltinSignature {
    std::string_view name;
    std::vector<StreamType> params;
    StreamType result;
    Value (*apply)(std::span<const Value> args);
};

/// The function catalog: min/max (int and double), sqrt, sin, cos, atan2,
/// abs, difference(a,b) = |a-b|, concat, and the casts int(double) /
/// double(int). All entries are pure.
const std::vector<BuiltinSignature>& builtin_catalog();

/// Index into the catalog for an exact (name, argument types) match, -1 if
/// absent.
int find_builtin(std::string_view name, std::span<const StreamType> args);

bool builtin_name_exists(std::string_view name);

} // namespace lola
