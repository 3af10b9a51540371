#include "lola/builtins.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lola {

namespace {

using T = StreamType;

double arg_d(std::span<const Value> a, size_t k) { return std::get<double>(a[k]); }
int64_t arg_i(std::span<const Value> a, size_t k) { return std::get<int64_t>(a[k]); }

int64_t truncate_to_int(double d) {
    if (std::isnan(d)) return 0;
    constexpr double hi = 9223372036854775807.0;
    if (d >= hi) return std::numeric_limits<int64_t>::max();
    if (d <= -hi) return std::numeric_limits<int64_t>::min();
    return static_cast<int64_t>(d);
}

const std::vector<BuiltinSignature> kCatalog = {
    {"min", {T::Int, T::Int}, T::Int,
     [](std::span<const Value> a) { return Value{std::min(arg_i(a, 0), arg_i(a, 1))}; }},
    {"min", {T::Double, T::Double}, T::Double,
     [](std::span<const Value> a) { return Value{std::fmin(arg_d(a, 0), arg_d(a, 1))}; }},
    {"max", {T::Int, T::Int}, T::Int,
     [](std::span<const Value> a) { return Value{std::max(arg_i(a, 0), arg_i(a, 1))}; }},
    {"max", {T::Double, T::Double}, T::Double,
     [](std::span<const Value> a) { return Value{std::fmax(arg_d(a, 0), arg_d(a, 1))}; }},
    {"sqrt", {T::Double}, T::Double,
     [](std::span<const Value> a) { return Value{std::sqrt(arg_d(a, 0))}; }},
    {"sin", {T::Double}, T::Double,
     [](std::span<const Value> a) { return Value{std::sin(arg_d(a, 0))}; }},
    {"cos", {T::Double}, T::Double,
     [](std::span<const Value> a) { return Value{std::cos(arg_d(a, 0))}; }},
    {"atan2", {T::Double, T::Double}, T::Double,
     [](std::span<const Value> a) { return Value{std::atan2(arg_d(a, 0), arg_d(a, 1))}; }},
    {"abs", {T::Int}, T::Int,
     [](std::span<const Value> a) {
         int64_t v = arg_i(a, 0);
         // |int_min| saturates rather than wrapping
         if (v == std::numeric_limits<int64_t>::min())
             return Value{std::numeric_limits<int64_t>::max()};
         return Value{v < 0 ? -v : v};
     }},
    {"abs", {T::Double}, T::Double,
     [](std::span<const Value> a) { return Value{std::fabs(arg_d(a, 0))}; }},
    {"difference", {T::Double, T::Double}, T::Double,
     [](std::span<const Value> a) { return Value{std::fabs(arg_d(a, 0) - arg_d(a, 1))}; }},
    {"concat", {T::String, T::String}, T::String,
     [](std::span<const Value> a) {
         return Value{std::get<std::string>(a[0]) + std::get<std::string>(a[1])};
     }},
    {"int", {T::Double}, T::Int,
     [](std::span<const Value> a) { return Value{truncate_to_int(arg_d(a, 0))}; }},
    {"double", {T::Int}, T::Double,
     [](std::span<const Value> a) { return Value{static_cast<double>(arg_i(a, 0))}; }},
};

} // namespace

const std::vector<BuiltinSignature>& builtin_catalog() { return kCatalog; }

int find_builtin(std::string_view name, std::span<const StreamType> args) {
    for (size_t k = 0; k < kCatalog.size(); ++k) {
        const auto& sig = kCatalog[k];
        if (sig.name != name || sig.params.size() != args.size()) continue;
        if (std::equal(sig.params.begin(), sig.params.end(), args.begin()))
            return static_cast<int>(k);
    }
    return -1;
}

bool builtin_name_exists(std::string_view name) {
    return std::any_of(kCatalog.begin(), kCatalog.end(),
                       [&](const auto& sig) { return sig.name == name; });
}

} // namespace lola
