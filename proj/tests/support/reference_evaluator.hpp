#pragma once

#include "lola/ast.hpp"
#include "lola/engine.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lola::testing {

struct ReferenceResult {
    // dense value table per output stream, one entry per trace position
    std::map<std::string, std::vector<Value>> outputs;
    int64_t runtime_errors = 0;
    bool complete = true; // every position resolved at the fixed point
};

/// Brute-force fixed-point evaluator with unbounded memory: keeps the whole
/// trace, repeatedly tries every (stream, position) against the partial
/// table until nothing changes. Out-of-range accesses take their declared
/// defaults. Independent of the incremental engine: no rings, no future
/// index, no evaluation order.
ReferenceResult reference_evaluate(const Specification& spec,
                                   const std::vector<Event>& trace);

/// true bitwise for bool/int/string; doubles match within 1 ulp (two NaNs
/// are considered equal).
bool values_close(const Value& a, const Value& b);

} // namespace lola::testing
