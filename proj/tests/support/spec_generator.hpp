#pragma once

#include "lola/ast.hpp"
#include "lola/engine.hpp"

#include <random>
#include <vector>

namespace lola::testing {

struct GeneratorOptions {
    int max_inputs = 3;
    int max_outputs = 4;
    int max_depth = 3;
    int64_t max_offset = 2;    // relative offsets drawn from [-max, +max]
    bool with_feedback = false;
    bool allow_strings = true;
};

/// Random well-typed specification over a small grammar. Not guaranteed
/// well-formed; callers filter with the analysis verdicts.
Specification generate_spec(std::mt19937_64& rng, const GeneratorOptions& opts = {});

/// Random input trace for a generated spec, up to max_events positions.
/// Doubles occasionally include NaN.
std::vector<Event> generate_trace(std::mt19937_64& rng, const Specification& spec,
                                  size_t max_events);

} // namespace lola::testing
