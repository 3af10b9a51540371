#pragma once

#include "lola/analysis.hpp"

namespace lola::testing {

struct CycleOracleVerdict {
    bool well_formed = true;
    bool efficiently_monitorable = true;
    size_t cycles_enumerated = 0;
};

/// Independent verdicts by exhaustive simple-cycle enumeration over the
/// relative edges (parallel edges enumerated individually). Ill-formed iff
/// some simple cycle sums to zero, or one strongly connected component
/// contains simple cycles of both signs. Not efficiently monitorable iff
/// any simple cycle has positive weight. Components are found with
/// Kosaraju's algorithm (the product code uses Tarjan + Floyd-Warshall).
CycleOracleVerdict enumerate_cycles(const DependencyGraph& g);

} // namespace lola::testing
