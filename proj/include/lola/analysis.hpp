#pragma once

#include "lola/ast.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace lola {

/// Weighted multigraph over stream names. One edge per syntactic stream
/// access: `from` reads `to` at `weight` (the offset). Absolute accesses
/// `s#[i,d]` carry `absolute = true` and the anchored index; they never
/// participate in cycle weights but do force retention of position i.
struct DepEdge {
    int32_t from = -1;
    int32_t to = -1;
    int64_t weight = 0;
    bool absolute = false;
    int64_t abs_index = 0;
};

struct DependencyGraph {
    std::vector<std::string> vertices; // inputs then outputs, declaration order
    std::vector<DepEdge> edges;

    int32_t vertex_of(std::string_view name) const; // -1 if absent
};

struct CycleVerdict {
    bool ok = true;
    std::string witness; // one offending cycle, when !ok
};

struct BufferBounds {
    int64_t past_depth = 0;
    int64_t future_depth = 0;
    std::vector<int64_t> pinned; // absolute positions retained for the run
};

/// Everything the engine needs that the public result does not spell out:
/// feedback conditions treated as hidden read-only vertices, transitive
/// future-delay bounds, and the resulting ring capacities.
struct EngineLayout {
    // Stream ids: [0, num_inputs) inputs, [num_inputs, num_streams) outputs,
    // [num_streams, num_streams + num_feedback) hidden condition vertices.
    int32_t num_inputs = 0;
    int32_t num_streams = 0; // inputs + outputs
    int32_t num_vertices = 0;
    std::unordered_map<std::string, int32_t> id_of;
    std::vector<DepEdge> edges; // includes feedback-condition accesses

    // futureneed(v): how many events past position j may be required before
    // v's value at j can resolve. wait_bound additionally accounts for
    // absolute accesses that anchor early positions.
    std::vector<int64_t> futureneed;
    std::vector<int64_t> wait_bound;
    int64_t max_delay = 0;

    std::vector<int64_t> ring_capacity;              // per stream id; 0 = unbounded
    std::vector<std::vector<int64_t>> pinned_slots;  // per stream id
    std::vector<int32_t> evaluation_order;           // output + condition ids
    int32_t time_stream = -1; // stream named "time" of type double, if any
};

struct AnalysisResult {
    std::unordered_map<std::string, StreamType> type_table;
    DependencyGraph graph;
    CycleVerdict well_formed;
    CycleVerdict efficiently_monitorable;
    std::map<std::string, BufferBounds> buffer_bounds;
    std::vector<std::string> evaluation_order; // outputs only
    EngineLayout layout;
};

/// Assign a type to every expression (annotating the AST in place) and
/// return the per-stream type table. Expects a desugared specification.
/// No implicit int/double coercion; casts are explicit.
std::unordered_map<std::string, StreamType> type_check(const Specification& spec);

DependencyGraph build_dependency_graph(const Specification& spec);

/// True iff no cycle of total weight zero exists among relative-offset
/// edges. Mixed-sign cycles inside one strongly connected component are
/// rejected as well: combining a positive and a negative cycle can produce
/// zero-weight circular dependence.
CycleVerdict check_well_formed(const DependencyGraph& g);

/// True iff no positive-weight cycle exists (bounded lookahead).
CycleVerdict classify_efficiently_monitorable(const DependencyGraph& g);

/// Per stream: past_depth = max |negative incoming weight|, future_depth =
/// max positive incoming weight, pinned = absolute indices anchored on it.
std::map<std::string, BufferBounds> compute_memory_bounds(const DependencyGraph& g);

/// Topological order of the outputs over zero-weight edges, ties broken by
/// declaration order.
std::vector<std::string> compute_evaluation_order(const Specification& spec,
                                                  const DependencyGraph& g);

/// Full pipeline: type check, graph, verdicts, bounds, order, engine layout.
/// Throws SpecError on type or naming errors; verdicts are returned, not
/// thrown.
AnalysisResult analyze(const Specification& spec);

} // namespace lola
