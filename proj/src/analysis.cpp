#include "lola/analysis.hpp"

#include "lola/builtins.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <limits>
#include <sstream>

namespace lola {

int32_t DependencyGraph::vertex_of(std::string_view name) const {
    for (size_t k = 0; k < vertices.size(); ++k)
        if (vertices[k] == name) return static_cast<int32_t>(k);
    return -1;
}

namespace {

struct SymbolTable {
    std::unordered_map<std::string, int32_t> id_of;
    std::vector<StreamType> types;  // by id
    std::vector<std::string> names; // by id
    int32_t num_inputs = 0;
};

SymbolTable build_symbols(const Specification& spec) {
    SymbolTable sym;
    auto add = [&](const StreamDecl& d) {
        sym.id_of.emplace(d.name, static_cast<int32_t>(sym.types.size()));
        sym.types.push_back(d.type);
        sym.names.push_back(d.name);
    };
    for (const auto& d : spec.inputs) add(d);
    sym.num_inputs = static_cast<int32_t>(spec.inputs.size());
    for (const auto& d : spec.outputs) add(d);
    return sym;
}

class TypeChecker {
public:
    TypeChecker(const Specification& spec, const SymbolTable& sym)
        : spec_(spec), sym_(sym) {}

    void run() {
        for (const auto& d : spec_.outputs) {
            StreamType t = infer(*d.definition);
            if (t != d.type)
                fail(*d.definition,
                     "stream '" + d.name + "' is declared " + to_string(d.type) +
                         " but its definition has type " + to_string(t));
        }
        for (const auto& f : spec_.feedback) {
            StreamType t = infer(*f.condition);
            if (t != StreamType::Bool)
                fail(*f.condition, std::string(to_string(f.kind)) +
                                       " condition must be bool, got " + to_string(t));
            for (const auto& s : f.sources)
                if (!sym_.id_of.count(s))
                    throw SpecError(std::string(to_string(f.kind)) +
                                        " references undeclared stream '" + s + "'",
                                    f.pos, spec_.source_file);
        }
    }

private:
    const Specification& spec_;
    const SymbolTable& sym_;

    [[noreturn]] void fail(const Expr& e, const std::string& msg) const {
        throw SpecError(msg, e.span.pos, spec_.source_file);
    }

    StreamType stream_type(const Expr& e, const std::string& name) {
        auto it = sym_.id_of.find(name);
        if (it == sym_.id_of.end())
            fail(e, "reference to undeclared stream '" + name + "'");
        e.stream_id = it->second;
        return sym_.types[it->second];
    }

    StreamType infer(const Expr& e) {
        StreamType t = infer_node(e);
        e.type = t;
        return t;
    }

    StreamType infer_node(const Expr& e) {
        return std::visit(
            [&](const auto& n) -> StreamType {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, Literal>) {
                    return type_of(n.value);
                } else if constexpr (std::is_same_v<T, KeywordAtom>) {
                    switch (n.word) {
                        case Keyword::Position:
                        case Keyword::IntMin:
                        case Keyword::IntMax: return StreamType::Int;
                        default: return StreamType::Double;
                    }
                } else if constexpr (std::is_same_v<T, StreamAccess>) {
                    StreamType t = stream_type(e, n.stream);
                    if (n.fallback) {
                        StreamType ft = infer(*n.fallback);
                        if (ft != t)
                            fail(*n.fallback,
                                 "default value has type " + std::string(to_string(ft)) +
                                     " but stream '" + n.stream + "' is " + to_string(t));
                    }
                    return t;
                } else if constexpr (std::is_same_v<T, AbsoluteAccess>) {
                    StreamType t = stream_type(e, n.stream);
                    StreamType ft = infer(*n.fallback);
                    if (ft != t)
                        fail(*n.fallback,
                             "default value has type " + std::string(to_string(ft)) +
                                 " but stream '" + n.stream + "' is " + to_string(t));
                    return t;
                } else if constexpr (std::is_same_v<T, Call>) {
                    std::vector<StreamType> args;
                    for (const auto& a : n.args) args.push_back(infer(*a));
                    int id = find_builtin(n.function, args);
                    if (id < 0) {
                        if (!builtin_name_exists(n.function))
                            fail(e, "unknown function '" + n.function + "'");
                        std::string sig = n.function + "(";
                        for (size_t k = 0; k < args.size(); ++k)
                            sig += std::string(k ? ", " : "") + to_string(args[k]);
                        fail(e, "no overload of " + sig + ")");
                    }
                    e.builtin_id = id;
                    return builtin_catalog()[id].result;
                } else if constexpr (std::is_same_v<T, Unary>) {
                    StreamType t = infer(*n.operand);
                    if (n.op == UnaryOp::Not) {
                        if (t != StreamType::Bool)
                            fail(e, "'!' needs a bool operand, got " +
                                        std::string(to_string(t)));
                        return StreamType::Bool;
                    }
                    if (t != StreamType::Int && t != StreamType::Double)
                        fail(e, "unary '-' needs a numeric operand, got " +
                                    std::string(to_string(t)));
                    return t;
                } else if constexpr (std::is_same_v<T, Binary>) {
                    return infer_binary(e, n);
                } else if constexpr (std::is_same_v<T, Conditional>) {
                    StreamType result{};
                    bool first = true;
                    for (const auto& b : n.branches) {
                        StreamType ct = infer(*b.condition);
                        if (ct != StreamType::Bool)
                            fail(*b.condition, "condition must be bool, got " +
                                                   std::string(to_string(ct)));
                        StreamType vt = infer(*b.value);
                        if (first) {
                            result = vt;
                            first = false;
                        } else if (vt != result) {
                            fail(*b.value, "branches disagree: " +
                                               std::string(to_string(result)) + " vs " +
                                               to_string(vt));
                        }
                    }
                    StreamType et = infer(*n.otherwise);
                    if (et != result)
                        fail(*n.otherwise, "branches disagree: " +
                                               std::string(to_string(result)) + " vs " +
                                               to_string(et));
                    return result;
                } else {
                    static_assert(std::is_same_v<T, Switch>);
                    StreamType st = infer(*n.scrutinee);
                    StreamType result{};
                    bool first = true;
                    for (const auto& c : n.cases) {
                        if (type_of(c.label) != st)
                            fail(e, "case label " + format_value(c.label) +
                                        " does not match scrutinee type " +
                                        to_string(st));
                        StreamType vt = infer(*c.value);
                        if (first) {
                            result = vt;
                            first = false;
                        } else if (vt != result) {
                            fail(*c.value, "switch cases disagree: " +
                                               std::string(to_string(result)) + " vs " +
                                               to_string(vt));
                        }
                    }
                    StreamType dt = infer(*n.fallback);
                    if (!first && dt != result)
                        fail(*n.fallback, "switch cases disagree: " +
                                              std::string(to_string(result)) + " vs " +
                                              to_string(dt));
                    return first ? dt : result;
                }
            },
            e.node);
    }

    StreamType infer_binary(const Expr& e, const Binary& n) {
        StreamType lt = infer(*n.lhs);
        StreamType rt = infer(*n.rhs);
        auto both = [&](StreamType t) { return lt == t && rt == t; };
        auto mismatch = [&](const std::string& what) -> StreamType {
            std::ostringstream os;
            os << "operator '" << to_string(n.op) << "' " << what << ": left is "
               << to_string(lt) << " (line " << n.lhs->span.pos.line << ", column "
               << n.lhs->span.pos.column << "), right is " << to_string(rt) << " (line "
               << n.rhs->span.pos.line << ", column " << n.rhs->span.pos.column << ")";
            throw SpecError(os.str(), e.span.pos, spec_.source_file);
        };
        switch (n.op) {
            case BinaryOp::Add:
            case BinaryOp::Sub:
            case BinaryOp::Mul:
            case BinaryOp::Div:
                if (both(StreamType::Int)) return StreamType::Int;
                if (both(StreamType::Double)) return StreamType::Double;
                return mismatch("needs two ints or two doubles (no implicit coercion)");
            case BinaryOp::Pow:
                if (both(StreamType::Double)) return StreamType::Double;
                return mismatch("needs two doubles");
            case BinaryOp::Eq:
            case BinaryOp::Ne:
                if (lt == rt) return StreamType::Bool;
                return mismatch("compares values of different types");
            case BinaryOp::Lt:
            case BinaryOp::Le:
            case BinaryOp::Gt:
            case BinaryOp::Ge:
                if ((both(StreamType::Int)) || both(StreamType::Double) ||
                    both(StreamType::String))
                    return StreamType::Bool;
                return mismatch("needs two ints, two doubles, or two strings");
            case BinaryOp::And:
            case BinaryOp::Or:
                if (both(StreamType::Bool)) return StreamType::Bool;
                return mismatch("needs two bools");
        }
        return StreamType::Bool;
    }
};

void collect_edges(const Expr& e, int32_t from, std::vector<DepEdge>& edges) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, StreamAccess>) {
                edges.push_back(DepEdge{from, e.stream_id, n.offset, false, 0});
                if (n.fallback) collect_edges(*n.fallback, from, edges);
            } else if constexpr (std::is_same_v<T, AbsoluteAccess>) {
                edges.push_back(DepEdge{from, e.stream_id, 0, true, n.index});
                collect_edges(*n.fallback, from, edges);
            } else if constexpr (std::is_same_v<T, Call>) {
                for (const auto& a : n.args) collect_edges(*a, from, edges);
            } else if constexpr (std::is_same_v<T, Unary>) {
                collect_edges(*n.operand, from, edges);
            } else if constexpr (std::is_same_v<T, Binary>) {
                collect_edges(*n.lhs, from, edges);
                collect_edges(*n.rhs, from, edges);
            } else if constexpr (std::is_same_v<T, Conditional>) {
                for (const auto& b : n.branches) {
                    collect_edges(*b.condition, from, edges);
                    collect_edges(*b.value, from, edges);
                }
                collect_edges(*n.otherwise, from, edges);
            } else if constexpr (std::is_same_v<T, Switch>) {
                collect_edges(*n.scrutinee, from, edges);
                for (const auto& c : n.cases) collect_edges(*c.value, from, edges);
                collect_edges(*n.fallback, from, edges);
            }
            // Literal, KeywordAtom: nothing
        },
        e.node);
}

// ── strongly connected components (Tarjan) ──────────────────────────────

std::vector<int> tarjan_scc(int n, const std::vector<std::vector<int>>& adj) {
    std::vector<int> comp(n, -1), low(n), num(n, -1), stack;
    std::vector<bool> on_stack(n, false);
    int counter = 0, comp_count = 0;
    std::function<void(int)> dfs = [&](int v) {
        num[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack[v] = true;
        for (int w : adj[v]) {
            if (num[w] < 0) {
                dfs(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack[w]) {
                low[v] = std::min(low[v], num[w]);
            }
        }
        if (low[v] == num[v]) {
            for (;;) {
                int w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp[w] = comp_count;
                if (w == v) break;
            }
            comp_count++;
        }
    };
    for (int v = 0; v < n; ++v)
        if (num[v] < 0) dfs(v);
    return comp;
}

constexpr int64_t kUnreach = std::numeric_limits<int64_t>::max() / 4;

struct SccWeights {
    bool has_cycle = false;       // any closed walk at all
    bool positive = false;        // some closed walk of positive weight
    bool negative = false;        // some closed walk of negative weight
    bool zero = false;            // zero-weight cycle (or conservative mixed case)
    std::string zero_witness;
    std::string positive_witness;
};

/// Closed-walk weight analysis for the sub-graph induced by one component.
/// min-plus and max-plus Floyd-Warshall; diag < 0 detects negative cycles,
/// diag > 0 positive ones. When only one sign of cycle exists the other
/// closure is exact, so diag == 0 detects zero-weight cycles precisely. A
/// component with both positive and negative cycles is flagged zero as
/// well: their combination yields circular present-time dependence.
SccWeights analyze_component(const std::vector<int>& members,
                             const std::vector<DepEdge>& edges,
                             const std::vector<std::string>& names) {
    const int n = static_cast<int>(members.size());
    std::vector<int> local(names.size(), -1);
    for (int k = 0; k < n; ++k) local[members[k]] = k;

    std::vector<std::vector<int64_t>> lo(n, std::vector<int64_t>(n, kUnreach));
    std::vector<std::vector<int64_t>> hi(n, std::vector<int64_t>(n, -kUnreach));
    std::vector<std::vector<int>> via_lo(n, std::vector<int>(n, -1));
    std::vector<std::vector<int>> via_hi(n, std::vector<int>(n, -1));
    bool any_edge = false;
    for (const auto& e : edges) {
        if (e.absolute) continue;
        int u = local[e.from], v = local[e.to];
        if (u < 0 || v < 0) continue;
        any_edge = true;
        lo[u][v] = std::min(lo[u][v], e.weight);
        hi[u][v] = std::max(hi[u][v], e.weight);
    }

    SccWeights out;
    if (!any_edge) return out;

    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (lo[i][k] < kUnreach && lo[k][j] < kUnreach &&
                    lo[i][k] + lo[k][j] < lo[i][j]) {
                    lo[i][j] = lo[i][k] + lo[k][j];
                    via_lo[i][j] = k;
                }
                if (hi[i][k] > -kUnreach && hi[k][j] > -kUnreach &&
                    hi[i][k] + hi[k][j] > hi[i][j]) {
                    hi[i][j] = hi[i][k] + hi[k][j];
                    via_hi[i][j] = k;
                }
            }
        }
    }

    int zero_at = -1, pos_at = -1;
    for (int v = 0; v < n; ++v) {
        if (lo[v][v] < kUnreach) out.has_cycle = true;
        if (lo[v][v] < 0) out.negative = true;
        if (hi[v][v] > 0 && hi[v][v] < kUnreach) {
            out.positive = true;
            if (pos_at < 0) pos_at = v;
        }
    }
    if (out.positive && out.negative) {
        out.zero = true;
        std::string streams;
        for (int k = 0; k < n; ++k)
            streams += (k ? ", " : "") + names[members[k]];
        out.zero_witness = "cycles of opposite sign through {" + streams +
                           "} can combine into a zero-weight dependency";
    } else if (out.has_cycle) {
        for (int v = 0; v < n && zero_at < 0; ++v) {
            if ((!out.negative && lo[v][v] == 0) ||
                (!out.positive && hi[v][v] == 0 && hi[v][v] > -kUnreach))
                zero_at = v;
        }
        if (zero_at >= 0) {
            out.zero = true;
            // reconstruct one zero-weight closed path through zero_at
            const auto& via = !out.negative ? via_lo : via_hi;
            std::function<void(int, int, std::vector<int>&)> expand =
                [&](int i, int j, std::vector<int>& path) {
                    int k = via[i][j];
                    if (k < 0) {
                        path.push_back(j);
                        return;
                    }
                    expand(i, k, path);
                    expand(k, j, path);
                };
            std::vector<int> path{zero_at};
            expand(zero_at, zero_at, path);
            std::string w;
            for (size_t k = 0; k < path.size(); ++k)
                w += (k ? " -> " : "") + names[members[path[k]]];
            out.zero_witness = w + " (total weight 0)";
        }
    }
    if (pos_at >= 0) {
        std::vector<int> path{pos_at};
        std::function<void(int, int, std::vector<int>&)> expand =
            [&](int i, int j, std::vector<int>& p) {
                int k = via_hi[i][j];
                if (k < 0) {
                    p.push_back(j);
                    return;
                }
                expand(i, k, p);
                expand(k, j, p);
            };
        expand(pos_at, pos_at, path);
        std::string w;
        for (size_t k = 0; k < path.size(); ++k)
            w += (k ? " -> " : "") + names[members[path[k]]];
        out.positive_witness =
            w + " (total weight +" + std::to_string(hi[path.front()][path.front()]) + ")";
    }
    return out;
}

std::vector<SccWeights> component_analysis(const DependencyGraph& g) {
    const int n = static_cast<int>(g.vertices.size());
    std::vector<std::vector<int>> adj(n);
    for (const auto& e : g.edges)
        if (!e.absolute) adj[e.from].push_back(e.to);
    std::vector<int> comp = tarjan_scc(n, adj);
    int comp_count = n == 0 ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<std::vector<int>> members(comp_count);
    for (int v = 0; v < n; ++v) members[comp[v]].push_back(v);
    std::vector<SccWeights> out;
    out.reserve(comp_count);
    for (auto& m : members) out.push_back(analyze_component(m, g.edges, g.vertices));
    return out;
}

} // namespace

std::unordered_map<std::string, StreamType> type_check(const Specification& spec) {
    SymbolTable sym = build_symbols(spec);
    TypeChecker(spec, sym).run();
    std::unordered_map<std::string, StreamType> table;
    for (size_t k = 0; k < sym.names.size(); ++k) table.emplace(sym.names[k], sym.types[k]);
    return table;
}

DependencyGraph build_dependency_graph(const Specification& spec) {
    DependencyGraph g;
    for (const auto& d : spec.inputs) g.vertices.push_back(d.name);
    for (const auto& d : spec.outputs) g.vertices.push_back(d.name);
    int32_t id = static_cast<int32_t>(spec.inputs.size());
    for (const auto& d : spec.outputs) {
        collect_edges(*d.definition, id, g.edges);
        ++id;
    }
    return g;
}

CycleVerdict check_well_formed(const DependencyGraph& g) {
    for (const auto& scc : component_analysis(g)) {
        if (scc.zero) return CycleVerdict{false, scc.zero_witness};
    }
    return CycleVerdict{true, ""};
}

CycleVerdict classify_efficiently_monitorable(const DependencyGraph& g) {
    for (const auto& scc : component_analysis(g)) {
        if (scc.positive)
            return CycleVerdict{false, scc.positive_witness + " — unbounded lookahead"};
    }
    return CycleVerdict{true, ""};
}

std::map<std::string, BufferBounds> compute_memory_bounds(const DependencyGraph& g) {
    std::map<std::string, BufferBounds> out;
    for (const auto& name : g.vertices) out[name] = BufferBounds{};
    for (const auto& e : g.edges) {
        BufferBounds& b = out[g.vertices[e.to]];
        if (e.absolute) {
            if (std::find(b.pinned.begin(), b.pinned.end(), e.abs_index) ==
                b.pinned.end())
                b.pinned.push_back(e.abs_index);
        } else if (e.weight < 0) {
            b.past_depth = std::max(b.past_depth, -e.weight);
        } else if (e.weight > 0) {
            b.future_depth = std::max(b.future_depth, e.weight);
        }
    }
    for (auto& [name, b] : out) std::sort(b.pinned.begin(), b.pinned.end());
    return out;
}

namespace {

/// Kahn's algorithm over the zero-weight edges; among ready vertices the
/// smallest id (declaration order) goes first.
std::vector<int32_t> zero_weight_topo_order(int32_t first, int32_t last,
                                            const std::vector<DepEdge>& edges) {
    std::vector<int32_t> order;
    std::vector<int> indegree(last - first, 0);
    std::vector<std::vector<int32_t>> successors(last - first);
    for (const auto& e : edges) {
        if (e.absolute || e.weight != 0) continue;
        if (e.from < first || e.from >= last) continue;
        if (e.to < first || e.to >= last) continue;
        if (e.from == e.to) continue;
        successors[e.to - first].push_back(e.from); // to precedes from
        indegree[e.from - first]++;
    }
    std::vector<bool> done(last - first, false);
    for (int32_t emitted = 0; emitted < last - first; ++emitted) {
        int32_t pick = -1;
        for (int32_t v = 0; v < last - first; ++v) {
            if (!done[v] && indegree[v] == 0) {
                pick = v;
                break;
            }
        }
        if (pick < 0) {
            // zero-weight cycle (ill-formed spec): fall back to declaration order
            for (int32_t v = 0; v < last - first; ++v)
                if (!done[v]) {
                    pick = v;
                    break;
                }
        }
        done[pick] = true;
        order.push_back(first + pick);
        for (int32_t succ : successors[pick])
            if (!done[succ - first]) indegree[succ - first]--;
    }
    return order;
}

} // namespace

std::vector<std::string> compute_evaluation_order(const Specification& spec,
                                                  const DependencyGraph& g) {
    int32_t m = static_cast<int32_t>(spec.inputs.size());
    int32_t total = static_cast<int32_t>(g.vertices.size());
    std::vector<std::string> out;
    for (int32_t id : zero_weight_topo_order(m, total, g.edges))
        out.push_back(g.vertices[id]);
    return out;
}

AnalysisResult analyze(const Specification& spec) {
    AnalysisResult r;
    r.type_table = type_check(spec);
    r.graph = build_dependency_graph(spec);
    r.well_formed = check_well_formed(r.graph);
    if (r.well_formed.ok) {
        r.efficiently_monitorable = classify_efficiently_monitorable(r.graph);
    } else {
        r.efficiently_monitorable =
            CycleVerdict{false, "specification is not well-formed"};
    }
    r.buffer_bounds = compute_memory_bounds(r.graph);
    r.evaluation_order = compute_evaluation_order(spec, r.graph);

    // ── engine layout ────────────────────────────────────────────────────
    EngineLayout& lay = r.layout;
    lay.num_inputs = static_cast<int32_t>(spec.inputs.size());
    lay.num_streams = static_cast<int32_t>(spec.inputs.size() + spec.outputs.size());
    lay.num_vertices = lay.num_streams + static_cast<int32_t>(spec.feedback.size());
    for (int32_t k = 0; k < lay.num_streams; ++k)
        lay.id_of.emplace(r.graph.vertices[k], k);

    lay.edges = r.graph.edges;
    for (size_t k = 0; k < spec.feedback.size(); ++k)
        collect_edges(*spec.feedback[k].condition,
                      lay.num_streams + static_cast<int32_t>(k), lay.edges);

    const int32_t n = lay.num_vertices;
    lay.futureneed.assign(n, 0);
    lay.wait_bound.assign(n, 0);
    lay.ring_capacity.assign(n, 0);
    lay.pinned_slots.assign(n, {});
    for (const auto& e : lay.edges) {
        if (!e.absolute) continue;
        auto& pins = lay.pinned_slots[e.to];
        if (std::find(pins.begin(), pins.end(), e.abs_index) == pins.end())
            pins.push_back(e.abs_index);
    }
    for (auto& pins : lay.pinned_slots) std::sort(pins.begin(), pins.end());

    if (r.well_formed.ok && r.efficiently_monitorable.ok) {
        // futureneed: events past j an evaluation at j may have to wait for,
        // following relative accesses transitively. Converges because no
        // positive cycles exist.
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& e : lay.edges) {
                if (e.absolute) continue;
                int64_t need = e.weight + lay.futureneed[e.to];
                if (need > lay.futureneed[e.from]) {
                    lay.futureneed[e.from] = need;
                    changed = true;
                }
            }
        }
        // anchor: the largest absolute position an evaluation may wait for,
        // propagated through relative accesses
        std::vector<int64_t> anchor(n, 0);
        changed = true;
        while (changed) {
            changed = false;
            for (const auto& e : lay.edges) {
                int64_t need = e.absolute
                                   ? std::max(e.abs_index + lay.futureneed[e.to],
                                              anchor[e.to])
                                   : anchor[e.to];
                if (need > anchor[e.from]) {
                    anchor[e.from] = need;
                    changed = true;
                }
            }
        }
        int64_t max_delay = 0;
        for (int32_t v = 0; v < n; ++v) {
            lay.wait_bound[v] = std::max(lay.futureneed[v], anchor[v]);
            max_delay = std::max(max_delay, lay.wait_bound[v]);
        }
        lay.max_delay = max_delay;
        // ring capacity: the current value, everything a delayed reader can
        // still ask for, and the feedback frontier lag
        for (int32_t v = 0; v < n; ++v)
            lay.ring_capacity[v] = 1 + std::max(max_delay, lay.wait_bound[v]);
        for (const auto& e : lay.edges) {
            if (e.absolute) continue; // absolute reads go through pinned slots
            int64_t need = 1 + lay.wait_bound[e.from] - e.weight;
            lay.ring_capacity[e.to] = std::max(lay.ring_capacity[e.to], need);
        }
    }
    // !efficiently monitorable: capacities stay 0 (unbounded stores)

    lay.evaluation_order = zero_weight_topo_order(lay.num_inputs, n, lay.edges);

    auto time_it = lay.id_of.find("time");
    if (time_it != lay.id_of.end() &&
        r.type_table.at("time") == StreamType::Double)
        lay.time_stream = time_it->second;

    return r;
}

} // namespace lola
