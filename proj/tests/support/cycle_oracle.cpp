#include "cycle_oracle.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace lola::testing {

namespace {

struct EdgeRef {
    int to;
    int64_t weight;
};

// Kosaraju strongly connected components.
std::vector<int> kosaraju(int n, const std::vector<std::vector<int>>& adj) {
    std::vector<std::vector<int>> radj(n);
    for (int v = 0; v < n; ++v)
        for (int w : adj[v]) radj[w].push_back(v);

    std::vector<bool> seen(n, false);
    std::vector<int> order;
    std::function<void(int)> dfs1 = [&](int v) {
        seen[v] = true;
        for (int w : adj[v])
            if (!seen[w]) dfs1(w);
        order.push_back(v);
    };
    for (int v = 0; v < n; ++v)
        if (!seen[v]) dfs1(v);

    std::vector<int> comp(n, -1);
    int c = 0;
    std::function<void(int)> dfs2 = [&](int v) {
        comp[v] = c;
        for (int w : radj[v])
            if (comp[w] < 0) dfs2(w);
    };
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (comp[*it] < 0) {
            dfs2(*it);
            ++c;
        }
    }
    return comp;
}

} // namespace

CycleOracleVerdict enumerate_cycles(const DependencyGraph& g) {
    const int n = static_cast<int>(g.vertices.size());
    std::vector<std::vector<EdgeRef>> adj(n);
    std::vector<std::vector<int>> plain(n);
    for (const auto& e : g.edges) {
        if (e.absolute) continue;
        adj[e.from].push_back(EdgeRef{e.to, e.weight});
        plain[e.from].push_back(e.to);
    }
    std::vector<int> comp = kosaraju(n, plain);

    CycleOracleVerdict verdict;
    std::vector<bool> comp_has_pos(static_cast<size_t>(n), false);
    std::vector<bool> comp_has_neg(static_cast<size_t>(n), false);

    // every simple cycle exactly once: rooted at its minimal vertex, only
    // vertices >= root may participate
    std::vector<bool> on_path(n, false);
    std::function<void(int, int, int64_t)> walk = [&](int root, int v, int64_t weight) {
        for (const EdgeRef& e : adj[v]) {
            if (e.to == root) {
                int64_t total = weight + e.weight;
                ++verdict.cycles_enumerated;
                if (total == 0) verdict.well_formed = false;
                if (total > 0) {
                    verdict.efficiently_monitorable = false;
                    comp_has_pos[comp[root]] = true;
                }
                if (total < 0) comp_has_neg[comp[root]] = true;
            } else if (e.to > root && !on_path[e.to]) {
                on_path[e.to] = true;
                walk(root, e.to, weight + e.weight);
                on_path[e.to] = false;
            }
        }
    };
    for (int root = 0; root < n; ++root) {
        on_path[root] = true;
        walk(root, root, 0);
        on_path[root] = false;
    }

    for (int c = 0; c < n; ++c)
        if (comp_has_pos[c] && comp_has_neg[c]) verdict.well_formed = false;
    return verdict;
}

} // namespace lola::testing
