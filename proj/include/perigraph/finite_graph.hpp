#pragma once

// Finite simple graphs with optional vertex/edge labels, plus the exact
// algorithms used throughout: properness checks, backtracking coloring,
// chromatic number, line graphs, and a series-parallel (treewidth <= 2) test.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace perigraph {

using VertexColoring = std::vector<int>;

struct FiniteGraph {
    int n = 0;                                      // vertices are 0..n-1
    std::vector<std::pair<int, int>> edges;         // canonical: u < v, sorted, unique
    std::map<int, std::string> vertex_labels;
    std::map<std::pair<int, int>, std::string> edge_labels;

    FiniteGraph() = default;
    explicit FiniteGraph(int vertices) : n(vertices) {
        if (vertices < 0) throw input_error("FiniteGraph: negative vertex count");
    }

    void check_vertex(int v) const {
        if (v < 0 || v >= n) throw input_error("FiniteGraph: vertex out of range");
    }

    static std::pair<int, int> canon(int u, int v) {
        return u < v ? std::make_pair(u, v) : std::make_pair(v, u);
    }

    void add_edge(int u, int v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw input_error("FiniteGraph: self-loop");
        auto e = canon(u, v);
        auto it = std::lower_bound(edges.begin(), edges.end(), e);
        if (it != edges.end() && *it == e) return;
        edges.insert(it, e);
    }

    bool has_edge(int u, int v) const {
        if (u == v) return false;
        auto e = canon(u, v);
        return std::binary_search(edges.begin(), edges.end(), e);
    }

    int edge_index(int u, int v) const {
        auto e = canon(u, v);
        auto it = std::lower_bound(edges.begin(), edges.end(), e);
        if (it == edges.end() || *it != e) throw input_error("FiniteGraph: no such edge");
        return static_cast<int>(it - edges.begin());
    }

    void set_vertex_label(int v, const std::string& tok) {
        check_vertex(v);
        vertex_labels[v] = tok;
    }

    void set_edge_label(int u, int v, const std::string& tok) {
        if (!has_edge(u, v)) throw input_error("FiniteGraph: label on missing edge");
        edge_labels[canon(u, v)] = tok;
    }

    std::string vertex_label(int v) const {
        auto it = vertex_labels.find(v);
        return it == vertex_labels.end() ? std::string() : it->second;
    }

    std::string edge_label(int u, int v) const {
        auto it = edge_labels.find(canon(u, v));
        return it == edge_labels.end() ? std::string() : it->second;
    }

    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(n);
        for (auto [u, v] : edges) {
            adj[u].push_back(v);
            adj[v].push_back(u);
        }
        return adj;
    }

    std::vector<int> degrees() const {
        std::vector<int> deg(n, 0);
        for (auto [u, v] : edges) {
            ++deg[u];
            ++deg[v];
        }
        return deg;
    }
};

inline FiniteGraph make_graph(int n, std::initializer_list<std::pair<int, int>> es) {
    FiniteGraph g(n);
    for (auto [u, v] : es) g.add_edge(u, v);
    return g;
}

inline int max_degree(const FiniteGraph& g) {
    int best = 0;
    for (int d : g.degrees()) best = std::max(best, d);
    return best;
}

// ----- components / connectivity -----

// component id per vertex, ids dense starting at 0 in order of first vertex.
inline std::vector<int> components(const FiniteGraph& g) {
    std::vector<int> comp(g.n, -1);
    auto adj = g.adjacency();
    int next = 0;
    std::vector<int> stack;
    for (int s = 0; s < g.n; ++s) {
        if (comp[s] != -1) continue;
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (comp[w] == -1) {
                    comp[w] = next;
                    stack.push_back(w);
                }
        }
        ++next;
    }
    return comp;
}

inline bool is_connected(const FiniteGraph& g) {
    if (g.n <= 1) return true;
    auto comp = components(g);
    return *std::max_element(comp.begin(), comp.end()) == 0;
}

// ----- coloring -----

inline bool is_proper(const FiniteGraph& g, const VertexColoring& c) {
    if (static_cast<int>(c.size()) != g.n)
        throw input_error("is_proper: coloring size mismatch");
    for (auto [u, v] : g.edges)
        if (c[u] == c[v]) return false;
    return true;
}

// Exact CSP backtracking. Variable order: descending degree, ties by index.
// Value order: ascending, capped at (max color used so far)+1 -- renaming
// color classes preserves feasibility, so the cap is sound. Deterministic.
inline std::optional<VertexColoring> find_coloring(const FiniteGraph& g, int k) {
    if (k < 1) throw input_error("find_coloring: k must be positive");
    auto deg = g.degrees();
    std::vector<int> order(g.n);
    for (int i = 0; i < g.n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return deg[a] != deg[b] ? deg[a] > deg[b] : a < b; });
    auto adj = g.adjacency();

    VertexColoring color(g.n, -1);
    // recursion over positions in 'order'
    std::vector<int> trail;                 // assigned vertices in order
    std::vector<int> max_used_at(g.n + 1, -1);
    std::vector<int> choice(g.n, -1);
    int pos = 0;
    while (true) {
        if (pos == g.n) return color;
        int v = order[pos];
        int cap = std::min(k - 1, max_used_at[pos] + 1);
        int start = choice[pos] + 1;
        int picked = -1;
        for (int c = start; c <= cap; ++c) {
            bool ok = true;
            for (int w : adj[v])
                if (color[w] == c) {
                    ok = false;
                    break;
                }
            if (ok) {
                picked = c;
                break;
            }
        }
        if (picked == -1) {
            // backtrack
            choice[pos] = -1;
            if (pos == 0) return std::nullopt;
            --pos;
            color[order[pos]] = -1;
        } else {
            choice[pos] = picked;
            color[v] = picked;
            max_used_at[pos + 1] = std::max(max_used_at[pos], picked);
            ++pos;
        }
    }
}

// Greedy clique from each start vertex; any clique size is a sound chromatic
// lower bound, so this only lets chromatic_number_finite skip dead k values.
inline int clique_lower_bound(const FiniteGraph& g) {
    if (g.n == 0) return 0;
    auto adj = g.adjacency();
    auto deg = g.degrees();
    std::vector<char> inq(g.n, 0);
    int best = 1;
    for (int s = 0; s < g.n; ++s) {
        std::vector<int> clique{s};
        std::fill(inq.begin(), inq.end(), 0);
        inq[s] = 1;
        // candidates: neighbors of s, highest degree first
        std::vector<int> cand = adj[s];
        std::stable_sort(cand.begin(), cand.end(),
                         [&](int a, int b) { return deg[a] != deg[b] ? deg[a] > deg[b] : a < b; });
        for (int v : cand) {
            bool ok = true;
            for (int u : clique)
                if (!g.has_edge(u, v)) {
                    ok = false;
                    break;
                }
            if (ok) clique.push_back(v);
        }
        best = std::max(best, static_cast<int>(clique.size()));
    }
    return best;
}

inline int chromatic_number_finite(const FiniteGraph& g) {
    if (g.n == 0) return 0;
    if (g.edges.empty()) return 1;
    for (int k = clique_lower_bound(g);; ++k)
        if (find_coloring(g, k)) return k;        // terminates: k = maxdeg+1 always works
}

// ----- line graph -----

// Vertex i of the result is g.edges[i]; adjacency iff the edges share an endpoint.
inline FiniteGraph line_graph_finite(const FiniteGraph& g) {
    int m = static_cast<int>(g.edges.size());
    FiniteGraph lg(m);
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            auto [a, b] = g.edges[i];
            auto [c, d] = g.edges[j];
            if (a == c || a == d || b == c || b == d) lg.add_edge(i, j);
        }
    return lg;
}

// ----- treewidth <= 2 (series-parallel reduction) -----

// Repeatedly delete degree-<=1 vertices and suppress degree-2 vertices,
// collapsing parallel edges and dropping self-loops. Empties iff the graph
// has no K4 minor, i.e. treewidth <= 2.
inline bool is_treewidth_at_most_2(const FiniteGraph& g) {
    // Parallel edges created by suppression collapse on insertion (set), and a
    // suppression whose endpoints coincide would be a loop, which we drop, so
    // a simple adjacency structure suffices throughout.
    std::vector<std::set<int>> adj(g.n);
    for (auto [u, v] : g.edges) {
        adj[u].insert(v);
        adj[v].insert(u);
    }
    std::vector<char> alive(g.n, 1);
    int remaining = g.n;
    bool progress = true;
    while (remaining > 0 && progress) {
        progress = false;
        for (int v = 0; v < g.n; ++v) {
            if (!alive[v] || adj[v].size() > 2) continue;
            if (adj[v].size() == 2) {
                int a = *adj[v].begin();
                int b = *std::next(adj[v].begin());
                adj[a].erase(v);
                adj[b].erase(v);
                adj[a].insert(b);
                adj[b].insert(a);
            } else {
                for (int w : adj[v]) adj[w].erase(v);
            }
            adj[v].clear();
            alive[v] = 0;
            --remaining;
            progress = true;
        }
    }
    return remaining == 0;
}

// ----- blowup (finite overload) -----

// Each vertex becomes a k-clique; each edge becomes complete bipartite K_{k,k}.
// Vertex (v, c) of the result has id v*k + c.
inline FiniteGraph blowup(const FiniteGraph& g, int k) {
    if (k < 1) throw input_error("blowup: k must be positive");
    FiniteGraph out(g.n * k);
    for (int v = 0; v < g.n; ++v)
        for (int c1 = 0; c1 < k; ++c1)
            for (int c2 = c1 + 1; c2 < k; ++c2) out.add_edge(v * k + c1, v * k + c2);
    for (auto [u, v] : g.edges)
        for (int c1 = 0; c1 < k; ++c1)
            for (int c2 = 0; c2 < k; ++c2) out.add_edge(u * k + c1, v * k + c2);
    return out;
}

} // namespace perigraph
