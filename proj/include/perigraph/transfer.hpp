#pragma once

// Transfer systems: the finite digraph whose nodes are admissible per-cell
// assignments and whose arcs are compatible consecutive cells. Cycles are
// exactly the periodic global solutions.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "periodic_graph.hpp"

namespace perigraph {

inline constexpr std::size_t default_state_cap = 1000000;

struct TransferSystem {
    int k = 0;
    int cell_size = 0;
    std::vector<std::vector<int>> states;  // proper cell colorings, lex order
    std::vector<std::vector<int>> succ;    // compatibility arcs, ascending
};

namespace detail {

// All proper k-colorings of the cell graph (d = 0 specs), generated in lex
// order by backtracking. Throws when the count would exceed the cap.
inline std::vector<std::vector<int>> admissible_cell_colorings(const PeriodicGraph& pg, int k,
                                                               std::size_t cap) {
    int n = pg.cell_size;
    std::vector<std::vector<int>> earlier(n);  // d=0 neighbors with smaller index
    for (const auto& s : pg.specs)
        if (s.d == 0) earlier[s.v].push_back(s.u);  // canonical u < v
    std::vector<std::vector<int>> out;
    std::vector<int> cur(n, -1);
    int pos = 0;
    while (pos >= 0) {
        if (pos == n) {
            if (out.size() + 1 > cap)
                throw resource_limit_error("transfer state count exceeds cap");
            out.push_back(cur);
            --pos;
            continue;
        }
        int start = cur[pos] + 1;
        int picked = -1;
        for (int c = start; c < k; ++c) {
            bool ok = true;
            for (int w : earlier[pos])
                if (cur[w] == c) {
                    ok = false;
                    break;
                }
            if (ok) {
                picked = c;
                break;
            }
        }
        if (picked == -1) {
            cur[pos] = -1;
            --pos;
        } else {
            cur[pos] = picked;
            ++pos;
        }
    }
    return out;
}

} // namespace detail

// States: proper k-colorings of one cell (w.r.t. d = 0 specs). Arc s -> t iff
// s(u) != t(v) for every spec (u, v, 1). Requires nearest-neighbor form.
inline TransferSystem build_transfer_coloring(const PeriodicGraph& pg, int k,
                                              std::size_t cap = default_state_cap) {
    if (k < 1) throw input_error("build_transfer_coloring: k must be positive");
    if (!is_nearest_neighbor(pg))
        throw input_error("build_transfer_coloring: offsets must be in {0,1}; normalize first");
    TransferSystem ts;
    ts.k = k;
    ts.cell_size = pg.cell_size;
    ts.states = detail::admissible_cell_colorings(pg, k, cap);

    int n = pg.cell_size;
    std::vector<std::vector<int>> cross_from(n);  // for target position v: sources u of (u,v,1)
    for (const auto& s : pg.specs)
        if (s.d == 1) cross_from[s.v].push_back(s.u);
    std::vector<std::vector<int>> earlier(n);
    for (const auto& s : pg.specs)
        if (s.d == 0) earlier[s.v].push_back(s.u);

    auto state_index = [&](const std::vector<int>& st) {
        auto it = std::lower_bound(ts.states.begin(), ts.states.end(), st);
        return static_cast<int>(it - ts.states.begin());
    };

    ts.succ.assign(ts.states.size(), {});
    std::vector<int> cur(n, -1);
    for (std::size_t si = 0; si < ts.states.size(); ++si) {
        const auto& s = ts.states[si];
        // enumerate compatible successor colorings in lex order
        std::fill(cur.begin(), cur.end(), -1);
        int pos = 0;
        while (pos >= 0) {
            if (pos == n) {
                ts.succ[si].push_back(state_index(cur));
                --pos;
                continue;
            }
            int start = cur[pos] + 1;
            int picked = -1;
            for (int c = start; c < k; ++c) {
                bool ok = true;
                for (int w : earlier[pos])
                    if (cur[w] == c) {
                        ok = false;
                        break;
                    }
                if (ok)
                    for (int u : cross_from[pos])
                        if (s[u] == c) {
                            ok = false;
                            break;
                        }
                if (ok) {
                    picked = c;
                    break;
                }
            }
            if (picked == -1) {
                cur[pos] = -1;
                --pos;
            } else {
                cur[pos] = picked;
                ++pos;
            }
        }
    }
    return ts;
}

// Shortest cycle in a digraph given by successor lists: trim nodes that cannot
// lie on a cycle, then BFS from each surviving node in canonical order.
// Returns the node sequence c_0..c_{p-1} with arcs c_r -> c_{r+1 mod p}.
inline std::optional<std::vector<int>> shortest_cycle(const std::vector<std::vector<int>>& succ) {
    int n = static_cast<int>(succ.size());
    std::vector<int> outdeg(n, 0), indeg(n, 0);
    for (int v = 0; v < n; ++v) {
        outdeg[v] = static_cast<int>(succ[v].size());
        for (int w : succ[v]) ++indeg[w];
    }
    std::vector<std::vector<int>> pred(n);
    for (int v = 0; v < n; ++v)
        for (int w : succ[v]) pred[w].push_back(v);
    std::vector<char> dead(n, 0);
    std::vector<int> queue;
    for (int v = 0; v < n; ++v)
        if (outdeg[v] == 0 || indeg[v] == 0) {
            dead[v] = 1;
            queue.push_back(v);
        }
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        for (int w : succ[v])
            if (!dead[w] && --indeg[w] == 0) {
                dead[w] = 1;
                queue.push_back(w);
            }
        for (int w : pred[v])
            if (!dead[w] && --outdeg[w] == 0) {
                dead[w] = 1;
                queue.push_back(w);
            }
    }

    int best_len = -1;
    std::vector<int> best_cycle;
    std::vector<int> dist(n), parent(n);
    for (int s = 0; s < n; ++s) {
        if (dead[s]) continue;
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        parent[s] = -1;
        std::vector<int> bfs{s};
        std::size_t head = 0;
        int found = -1;
        while (head < bfs.size() && found == -1) {
            int v = bfs[head++];
            if (best_len != -1 && dist[v] + 1 >= best_len) break;
            for (int w : succ[v]) {
                if (dead[w]) continue;
                if (w == s) {
                    found = v;
                    break;
                }
                if (dist[w] == -1) {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    bfs.push_back(w);
                }
            }
        }
        if (found != -1) {
            int len = dist[found] + 1;
            if (best_len == -1 || len < best_len) {
                best_len = len;
                best_cycle.clear();
                for (int x = found; x != -1; x = parent[x]) best_cycle.push_back(x);
                std::reverse(best_cycle.begin(), best_cycle.end());
                if (best_len == 1) break;
            }
        }
    }
    if (best_len == -1) return std::nullopt;
    return best_cycle;
}

inline std::optional<std::vector<int>> find_cycle(const TransferSystem& ts) {
    return shortest_cycle(ts.succ);
}

} // namespace perigraph
