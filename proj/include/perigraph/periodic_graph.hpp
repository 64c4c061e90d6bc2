#pragma once

// Z-periodic graphs presented by a finite cell: cell vertices 0..n-1 and edge
// specs (u, v, d) standing for the lift edges {(u,i),(v,i+d)} for all i in Z.
// Canonical storage: d >= 0, d == 0 specs have u < v, list sorted and unique.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "finite_graph.hpp"

namespace perigraph {

struct EdgeSpec {
    int u = 0;
    int v = 0;
    int d = 0;

    friend bool operator==(const EdgeSpec& a, const EdgeSpec& b) {
        return a.u == b.u && a.v == b.v && a.d == b.d;
    }
    friend bool operator<(const EdgeSpec& a, const EdgeSpec& b) {
        if (a.u != b.u) return a.u < b.u;
        if (a.v != b.v) return a.v < b.v;
        return a.d < b.d;
    }
};

struct PeriodicGraph {
    int cell_size = 0;
    std::vector<EdgeSpec> specs;
};

// Canonicalize raw triples: flip negative offsets, order d == 0 endpoints,
// sort, dedupe. Loops (u, u, 0) are rejected.
inline PeriodicGraph make_periodic(int cell_size, std::vector<EdgeSpec> raw) {
    if (cell_size < 1) throw input_error("make_periodic: cell_size must be positive");
    for (auto& s : raw) {
        if (s.u < 0 || s.u >= cell_size || s.v < 0 || s.v >= cell_size)
            throw input_error("make_periodic: vertex out of range");
        if (s.d < 0) {
            std::swap(s.u, s.v);
            s.d = -s.d;
        }
        if (s.d == 0) {
            if (s.u == s.v) throw input_error("make_periodic: loop spec (u,u,0)");
            if (s.u > s.v) std::swap(s.u, s.v);
        }
    }
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    return PeriodicGraph{cell_size, std::move(raw)};
}

// Diagnostics: empty iff pg is canonical. One message per violation.
inline std::vector<std::string> validate(const PeriodicGraph& pg) {
    std::vector<std::string> out;
    if (pg.cell_size < 1) out.push_back("cell_size must be positive");
    for (std::size_t i = 0; i < pg.specs.size(); ++i) {
        const auto& s = pg.specs[i];
        std::string at = "spec " + std::to_string(i) + ": ";
        if (s.u < 0 || s.u >= pg.cell_size || s.v < 0 || s.v >= pg.cell_size)
            out.push_back(at + "vertex out of range");
        if (s.d < 0) out.push_back(at + "negative offset");
        if (s.d == 0 && s.u == s.v) out.push_back(at + "loop (u,u,0)");
        else if (s.d == 0 && s.u > s.v) out.push_back(at + "d=0 spec not ordered u<v");
        if (i > 0 && pg.specs[i - 1] == s) out.push_back(at + "duplicate spec");
        if (i > 0 && s < pg.specs[i - 1]) out.push_back(at + "specs not sorted");
    }
    return out;
}

inline int lift_max_degree(const PeriodicGraph& pg) {
    std::vector<int> deg(pg.cell_size, 0);
    for (const auto& s : pg.specs) {
        ++deg[s.u];
        ++deg[s.v];
    }
    int best = 0;
    for (int d : deg) best = std::max(best, d);
    return best;
}

// ----- quotient structure -----

// Cell vertices with all specs as (multi-)edges, plus BFS potentials: traversing
// (u, v, d) from u to v adds d. Per component, the gcd of cycle offsets |pot(u)
// + d - pot(v)| tells how the lift splits (gcd 1: one lift component; gcd g >= 2:
// g isomorphic components; gcd 0: a bi-infinite stack of finite components).
struct QuotientInfo {
    std::vector<int> comp;
    int ncomp = 0;
    std::vector<long long> pot;
    std::vector<long long> gcds;   // per component
};

inline QuotientInfo quotient_info(const PeriodicGraph& pg) {
    int n = pg.cell_size;
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, signed offset)
    for (const auto& s : pg.specs) {
        adj[s.u].push_back({s.v, s.d});
        adj[s.v].push_back({s.u, -s.d});
    }
    QuotientInfo q;
    q.comp.assign(n, -1);
    q.pot.assign(n, 0);
    for (int s = 0; s < n; ++s) {
        if (q.comp[s] != -1) continue;
        int id = q.ncomp++;
        q.comp[s] = id;
        q.pot[s] = 0;
        long long g = 0;
        std::vector<int> queue{s};
        std::size_t head = 0;
        while (head < queue.size()) {
            int v = queue[head++];
            for (auto [w, d] : adj[v]) {
                if (q.comp[w] == -1) {
                    q.comp[w] = id;
                    q.pot[w] = q.pot[v] + d;
                    queue.push_back(w);
                } else {
                    long long cyc = q.pot[v] + d - q.pot[w];
                    g = std::gcd(g, cyc < 0 ? -cyc : cyc);
                }
            }
        }
        q.gcds.push_back(g);
    }
    return q;
}

inline bool lift_connected(const PeriodicGraph& pg) {
    auto q = quotient_info(pg);
    return q.ncomp == 1 && q.gcds[0] == 1;
}

// ----- normalization to nearest-neighbor form -----

// Groups m = max(1, max offset) consecutive cells into one. New cell vertex
// (v, r) has id r*n + v and stands for old lift vertex (v, i*m + r); every new
// offset lands in {0, 1}. spec_map[s][r] gives the new spec index carrying the
// instances of old spec s at cells congruent to r mod m.
struct NormalizedPeriodic {
    PeriodicGraph graph;
    int m = 1;
    std::vector<std::vector<int>> spec_map;
};

inline NormalizedPeriodic normalize_nearest_neighbor(const PeriodicGraph& pg) {
    int n = pg.cell_size;
    int m = 1;
    for (const auto& s : pg.specs) m = std::max(m, s.d);
    NormalizedPeriodic out;
    out.m = m;
    std::vector<std::pair<EdgeSpec, std::pair<int, int>>> tagged;  // new spec, (old index, r)
    for (std::size_t si = 0; si < pg.specs.size(); ++si) {
        const auto& s = pg.specs[si];
        for (int r = 0; r < m; ++r) {
            int rp = (r + s.d) % m;
            int delta = (r + s.d) / m;
            EdgeSpec ns{r * n + s.u, rp * n + s.v, delta};
            if (ns.d == 0 && ns.u > ns.v) std::swap(ns.u, ns.v);
            tagged.push_back({ns, {static_cast<int>(si), r}});
        }
    }
    std::sort(tagged.begin(), tagged.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out.graph.cell_size = n * m;
    out.spec_map.assign(pg.specs.size(), std::vector<int>(m, -1));
    for (std::size_t i = 0; i < tagged.size(); ++i) {
        out.graph.specs.push_back(tagged[i].first);
        out.spec_map[tagged[i].second.first][tagged[i].second.second] = static_cast<int>(i);
    }
    return out;
}

inline bool is_nearest_neighbor(const PeriodicGraph& pg) {
    for (const auto& s : pg.specs)
        if (s.d > 1) return false;
    return true;
}

// ----- windows -----

// Induced subgraph of the lift on cells a..a+span-1; (v, i) has id (i-a)*n + v.
struct Window {
    FiniteGraph graph;
    int cell_size = 0;
    int a = 0;
    int span = 0;

    int vertex(int v, int i) const { return (i - a) * cell_size + v; }
};

inline Window window(const PeriodicGraph& pg, int a, int span) {
    if (span < 1) throw input_error("window: span must be positive");
    Window w;
    w.cell_size = pg.cell_size;
    w.a = a;
    w.span = span;
    w.graph = FiniteGraph(pg.cell_size * span);
    for (int i = a; i < a + span; ++i)
        for (int v = 0; v < pg.cell_size; ++v)
            w.graph.set_vertex_label(w.vertex(v, i), "v" + std::to_string(v) + "@" + std::to_string(i));
    for (const auto& s : pg.specs)
        for (int i = a; i + s.d < a + span; ++i)
            w.graph.add_edge(w.vertex(s.u, i), w.vertex(s.v, i + s.d));
    return w;
}

// ----- line graph -----

// Requires nearest-neighbor form. Cell vertex j of the result is spec j of pg;
// lift edge (spec j, i) lives in cell i, and two lift edges are adjacent iff
// they share an endpoint, which confines offsets to {0, 1}.
inline PeriodicGraph line_graph_periodic(const PeriodicGraph& pg) {
    if (!is_nearest_neighbor(pg))
        throw input_error("line_graph_periodic: offsets must be in {0,1}; normalize first");
    int S = static_cast<int>(pg.specs.size());
    auto endpoints = [&](int j, int t) {
        const auto& s = pg.specs[j];
        return std::pair<std::pair<int, int>, std::pair<int, int>>{
            {s.u, t}, {s.v, t + s.d}};
    };
    auto share = [&](int i, int j, int delta) {
        auto [a1, a2] = endpoints(i, 0);
        auto [b1, b2] = endpoints(j, delta);
        return a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2;
    };
    std::vector<EdgeSpec> specs;
    for (int i = 0; i < S; ++i)
        for (int j = i + 1; j < S; ++j)
            if (share(i, j, 0)) specs.push_back({i, j, 0});
    for (int i = 0; i < S; ++i)
        for (int j = 0; j < S; ++j)
            if (share(i, j, 1)) specs.push_back({i, j, 1});
    return make_periodic(S, std::move(specs));
}

// ----- blowup -----

// Vertex (v, c) of the result has id v*k + c; cell vertices become k-cliques
// and each spec becomes k^2 parallel-class specs.
inline PeriodicGraph blowup(const PeriodicGraph& pg, int k) {
    if (k < 1) throw input_error("blowup: k must be positive");
    std::vector<EdgeSpec> specs;
    for (int v = 0; v < pg.cell_size; ++v)
        for (int c1 = 0; c1 < k; ++c1)
            for (int c2 = c1 + 1; c2 < k; ++c2) specs.push_back({v * k + c1, v * k + c2, 0});
    for (const auto& s : pg.specs)
        for (int c1 = 0; c1 < k; ++c1)
            for (int c2 = 0; c2 < k; ++c2) specs.push_back({s.u * k + c1, s.v * k + c2, s.d});
    return make_periodic(pg.cell_size * k, std::move(specs));
}

// ----- periodic assignments -----

// A shift-invariant decoration of the lift with period p: a table indexed by
// (item, residue mod p). Items are cell vertices (vertex_coloring) or spec
// indices (orientation: 1 = as stored u->v; edge_subset: membership;
// edge_coloring: color). Entry for residue r applies to the instance at cell i
// for every i congruent to r (for specs: the instance whose u-endpoint is in
// cell i).
struct PeriodicAssignment {
    enum class Kind { vertex_coloring, orientation, edge_subset, edge_coloring };

    Kind kind = Kind::vertex_coloring;
    int period = 1;
    int stride = 0;            // items per residue
    std::vector<int> values;   // values[r*stride + item]

    int residue(int r) const { return ((r % period) + period) % period; }
    int value(int item, int r) const { return values[residue(r) * stride + item]; }
    int& value(int item, int r) { return values[residue(r) * stride + item]; }
};

inline PeriodicAssignment make_assignment(PeriodicAssignment::Kind kind, int period, int stride) {
    if (period < 1) throw input_error("assignment period must be positive");
    PeriodicAssignment a;
    a.kind = kind;
    a.period = period;
    a.stride = stride;
    a.values.assign(static_cast<std::size_t>(period) * stride, 0);
    return a;
}

inline int count_colors(const PeriodicAssignment& a) {
    std::vector<int> vals = a.values;
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return static_cast<int>(vals.size());
}

// Properness of a periodic vertex coloring, checked exactly: every lift edge
// class (spec, residue) once.
inline bool valid_vertex_coloring(const PeriodicGraph& pg, const PeriodicAssignment& a) {
    if (a.kind != PeriodicAssignment::Kind::vertex_coloring) return false;
    if (a.stride != pg.cell_size ||
        a.values.size() != static_cast<std::size_t>(a.period) * a.stride)
        return false;
    for (int x : a.values)
        if (x < 0) return false;
    for (const auto& s : pg.specs)
        for (int r = 0; r < a.period; ++r)
            if (a.value(s.u, r) == a.value(s.v, r + s.d)) return false;
    return true;
}

// Degree of every lift vertex class in the selected sub-multiset of edges;
// exact check that each equals k.
inline bool valid_uniform_degree_selection(const PeriodicGraph& pg, const PeriodicAssignment& a,
                                           int k) {
    if (a.kind != PeriodicAssignment::Kind::edge_subset) return false;
    if (a.stride != static_cast<int>(pg.specs.size()) ||
        a.values.size() != static_cast<std::size_t>(a.period) * a.stride)
        return false;
    int p = a.period;
    for (int v = 0; v < pg.cell_size; ++v)
        for (int r = 0; r < p; ++r) {
            int deg = 0;
            for (std::size_t j = 0; j < pg.specs.size(); ++j) {
                const auto& s = pg.specs[j];
                if (s.u == v) deg += a.value(static_cast<int>(j), r);
                if (s.v == v) deg += a.value(static_cast<int>(j), ((r - s.d) % p + p) % p);
            }
            if (deg != k) return false;
        }
    return true;
}

// Proper edge coloring: adjacent lift edges get distinct colors. Adjacency of
// spec instances (i at cell 0) and (j at cell delta) is endpoint sharing; with
// general offsets, delta ranges over [-max_d, max_d], folded to >= 0 by symmetry.
inline bool valid_edge_coloring(const PeriodicGraph& pg, const PeriodicAssignment& a) {
    if (a.kind != PeriodicAssignment::Kind::edge_coloring) return false;
    if (a.stride != static_cast<int>(pg.specs.size()) ||
        a.values.size() != static_cast<std::size_t>(a.period) * a.stride)
        return false;
    int S = static_cast<int>(pg.specs.size());
    int maxd = 0;
    for (const auto& s : pg.specs) maxd = std::max(maxd, s.d);
    auto share = [&](int i, int j, int delta) {
        const auto& s = pg.specs[i];
        const auto& t = pg.specs[j];
        std::pair<int, int> se[2] = {{s.u, 0}, {s.v, s.d}};
        std::pair<int, int> te[2] = {{t.u, delta}, {t.v, delta + t.d}};
        for (auto& x : se)
            for (auto& y : te)
                if (x == y) return true;
        return false;
    };
    for (int delta = 0; delta <= maxd; ++delta)
        for (int i = 0; i < S; ++i)
            for (int j = 0; j < S; ++j) {
                if (delta == 0 && i == j) continue;
                if (!share(i, j, delta)) continue;
                for (int r = 0; r < a.period; ++r)
                    if (a.value(i, r) == a.value(j, r + delta)) return false;
            }
    return true;
}

// Smallest divisor period the table folds to.
inline PeriodicAssignment minimize_period(const PeriodicAssignment& a) {
    for (int q = 1; q < a.period; ++q) {
        if (a.period % q != 0) continue;
        bool folds = true;
        for (int r = q; r < a.period && folds; ++r)
            for (int i = 0; i < a.stride; ++i)
                if (a.values[r * a.stride + i] != a.values[(r % q) * a.stride + i]) {
                    folds = false;
                    break;
                }
        if (folds) {
            PeriodicAssignment out = a;
            out.period = q;
            out.values.assign(a.values.begin(), a.values.begin() + static_cast<long>(q) * a.stride);
            return out;
        }
    }
    return a;
}

// ----- bipartite 2-coloring -----

// GF(2) potentials: color(v, i) = phi(v) + alpha_C * i with one shift parity
// alpha_C per quotient component. Every spec (u, v, d) demands
// phi(u) + phi(v) + alpha*d = 1 (mod 2). Infeasible -> no proper 2-coloring of
// the shift form phi + alpha*i exists (for a connected lift: not bipartite).
inline std::optional<PeriodicAssignment> bipartite_2coloring(const PeriodicGraph& pg) {
    int n = pg.cell_size;
    std::vector<std::vector<std::pair<int, int>>> adj(n);  // (neighbor, offset parity)
    for (const auto& s : pg.specs) {
        adj[s.u].push_back({s.v, s.d & 1});
        adj[s.v].push_back({s.u, s.d & 1});
    }
    std::vector<int> av(n, -1), bv(n, 0), comp(n, -1);
    std::vector<int> alpha;  // per component: -1 free, else forced bit
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        int id = static_cast<int>(alpha.size());
        alpha.push_back(-1);
        comp[s] = id;
        av[s] = 0;
        bv[s] = 0;
        std::vector<int> queue{s};
        std::size_t head = 0;
        while (head < queue.size()) {
            int v = queue[head++];
            for (auto [w, par] : adj[v]) {
                if (comp[w] == -1) {
                    comp[w] = id;
                    av[w] = av[v] ^ 1;
                    bv[w] = bv[v] ^ par;
                    queue.push_back(w);
                }
            }
        }
    }
    for (const auto& s : pg.specs) {
        int c0 = av[s.u] ^ av[s.v] ^ 1;
        int beta = bv[s.u] ^ bv[s.v] ^ (s.d & 1);
        int id = comp[s.u];
        if (beta == 0) {
            if (c0 == 1) return std::nullopt;
        } else {
            if (alpha[id] == -1)
                alpha[id] = c0;
            else if (alpha[id] != c0)
                return std::nullopt;
        }
    }
    bool any_alt = false;
    for (int& x : alpha) {
        if (x == -1) x = 0;
        if (x == 1) any_alt = true;
    }
    int p = any_alt ? 2 : 1;
    auto out = make_assignment(PeriodicAssignment::Kind::vertex_coloring, p, n);
    for (int r = 0; r < p; ++r)
        for (int v = 0; v < n; ++v) out.value(v, r) = av[v] ^ (alpha[comp[v]] & r);
    return out;
}

} // namespace perigraph
