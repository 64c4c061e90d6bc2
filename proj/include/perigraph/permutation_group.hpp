#pragma once

// Permutation groups on graph vertices: automorphism group via backtracking
// with iterated color refinement (1-WL) and orbit-stabilizer order counting,
// graph isomorphism search, orbit partitions, and bounded closure enumeration.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "finite_graph.hpp"

namespace perigraph {

using Permutation = std::vector<int>;

struct GroupGenerators {
    int degree = 0;
    std::vector<Permutation> generators;
};

struct AutomorphismGroup {
    GroupGenerators group;
    unsigned long long order = 1;
};

inline Permutation identity_permutation(int n) {
    Permutation p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    return p;
}

// (p * q)(i) = p(q(i))
inline Permutation compose(const Permutation& p, const Permutation& q) {
    Permutation r(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
    return r;
}

inline Permutation inverse(const Permutation& p) {
    Permutation r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
    return r;
}

inline void check_permutation(const Permutation& p, int n) {
    if (static_cast<int>(p.size()) != n)
        throw input_error("permutation degree mismatch");
    std::vector<char> seen(n, 0);
    for (int v : p) {
        if (v < 0 || v >= n || seen[v]) throw input_error("not a permutation");
        seen[v] = 1;
    }
}

inline bool is_automorphism(const FiniteGraph& g, const Permutation& p,
                            bool respect_vertex_labels = false,
                            bool respect_edge_labels = false) {
    check_permutation(p, g.n);
    for (auto [u, v] : g.edges) {
        if (!g.has_edge(p[u], p[v])) return false;
        if (respect_edge_labels && g.edge_label(u, v) != g.edge_label(p[u], p[v])) return false;
    }
    if (respect_vertex_labels)
        for (int v = 0; v < g.n; ++v)
            if (g.vertex_label(v) != g.vertex_label(p[v])) return false;
    return true;
}

namespace detail {

// Adjacency with edge-label ids baked in; label ids come from a shared token
// table so that two graphs compared in lockstep agree on ids.
struct GraphView {
    int n = 0;
    std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbor, edge label id)
    const FiniteGraph* g = nullptr;
    bool respect_edge_labels = false;
};

inline GraphView make_view(const FiniteGraph& g, bool respect_edge_labels,
                           const std::map<std::string, int>& elabel_ids) {
    GraphView view;
    view.n = g.n;
    view.g = &g;
    view.respect_edge_labels = respect_edge_labels;
    view.adj.assign(g.n, {});
    for (auto [u, v] : g.edges) {
        int lab = 0;
        if (respect_edge_labels) lab = elabel_ids.at(g.edge_label(u, v));
        view.adj[u].push_back({v, lab});
        view.adj[v].push_back({u, lab});
    }
    return view;
}

using Signature = std::pair<int, std::vector<std::pair<int, int>>>;

inline Signature signature_of(const GraphView& view, const std::vector<int>& cols, int v) {
    Signature s;
    s.first = cols[v];
    s.second.reserve(view.adj[v].size());
    for (auto [w, lab] : view.adj[v]) s.second.push_back({cols[w], lab});
    std::sort(s.second.begin(), s.second.end());
    return s;
}

inline int color_count(const std::vector<int>& cols) {
    int c = 0;
    for (int x : cols) c = std::max(c, x + 1);
    return c;
}

// Refine one coloring to equitability. New color ids are signature ranks, and
// a signature starts with the old color, so cells only ever split.
inline void refine_single(const GraphView& view, std::vector<int>& cols) {
    int ncolors = color_count(cols);
    for (;;) {
        std::vector<Signature> sigs(view.n);
        for (int v = 0; v < view.n; ++v) sigs[v] = signature_of(view, cols, v);
        std::vector<Signature> distinct = sigs;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        if (static_cast<int>(distinct.size()) == ncolors) return;
        for (int v = 0; v < view.n; ++v)
            cols[v] = static_cast<int>(
                std::lower_bound(distinct.begin(), distinct.end(), sigs[v]) - distinct.begin());
        ncolors = static_cast<int>(distinct.size());
    }
}

// Refine two colorings in lockstep against a shared signature table. Returns
// false when the signature multisets diverge (no color-preserving bijection).
inline bool refine_lockstep(const GraphView& va, std::vector<int>& ca,
                            const GraphView& vb, std::vector<int>& cb) {
    int ncolors = std::max(color_count(ca), color_count(cb));
    for (;;) {
        std::vector<Signature> sa(va.n), sb(vb.n);
        for (int v = 0; v < va.n; ++v) sa[v] = signature_of(va, ca, v);
        for (int v = 0; v < vb.n; ++v) sb[v] = signature_of(vb, cb, v);
        std::vector<Signature> distinct = sa;
        distinct.insert(distinct.end(), sb.begin(), sb.end());
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        auto rank = [&](const Signature& s) {
            return static_cast<int>(
                std::lower_bound(distinct.begin(), distinct.end(), s) - distinct.begin());
        };
        std::vector<int> hist_a(distinct.size(), 0), hist_b(distinct.size(), 0);
        for (int v = 0; v < va.n; ++v) ++hist_a[rank(sa[v])];
        for (int v = 0; v < vb.n; ++v) ++hist_b[rank(sb[v])];
        if (hist_a != hist_b) return false;
        for (int v = 0; v < va.n; ++v) ca[v] = rank(sa[v]);
        for (int v = 0; v < vb.n; ++v) cb[v] = rank(sb[v]);
        int now = static_cast<int>(distinct.size());
        if (now == ncolors) return true;
        ncolors = now;
    }
}

inline bool leaf_matches(const GraphView& va, const GraphView& vb, const Permutation& p) {
    const FiniteGraph& a = *va.g;
    const FiniteGraph& b = *vb.g;
    if (a.edges.size() != b.edges.size()) return false;
    for (auto [u, v] : a.edges) {
        if (!b.has_edge(p[u], p[v])) return false;
        if (va.respect_edge_labels && a.edge_label(u, v) != b.edge_label(p[u], p[v]))
            return false;
    }
    return true;
}

// Search for a color-preserving bijection A -> B extending the given colorings.
// Complete: explores all individualization choices; leaves verified exactly.
inline std::optional<Permutation> match_colored(const GraphView& va, std::vector<int> ca,
                                                const GraphView& vb, std::vector<int> cb) {
    if (va.n != vb.n) return std::nullopt;
    if (!refine_lockstep(va, ca, vb, cb)) return std::nullopt;
    int ncolors = color_count(ca);
    std::vector<int> count(ncolors, 0);
    for (int v = 0; v < va.n; ++v) ++count[ca[v]];
    int branch_color = -1;
    for (int c = 0; c < ncolors; ++c)
        if (count[c] > 1) {
            branch_color = c;
            break;
        }
    if (branch_color == -1) {
        Permutation p(va.n, -1);
        std::vector<int> where(ncolors, -1);
        for (int v = 0; v < vb.n; ++v) where[cb[v]] = v;
        for (int v = 0; v < va.n; ++v) p[v] = where[ca[v]];
        if (leaf_matches(va, vb, p)) return p;
        return std::nullopt;
    }
    int x = -1;
    for (int v = 0; v < va.n; ++v)
        if (ca[v] == branch_color) {
            x = v;
            break;
        }
    for (int y = 0; y < vb.n; ++y) {
        if (cb[y] != branch_color) continue;
        std::vector<int> ca2 = ca, cb2 = cb;
        ca2[x] = ncolors;
        cb2[y] = ncolors;
        if (auto r = match_colored(va, std::move(ca2), vb, std::move(cb2))) return r;
    }
    return std::nullopt;
}

inline std::map<std::string, int> shared_edge_label_ids(const FiniteGraph& a,
                                                        const FiniteGraph& b) {
    std::set<std::string> toks;
    toks.insert("");
    for (auto& [e, t] : a.edge_labels) {
        (void)e;
        toks.insert(t);
    }
    for (auto& [e, t] : b.edge_labels) {
        (void)e;
        toks.insert(t);
    }
    std::map<std::string, int> ids;
    int next = 0;
    for (auto& t : toks) ids[t] = next++;
    return ids;
}

inline std::vector<int> initial_colors(const FiniteGraph& g, bool respect_vertex_labels,
                                       const std::map<std::string, int>& vlabel_ids) {
    std::vector<int> cols(g.n, 0);
    if (respect_vertex_labels)
        for (int v = 0; v < g.n; ++v) cols[v] = vlabel_ids.at(g.vertex_label(v));
    return cols;
}

inline std::map<std::string, int> shared_vertex_label_ids(const FiniteGraph& a,
                                                          const FiniteGraph& b) {
    std::set<std::string> toks;
    toks.insert("");
    for (int v = 0; v < a.n; ++v) toks.insert(a.vertex_label(v));
    for (int v = 0; v < b.n; ++v) toks.insert(b.vertex_label(v));
    std::map<std::string, int> ids;
    int next = 0;
    for (auto& t : toks) ids[t] = next++;
    return ids;
}

} // namespace detail

// Generators plus exact order of Aut(g). Backtracking over a stabilizer
// chain: at each level the orbit of the base point is found by one matcher
// call per unreached cell member, and |G| = |orbit| * |stabilizer|.
inline AutomorphismGroup automorphism_group(const FiniteGraph& g,
                                            bool respect_vertex_labels = false,
                                            bool respect_edge_labels = false) {
    auto elabels = detail::shared_edge_label_ids(g, g);
    auto vlabels = detail::shared_vertex_label_ids(g, g);
    auto view = detail::make_view(g, respect_edge_labels, elabels);
    std::vector<int> cols = detail::initial_colors(g, respect_vertex_labels, vlabels);
    detail::refine_single(view, cols);

    std::vector<Permutation> gens;

    std::function<unsigned long long(std::vector<int>)> stab =
        [&](std::vector<int> base_cols) -> unsigned long long {
        int ncolors = detail::color_count(base_cols);
        std::vector<int> count(ncolors, 0);
        for (int v = 0; v < view.n; ++v) ++count[base_cols[v]];
        int cell_color = -1;
        for (int c = 0; c < ncolors; ++c)
            if (count[c] > 1) {
                cell_color = c;
                break;
            }
        if (cell_color == -1) return 1;
        std::vector<int> cell;
        for (int v = 0; v < view.n; ++v)
            if (base_cols[v] == cell_color) cell.push_back(v);
        int b = cell[0];

        std::vector<int> cols_b = base_cols;
        cols_b[b] = ncolors;
        detail::refine_single(view, cols_b);
        unsigned long long suborder = stab(std::move(cols_b));

        std::set<int> orbit{b};
        auto grow = [&]() {
            // closure of the orbit under all generators found so far
            std::vector<int> queue(orbit.begin(), orbit.end());
            while (!queue.empty()) {
                int v = queue.back();
                queue.pop_back();
                for (auto& p : gens) {
                    if (orbit.insert(p[v]).second) queue.push_back(p[v]);
                    int pre = static_cast<int>(
                        std::find(p.begin(), p.end(), v) - p.begin());
                    if (orbit.insert(pre).second) queue.push_back(pre);
                }
            }
        };
        grow();
        for (int y : cell) {
            if (orbit.count(y)) continue;
            std::vector<int> ca = base_cols, cb = base_cols;
            ca[b] = ncolors;
            cb[y] = ncolors;
            auto m = detail::match_colored(view, std::move(ca), view, std::move(cb));
            if (m) {
                gens.push_back(*m);
                grow();
            }
        }
        return static_cast<unsigned long long>(orbit.size()) * suborder;
    };

    AutomorphismGroup out;
    out.order = stab(cols);
    out.group.degree = g.n;
    out.group.generators = std::move(gens);
    if (out.group.generators.empty() && g.n > 0)
        out.group.generators.push_back(identity_permutation(g.n));
    return out;
}

inline std::optional<Permutation> find_isomorphism(const FiniteGraph& a, const FiniteGraph& b,
                                                   bool respect_vertex_labels = false,
                                                   bool respect_edge_labels = false) {
    if (a.n != b.n || a.edges.size() != b.edges.size()) return std::nullopt;
    auto elabels = detail::shared_edge_label_ids(a, b);
    auto vlabels = detail::shared_vertex_label_ids(a, b);
    auto va = detail::make_view(a, respect_edge_labels, elabels);
    auto vb = detail::make_view(b, respect_edge_labels, elabels);
    auto ca = detail::initial_colors(a, respect_vertex_labels, vlabels);
    auto cb = detail::initial_colors(b, respect_vertex_labels, vlabels);
    return detail::match_colored(va, std::move(ca), vb, std::move(cb));
}

enum class Domain { vertices, edges };

// Orbit partition of vertices or edge indices, each orbit sorted, orbits
// ordered by smallest element. Generators must be automorphisms of g.
inline std::vector<std::vector<int>> orbits(const GroupGenerators& group, Domain domain,
                                            const FiniteGraph& g) {
    if (group.degree != g.n) throw input_error("orbits: group degree mismatch");
    for (auto& p : group.generators)
        if (!is_automorphism(g, p)) throw input_error("orbits: generator is not an automorphism");

    int m = domain == Domain::vertices ? g.n : static_cast<int>(g.edges.size());
    auto image = [&](int x, const Permutation& p) {
        if (domain == Domain::vertices) return p[x];
        auto [u, v] = g.edges[x];
        return g.edge_index(p[u], p[v]);
    };
    std::vector<char> seen(m, 0);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < m; ++s) {
        if (seen[s]) continue;
        std::set<int> orbit{s};
        std::vector<int> queue{s};
        while (!queue.empty()) {
            int x = queue.back();
            queue.pop_back();
            for (auto& p : group.generators) {
                int y = image(x, p);
                if (orbit.insert(y).second) queue.push_back(y);
            }
        }
        for (int x : orbit) seen[x] = 1;
        out.push_back(std::vector<int>(orbit.begin(), orbit.end()));
    }
    return out;
}

// All elements of the generated subgroup, breadth-first from the identity
// (in a finite group, positive words reach inverses). Deterministic order.
inline std::vector<Permutation> group_closure(const GroupGenerators& group, std::size_t cap) {
    std::set<Permutation> seen;
    std::vector<Permutation> order_found;
    Permutation id = identity_permutation(group.degree);
    seen.insert(id);
    order_found.push_back(id);
    std::size_t head = 0;
    while (head < order_found.size()) {
        Permutation cur = order_found[head++];
        for (auto& gen : group.generators) {
            Permutation nxt = compose(gen, cur);
            if (seen.insert(nxt).second) {
                if (order_found.size() + 1 > cap)
                    throw resource_limit_error("group closure exceeds cap");
                order_found.push_back(std::move(nxt));
            }
        }
    }
    return order_found;
}

} // namespace perigraph
