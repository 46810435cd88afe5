#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace topocode {

using VertexId = int;
using Color = long long;
using Edge = std::pair<VertexId, VertexId>;  // stored with first < second

inline Edge make_edge(VertexId a, VertexId b) {
    if (a == b) throw std::invalid_argument("self-loop edge " + std::to_string(a));
    return a < b ? Edge{a, b} : Edge{b, a};
}

/// Simple undirected graph over opaque non-negative integer vertex ids.
class Graph {
public:
    Graph() = default;

    void add_vertex(VertexId v) { vertices_.insert(v); }

    void add_edge(VertexId u, VertexId v) {
        Edge e = make_edge(u, v);
        if (edges_.count(e)) throw std::invalid_argument("duplicate edge");
        vertices_.insert(e.first);
        vertices_.insert(e.second);
        edges_.insert(e);
    }

    bool has_vertex(VertexId v) const { return vertices_.count(v) != 0; }
    bool has_edge(VertexId u, VertexId v) const {
        if (u == v) return false;
        return edges_.count(u < v ? Edge{u, v} : Edge{v, u}) != 0;
    }

    const std::set<VertexId>& vertices() const { return vertices_; }
    const std::set<Edge>& edges() const { return edges_; }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    int degree(VertexId v) const {
        int d = 0;
        for (const Edge& e : edges_)
            if (e.first == v || e.second == v) ++d;
        return d;
    }

    std::vector<VertexId> neighbors(VertexId v) const {
        std::vector<VertexId> out;
        for (const Edge& e : edges_) {
            if (e.first == v) out.push_back(e.second);
            else if (e.second == v) out.push_back(e.first);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::map<VertexId, std::vector<VertexId>> adjacency() const {
        std::map<VertexId, std::vector<VertexId>> adj;
        for (VertexId v : vertices_) adj[v];
        for (const Edge& e : edges_) {
            adj[e.first].push_back(e.second);
            adj[e.second].push_back(e.first);
        }
        for (auto& [v, nb] : adj) std::sort(nb.begin(), nb.end());
        return adj;
    }

    bool connected() const {
        if (vertices_.empty()) return true;
        auto adj = adjacency();
        std::set<VertexId> seen;
        std::queue<VertexId> frontier;
        frontier.push(*vertices_.begin());
        seen.insert(*vertices_.begin());
        while (!frontier.empty()) {
            VertexId u = frontier.front();
            frontier.pop();
            for (VertexId w : adj[u])
                if (seen.insert(w).second) frontier.push(w);
        }
        return seen.size() == vertices_.size();
    }

    bool is_tree() const {
        return connected() && edge_count() + 1 == vertex_count();
    }

    /// Two-coloring of a connected bipartite graph; nullopt when an odd cycle exists.
    /// The side containing the smallest vertex id comes first.
    std::optional<std::pair<std::set<VertexId>, std::set<VertexId>>> two_coloring() const {
        if (vertices_.empty()) return std::make_pair(std::set<VertexId>{}, std::set<VertexId>{});
        auto adj = adjacency();
        std::map<VertexId, int> side;
        for (VertexId root : vertices_) {
            if (side.count(root)) continue;
            side[root] = 0;
            std::queue<VertexId> frontier;
            frontier.push(root);
            while (!frontier.empty()) {
                VertexId u = frontier.front();
                frontier.pop();
                for (VertexId w : adj[u]) {
                    auto it = side.find(w);
                    if (it == side.end()) {
                        side[w] = 1 - side[u];
                        frontier.push(w);
                    } else if (it->second == side[u]) {
                        return std::nullopt;
                    }
                }
            }
        }
        std::set<VertexId> a, b;
        for (const auto& [v, s] : side) (s == 0 ? a : b).insert(v);
        return std::make_pair(a, b);
    }

    bool operator==(const Graph& other) const {
        return vertices_ == other.vertices_ && edges_ == other.edges_;
    }

private:
    std::set<VertexId> vertices_;
    std::set<Edge> edges_;
};

/// Ordered bipartition with max color on x_side below min color on y_side.
struct BipartitionView {
    std::vector<VertexId> x_side;
    std::vector<VertexId> y_side;
};

/// Per-vertex counts of leaves to attach.
struct LeafPlan {
    std::map<VertexId, int> counts;

    long long total() const {
        long long m = 0;
        for (const auto& [v, c] : counts) {
            if (c < 0) throw std::invalid_argument("negative leaf count");
            m += c;
        }
        return m;
    }
};

/// Signed per-spine leaf counts; a negative entry records a leaf-image-degree.
struct LeafDegreeSequence {
    std::vector<long long> values;

    bool operator==(const LeafDegreeSequence& o) const { return values == o.values; }
};

struct AddLeavesResult {
    Graph graph;
    std::vector<Edge> leaf_edges;  // (anchor, new leaf), anchors ascending, leaf index ascending
};

/// Attaches plan.counts[v] fresh degree-1 vertices to each keyed vertex.
inline AddLeavesResult add_leaves(const Graph& g, const LeafPlan& plan) {
    for (const auto& [v, c] : plan.counts)
        if (!g.has_vertex(v))
            throw std::invalid_argument("leaf plan names unknown vertex " + std::to_string(v));
    AddLeavesResult out;
    out.graph = g;
    VertexId next = g.vertices().empty() ? 0 : *g.vertices().rbegin() + 1;
    for (const auto& [v, c] : plan.counts) {
        for (int k = 0; k < c; ++k) {
            out.graph.add_edge(v, next);
            out.leaf_edges.emplace_back(v, next);
            ++next;
        }
    }
    return out;
}

struct StripResult {
    Graph graph;
    std::map<VertexId, VertexId> removed;  // leaf -> vertex it hung on
};

/// Removes every degree-1 vertex, recording where each one was attached.
/// K_2 strips to the empty graph (both endpoints are leaves).
inline StripResult strip_leaves(const Graph& g) {
    StripResult out;
    std::set<VertexId> leaves;
    for (VertexId v : g.vertices())
        if (g.degree(v) == 1) leaves.insert(v);
    for (VertexId v : g.vertices())
        if (!leaves.count(v)) out.graph.add_vertex(v);
    for (const Edge& e : g.edges()) {
        bool lu = leaves.count(e.first) != 0, lv = leaves.count(e.second) != 0;
        if (lu) out.removed[e.first] = e.second;
        if (lv) out.removed[e.second] = e.first;
        if (!lu && !lv) out.graph.add_edge(e.first, e.second);
    }
    return out;
}

/// Merges v1 of g1 with v2 of g2 into one vertex (kept under id v1).
/// The inputs must be vertex-disjoint, so the result is always simple.
inline Graph vertex_coincide(const Graph& g1, VertexId v1, const Graph& g2, VertexId v2) {
    if (!g1.has_vertex(v1) || !g2.has_vertex(v2))
        throw std::invalid_argument("vertex_coincide: vertex not present");
    for (VertexId v : g2.vertices())
        if (g1.has_vertex(v)) throw std::invalid_argument("vertex_coincide: graphs share vertex ids");
    Graph out = g1;
    auto remap = [&](VertexId v) { return v == v2 ? v1 : v; };
    for (VertexId v : g2.vertices())
        if (v != v2) out.add_vertex(v);
    for (const Edge& e : g2.edges()) out.add_edge(remap(e.first), remap(e.second));
    return out;
}

/// Within-graph collapse of a and b into a. Throws when a multi-edge (or loop)
/// would result.
inline Graph vertex_coincide(const Graph& g, VertexId a, VertexId b) {
    if (!g.has_vertex(a) || !g.has_vertex(b))
        throw std::invalid_argument("vertex_coincide: vertex not present");
    if (a == b) return g;
    if (g.has_edge(a, b)) throw std::invalid_argument("vertex_coincide: vertices are adjacent");
    Graph out;
    for (VertexId v : g.vertices())
        if (v != b) out.add_vertex(v);
    for (const Edge& e : g.edges()) {
        VertexId u = e.first == b ? a : e.first;
        VertexId v = e.second == b ? a : e.second;
        if (out.has_edge(u, v)) throw std::invalid_argument("vertex_coincide: multi-edge would result");
        out.add_edge(u, v);
    }
    return out;
}

namespace detail {

inline bool is_path_graph(const Graph& g) {
    if (!g.connected()) return false;
    if (g.vertex_count() <= 2) return g.edge_count() + 1 == g.vertex_count();
    if (g.edge_count() + 1 != g.vertex_count()) return false;
    int deg1 = 0;
    for (VertexId v : g.vertices()) {
        int d = g.degree(v);
        if (d > 2) return false;
        if (d == 1) ++deg1;
    }
    return deg1 == 2;
}

/// Endpoint-to-endpoint traversal of a path graph, lexicographically smaller
/// endpoint first.
inline std::vector<VertexId> path_order(const Graph& g) {
    if (g.vertex_count() == 0) return {};
    if (g.vertex_count() == 1) return {*g.vertices().begin()};
    std::vector<VertexId> ends;
    for (VertexId v : g.vertices())
        if (g.degree(v) == 1) ends.push_back(v);
    auto adj = g.adjacency();
    std::vector<VertexId> order{*std::min_element(ends.begin(), ends.end())};
    std::set<VertexId> seen{order[0]};
    while (order.size() < g.vertex_count()) {
        bool advanced = false;
        for (VertexId w : adj[order.back()]) {
            if (!seen.count(w)) {
                order.push_back(w);
                seen.insert(w);
                advanced = true;
                break;
            }
        }
        if (!advanced) throw std::logic_error("path_order: not a path");
    }
    return order;
}

}  // namespace detail

inline bool is_caterpillar(const Graph& g) {
    if (g.vertex_count() == 0) return false;
    if (!g.is_tree()) return false;
    if (g.vertex_count() <= 2) return true;
    Graph core = strip_leaves(g).graph;
    if (core.vertex_count() == 0) return true;  // K_2 only
    return detail::is_path_graph(core);
}

inline bool is_lobster(const Graph& g) {
    if (g.vertex_count() == 0) return false;
    if (!g.is_tree()) return false;
    if (g.vertex_count() <= 2) return true;
    Graph once = strip_leaves(g).graph;
    return once.vertex_count() == 0 || is_caterpillar(once);
}

/// Spine of a caterpillar, oriented from the lexicographically smaller endpoint.
/// A bare path is its own spine; otherwise the spine is the leaf-stripped core.
inline std::vector<VertexId> spine(const Graph& g) {
    if (!is_caterpillar(g)) throw std::invalid_argument("spine: not a caterpillar");
    bool bare = true;
    for (VertexId v : g.vertices())
        if (g.degree(v) > 2) { bare = false; break; }
    if (bare) return detail::path_order(g);
    Graph core = strip_leaves(g).graph;
    return detail::path_order(core);
}

/// Per-spine-vertex leaf counts in spine order. A sign overlay, when given,
/// marks entries as leaf-image-degrees; it must match the counts in magnitude.
inline LeafDegreeSequence leaf_degree_sequence(const Graph& g,
                                               const std::vector<int>* signs = nullptr) {
    std::vector<VertexId> sp = spine(g);
    std::set<VertexId> on_spine(sp.begin(), sp.end());
    LeafDegreeSequence seq;
    for (VertexId u : sp) {
        long long c = 0;
        for (VertexId w : g.neighbors(u))
            if (!on_spine.count(w)) ++c;
        seq.values.push_back(c);
    }
    if (signs) {
        if (signs->size() != seq.values.size())
            throw std::invalid_argument("sign overlay length mismatch");
        for (std::size_t i = 0; i < seq.values.size(); ++i)
            if ((*signs)[i] < 0) seq.values[i] = -seq.values[i];
    }
    return seq;
}

/// Positional complement check: |a_i| + |b_i| = M at every spine position.
inline bool uniform_leaf_complement(const LeafDegreeSequence& a, const LeafDegreeSequence& b,
                                    long long M) {
    if (a.values.size() != b.values.size())
        throw std::invalid_argument("spine length mismatch");
    for (std::size_t i = 0; i < a.values.size(); ++i)
        if (std::abs(a.values[i]) + std::abs(b.values[i]) != M) return false;
    return true;
}

/// Searches for a spine permutation sigma with |a_i| + |b_sigma(i)| = M.
/// Reduces to multiset matching: position i of `a` pairs with the smallest
/// unused position of `b` carrying M - |a_i|.
inline std::optional<std::vector<int>> permuted_leaf_complement(const LeafDegreeSequence& a,
                                                                const LeafDegreeSequence& b,
                                                                long long M) {
    if (a.values.size() != b.values.size())
        throw std::invalid_argument("spine length mismatch");
    std::size_t n = a.values.size();
    std::vector<bool> used(n, false);
    std::vector<int> witness(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        long long want = M - std::abs(a.values[i]);
        bool found = false;
        for (std::size_t j = 0; j < n; ++j) {
            if (!used[j] && std::abs(b.values[j]) == want) {
                used[j] = true;
                witness[i] = static_cast<int>(j);
                found = true;
                break;
            }
        }
        if (!found) return std::nullopt;
    }
    return witness;
}

inline bool uniform_leaf_complement(const Graph& t1, const Graph& t2, long long M) {
    return uniform_leaf_complement(leaf_degree_sequence(t1), leaf_degree_sequence(t2), M);
}

inline std::optional<std::vector<int>> permuted_leaf_complement(const Graph& t1, const Graph& t2,
                                                                long long M) {
    return permuted_leaf_complement(leaf_degree_sequence(t1), leaf_degree_sequence(t2), M);
}

/// Positional sum of two leaf-count sequences (spine paths coincided).
inline LeafDegreeSequence universal_sequence(const LeafDegreeSequence& h,
                                             const LeafDegreeSequence& t) {
    if (h.values.size() != t.values.size())
        throw std::invalid_argument("spine length mismatch");
    LeafDegreeSequence s;
    for (std::size_t i = 0; i < h.values.size(); ++i)
        s.values.push_back(std::abs(h.values[i]) + std::abs(t.values[i]));
    return s;
}

// ---------------------------------------------------------------------------
// Canonical form: brute-force canonical labeling for small graphs, with
// degree/color partition pruning. Two graphs are isomorphic iff their
// encodings compare equal. Optional vertex/edge colors refine the match.
// ---------------------------------------------------------------------------

namespace detail {

struct CanonInput {
    int n = 0;
    std::vector<Color> vcolor;                  // per local index; 0 when uncolored
    std::vector<std::vector<Color>> cell;       // adjacency cells, 0 = non-edge
    std::vector<std::pair<long long, long long>> key;  // (degree, color) block key
};

inline std::string canon_search(const CanonInput& in) {
    int n = in.n;
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return in.key[a] < in.key[b]; });

    // Flattened word per placed vertex: its color followed by its adjacency
    // cells toward earlier positions. Lexicographic minimum over placements.
    // `tied` tracks whether the current prefix equals the best's prefix; a
    // replacement of best always runs through the current prefix, so ancestors
    // re-tie when the generation counter moves.
    std::vector<std::vector<Color>> best(n), cur(n);
    bool have_best = false;
    long generation = 0;
    std::vector<int> perm;
    std::vector<bool> taken(n, false);

    std::function<void(int, bool)> place = [&](int pos, bool tied) {
        if (pos == n) {
            if (!have_best || !tied) {
                best = cur;
                have_best = true;
                ++generation;
            }
            return;
        }
        for (int idx = 0; idx < n; ++idx) {
            int v = order[idx];
            if (taken[v]) continue;
            if (in.key[v] != in.key[order[pos]]) continue;  // stay inside the block
            std::vector<Color> word;
            word.reserve(pos + 1);
            word.push_back(in.vcolor[v]);
            for (int j = 0; j < pos; ++j) word.push_back(in.cell[v][perm[j]]);
            bool child_tied = false;
            if (have_best && tied) {
                if (word > best[pos]) continue;
                child_tied = (word == best[pos]);
            }
            taken[v] = true;
            perm.push_back(v);
            cur[pos] = std::move(word);
            long gen0 = generation;
            place(pos + 1, child_tied);
            if (generation != gen0) tied = true;
            perm.pop_back();
            taken[v] = false;
        }
    };
    place(0, true);

    std::ostringstream os;
    os << n << '|';
    for (int i = 0; i < n; ++i) {
        for (Color c : best[i]) os << c << ',';
        os << ';';
    }
    return os.str();
}

}  // namespace detail

/// Canonical encoding of g; equal encodings iff isomorphic. Brute force with
/// degree-partition pruning, capped at `limit` vertices.
inline std::string canonical_form(const Graph& g, int limit = 12) {
    int n = static_cast<int>(g.vertex_count());
    if (n > limit)
        throw std::invalid_argument("canonical_form: vertex cap exceeded (" + std::to_string(n) +
                                    " > " + std::to_string(limit) + ")");
    std::vector<VertexId> ids(g.vertices().begin(), g.vertices().end());
    std::map<VertexId, int> local;
    for (int i = 0; i < n; ++i) local[ids[i]] = i;
    detail::CanonInput in;
    in.n = n;
    in.vcolor.assign(n, 0);
    in.cell.assign(n, std::vector<Color>(n, 0));
    for (const Edge& e : g.edges()) {
        in.cell[local[e.first]][local[e.second]] = 1;
        in.cell[local[e.second]][local[e.first]] = 1;
    }
    in.key.resize(n);
    for (int i = 0; i < n; ++i) in.key[i] = {-g.degree(ids[i]), 0};
    return detail::canon_search(in);
}

/// Colored canonical encoding: vertex colors and edge colors participate, so
/// equal encodings mean color-preserving isomorphism.
inline std::string canonical_form_colored(const Graph& g, const std::map<VertexId, Color>& vcol,
                                          const std::map<Edge, Color>& ecol, int limit = 12) {
    int n = static_cast<int>(g.vertex_count());
    if (n > limit) throw std::invalid_argument("canonical_form: vertex cap exceeded");
    std::vector<VertexId> ids(g.vertices().begin(), g.vertices().end());
    std::map<VertexId, int> local;
    for (int i = 0; i < n; ++i) local[ids[i]] = i;
    detail::CanonInput in;
    in.n = n;
    in.vcolor.assign(n, 0);
    for (int i = 0; i < n; ++i) {
        auto it = vcol.find(ids[i]);
        in.vcolor[i] = it == vcol.end() ? -1 : it->second;
    }
    in.cell.assign(n, std::vector<Color>(n, 0));
    for (const Edge& e : g.edges()) {
        auto it = ecol.find(e);
        Color c = it == ecol.end() ? 1 : it->second + 2;  // keep clear of the non-edge cell
        in.cell[local[e.first]][local[e.second]] = c;
        in.cell[local[e.second]][local[e.first]] = c;
    }
    in.key.resize(n);
    for (int i = 0; i < n; ++i) in.key[i] = {-g.degree(ids[i]), in.vcolor[i]};
    return detail::canon_search(in);
}

}  // namespace topocode
