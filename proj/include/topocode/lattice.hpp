#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "topocode/coloring.hpp"
#include "topocode/graph.hpp"
#include "topocode/rla.hpp"
#include "topocode/transform.hpp"
#include "topocode/validate.hpp"

namespace topocode {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Partition counting
// ---------------------------------------------------------------------------

/// Number of partitions of m into parts of size at most k, via
/// A(m,k) = A(m,k-1) + A(m-k,k). k above m clamps to A(m,m).
inline long long partition_A(long long m, long long k) {
    if (m < 0 || k < 0) throw std::invalid_argument("partition_A: negative argument");
    if (k > m) k = m;
    if (m == 0) return 1;
    if (k == 0) return 0;
    std::vector<std::vector<long long>> table(m + 1, std::vector<long long>(k + 1, 0));
    for (long long kk = 0; kk <= k; ++kk) table[0][kk] = 1;
    for (long long mm = 1; mm <= m; ++mm) {
        for (long long kk = 1; kk <= k; ++kk) {
            table[mm][kk] = table[mm][kk - 1];
            if (mm - kk >= 0) table[mm][kk] += table[mm - kk][std::min(kk, mm - kk)];
        }
    }
    return table[m][k];
}

namespace detail {

/// Partitions of m into exactly k nonzero parts; zero outside the domain,
/// with n(0,0) = 1.
inline long long partition_exact(long long m, long long k) {
    if (m < 0 || k < 0) return 0;
    if (m == 0) return k == 0 ? 1 : 0;
    if (k == 0 || k > m) return 0;
    std::vector<std::vector<long long>> table(m + 1, std::vector<long long>(k + 1, 0));
    table[0][0] = 1;
    for (long long mm = 1; mm <= m; ++mm)
        for (long long kk = 1; kk <= std::min(k, mm); ++kk)
            table[mm][kk] = table[mm - 1][kk - 1] + table[mm - kk][kk];
    return table[m][k];
}

}  // namespace detail

/// Partitions of m into exactly k nonzero parts.
inline long long partition_n(long long m, long long k) {
    if (k < 1) throw std::invalid_argument("partition_n: k must be at least 1");
    if (k > m) throw std::invalid_argument("partition_n: k exceeds m");
    return detail::partition_exact(m, k);
}

inline BigInt big_factorial(long long n) {
    if (n < 0) throw std::invalid_argument("factorial of negative");
    BigInt f = 1;
    for (long long i = 2; i <= n; ++i) f *= i;
    return f;
}

inline BigInt falling_factorial(long long p, long long k) {
    if (k > p) return 0;
    BigInt f = 1;
    for (long long i = 0; i < k; ++i) f *= (p - i);
    return f;
}

struct ALeafResult {
    BigInt exact_form;      // sum over k of (p falling k) * n(m,k) * (p-k)!; zero terms dropped
    BigInt factorial_form;  // sum over k of n(m,k) * p!
    bool diverged = false;  // forms disagree (some k exceeds p)
};

/// Leaf-placement count over k = 1..m. The factorial form collapses each term
/// to n(m,k) * p!, which silently assumes k <= p; the exact form keeps the
/// falling factorial, so terms with k > p vanish and the divergence is
/// flagged.
inline ALeafResult a_leaf_count(long long p, long long m) {
    if (p < 1 || m < 1) throw std::invalid_argument("a_leaf_count: p and m must be positive");
    ALeafResult r;
    BigInt pf = big_factorial(p);
    for (long long k = 1; k <= m; ++k) {
        long long nmk = detail::partition_exact(m, k);
        if (nmk == 0) continue;
        r.factorial_form += BigInt(nmk) * pf;
        if (k <= p) r.exact_form += falling_factorial(p, k) * BigInt(nmk) * big_factorial(p - k);
    }
    r.diverged = (r.exact_form != r.factorial_form);
    return r;
}

// ---------------------------------------------------------------------------
// Colored bases and composition
// ---------------------------------------------------------------------------

struct ColoredMember {
    Graph graph;
    TotalColoring coloring;
    MagicCertificate certificate;
};

struct ColoredBase {
    std::vector<ColoredMember> members;
    MagicKind kind = MagicKind::GracefulDifference;
    Color constant = 0;
};

/// Validates a base: members pass the kind check with one shared constant and
/// the odd edge set, are pairwise non-isomorphic, and each contains a vertex
/// carrying `anchor_color` (0 for plain bases, 1 for twin bases).
inline ColoredBase make_colored_base(std::vector<std::pair<Graph, TotalColoring>> members,
                                     MagicKind kind, Color anchor_color = 0) {
    if (members.empty()) throw std::invalid_argument("empty base");
    ColoredBase base;
    base.kind = kind;
    std::optional<Color> shared;
    std::set<std::string> canon;
    for (auto& [g, c] : members) {
        MagicCheck chk = check_w_magic(g, c, kind);
        if (!chk.valid || !chk.certificate.is_odd_edge)
            throw std::invalid_argument("base member fails the odd-edge kind check");
        if (!shared) shared = chk.certificate.constant;
        if (*shared != chk.certificate.constant)
            throw std::invalid_argument("base members disagree on the constant");
        bool anchored = false;
        for (VertexId v : g.vertices())
            if (c.vertex(v) == anchor_color) anchored = true;
        if (!anchored)
            throw std::invalid_argument("base member has no vertex colored " +
                                        std::to_string(anchor_color));
        if (!canon.insert(canonical_form(g)).second)
            throw std::invalid_argument("base members must be pairwise non-isomorphic");
        base.members.push_back(ColoredMember{g, c, chk.certificate});
    }
    base.constant = *shared;
    return base;
}

struct CoincidePair {
    int copy_a = 0;
    VertexId vertex_a = 0;  // id within the member graph the copy was made from
    int copy_b = 0;
    VertexId vertex_b = 0;
};

struct CompositionRecipe {
    std::vector<int> coefficients;        // copies per base member; sum >= 1
    std::vector<LeafPlan> plans;          // per copy, member-local vertex ids; may be empty
    std::vector<CoincidePair> coincides;  // equal-colored vertices to merge
    LeafOrder order = LeafOrder::ascending();
};

struct PieceReport {
    int copy_index = 0;
    int member_index = 0;
    Color constant = 0;
    std::size_t vertices = 0;
    std::size_t edges = 0;
};

struct CompositionReport {
    std::vector<PieceReport> pieces;
    std::vector<CoincidePair> coincide_log;
    std::set<Color> constants;
};

struct Composite {
    Graph graph;
    TotalColoring coloring;
    CompositionReport report;
    std::vector<std::set<Edge>> piece_edges;  // per piece, in composite ids
};

namespace detail {

struct PreparedCopy {
    int member_index;
    Graph graph;
    TotalColoring coloring;
    Color constant;
    std::map<VertexId, VertexId> local_to_global;  // member-local core ids
};

inline std::vector<PreparedCopy> prepare_copies(const ColoredBase& base,
                                                const CompositionRecipe& recipe) {
    if (recipe.coefficients.size() != base.members.size())
        throw std::invalid_argument("coefficient count does not match base size");
    long long total = std::accumulate(recipe.coefficients.begin(), recipe.coefficients.end(), 0LL);
    if (total < 1) throw std::invalid_argument("coefficient sum must be at least 1");

    std::vector<PreparedCopy> copies;
    VertexId offset = 0;
    int copy_index = 0;
    for (std::size_t k = 0; k < base.members.size(); ++k) {
        if (recipe.coefficients[k] < 0) throw std::invalid_argument("negative coefficient");
        for (int rep = 0; rep < recipe.coefficients[k]; ++rep, ++copy_index) {
            const ColoredMember& member = base.members[k];
            PreparedCopy copy;
            copy.member_index = static_cast<int>(k);
            for (VertexId v : member.graph.vertices()) {
                copy.local_to_global[v] = v + offset;
                copy.graph.add_vertex(v + offset);
                copy.coloring.set_vertex(v + offset, member.coloring.vertex(v));
            }
            for (const Edge& e : member.graph.edges()) {
                copy.graph.add_edge(e.first + offset, e.second + offset);
                copy.coloring.set_edge(e.first + offset, e.second + offset,
                                       member.coloring.edge(e));
            }
            copy.constant = base.constant;
            // leaf-adding round, when the recipe asks for one
            if (static_cast<std::size_t>(copy_index) < recipe.plans.size() &&
                recipe.plans[copy_index].total() > 0) {
                LeafPlan shifted;
                for (const auto& [v, cnt] : recipe.plans[copy_index].counts) {
                    if (!member.graph.has_vertex(v))
                        throw std::invalid_argument("recipe plan names unknown member vertex");
                    shifted.counts[v + offset] = cnt;
                }
                RlaResult round =
                    rla_continuous(copy.graph, copy.coloring, shifted, base.kind, recipe.order);
                copy.graph = round.graph;
                copy.coloring = round.coloring;
                copy.constant = round.constant_after;
            }
            offset = *copy.graph.vertices().rbegin() + 1;
            copies.push_back(std::move(copy));
        }
    }
    return copies;
}

struct UnionFind {
    std::map<VertexId, VertexId> parent;
    VertexId find(VertexId v) {
        auto it = parent.find(v);
        if (it == parent.end() || it->second == v) return v;
        return parent[v] = find(it->second);
    }
    void unite(VertexId a, VertexId b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

inline Composite compose(const ColoredBase& base, const CompositionRecipe& recipe) {
    std::vector<PreparedCopy> copies = prepare_copies(base, recipe);

    // vertex color sets must pairwise intersect
    std::vector<std::set<Color>> colorsets;
    for (const auto& copy : copies) {
        std::set<Color> s;
        for (VertexId v : copy.graph.vertices()) s.insert(copy.coloring.vertex(v));
        colorsets.push_back(std::move(s));
    }
    for (std::size_t a = 0; a < copies.size(); ++a)
        for (std::size_t b = a + 1; b < copies.size(); ++b) {
            bool meet = false;
            for (Color c : colorsets[a])
                if (colorsets[b].count(c)) { meet = true; break; }
            if (!meet)
                throw std::invalid_argument("piece vertex-color sets do not all intersect");
        }

    UnionFind uf;
    auto global_of = [&](int copy, VertexId local) {
        if (copy < 0 || static_cast<std::size_t>(copy) >= copies.size())
            throw std::invalid_argument("coincide pair names unknown copy");
        auto it = copies[copy].local_to_global.find(local);
        if (it == copies[copy].local_to_global.end())
            throw std::invalid_argument("coincide pair names unknown vertex");
        return it->second;
    };
    for (const CoincidePair& p : recipe.coincides) {
        VertexId ga = global_of(p.copy_a, p.vertex_a);
        VertexId gb = global_of(p.copy_b, p.vertex_b);
        Color ca = copies[p.copy_a].coloring.vertex(ga);
        Color cb = copies[p.copy_b].coloring.vertex(gb);
        if (ca != cb)
            throw std::invalid_argument("coincide pair joins vertices colored " +
                                        std::to_string(ca) + " and " + std::to_string(cb));
        uf.unite(ga, gb);
    }

    Composite out;
    for (const auto& copy : copies)
        for (VertexId v : copy.graph.vertices()) out.graph.add_vertex(uf.find(v));
    std::map<Edge, Color> merged_edges;
    out.piece_edges.resize(copies.size());
    for (std::size_t i = 0; i < copies.size(); ++i) {
        for (const Edge& e : copies[i].graph.edges()) {
            VertexId u = uf.find(e.first), v = uf.find(e.second);
            if (u == v) throw std::invalid_argument("coinciding created a self-loop");
            Edge key = make_edge(u, v);
            if (merged_edges.count(key))
                throw std::invalid_argument("coinciding created a multi-edge");
            merged_edges[key] = copies[i].coloring.edge(e);
            out.piece_edges[i].insert(key);
        }
    }
    for (const auto& [e, c] : merged_edges) {
        out.graph.add_edge(e.first, e.second);
        out.coloring.set_edge(e, c);
    }
    for (const auto& copy : copies)
        for (VertexId v : copy.graph.vertices())
            out.coloring.set_vertex(uf.find(v), copy.coloring.vertex(v));
    if (!out.graph.connected()) throw std::invalid_argument("composite is disconnected");

    for (std::size_t i = 0; i < copies.size(); ++i) {
        PieceReport pr;
        pr.copy_index = static_cast<int>(i);
        pr.member_index = copies[i].member_index;
        pr.constant = copies[i].constant;
        pr.vertices = copies[i].graph.vertex_count();
        pr.edges = copies[i].graph.edge_count();
        out.report.pieces.push_back(pr);
        out.report.constants.insert(pr.constant);
    }
    out.report.coincide_log = recipe.coincides;

    // compound coloring restricted to each piece must satisfy the kind
    // equation with that piece's constant
    for (std::size_t i = 0; i < copies.size(); ++i) {
        for (const Edge& e : out.piece_edges[i]) {
            Color val = magic_value(base.kind, out.coloring.vertex(e.first), out.coloring.edge(e),
                                    out.coloring.vertex(e.second));
            if (val != copies[i].constant)
                throw std::logic_error("compound coloring failed piecewise validation");
        }
    }
    return out;
}

}  // namespace detail

/// Leaf-adding-randomly then vertex-coinciding composition over a colored
/// base. Coincides join equal-colored vertices across copies; the result must
/// stay simple and connected, and the compound coloring keeps per-piece
/// constants.
inline Composite larvc_compose(const ColoredBase& base, const CompositionRecipe& recipe) {
    return detail::compose(base, recipe);
}

enum class ConstructionMode { Linear, Nonlinear };

/// Linear mode: a tree base chained copy-to-copy, producing a tree.
/// Nonlinear mode: at least one non-tree member used with nonzero coefficient.
inline Composite construction_compose(const ColoredBase& base, const CompositionRecipe& recipe,
                                      ConstructionMode mode) {
    if (mode == ConstructionMode::Linear) {
        for (const ColoredMember& m : base.members)
            if (!m.graph.is_tree())
                throw std::invalid_argument("linear construction requires a tree base");
        long long copies =
            std::accumulate(recipe.coefficients.begin(), recipe.coefficients.end(), 0LL);
        if (static_cast<long long>(recipe.coincides.size()) != copies - 1)
            throw std::invalid_argument("linear construction needs exactly one coincide per join");
        for (std::size_t s = 0; s < recipe.coincides.size(); ++s) {
            const CoincidePair& p = recipe.coincides[s];
            if (!((p.copy_a == static_cast<int>(s) && p.copy_b == static_cast<int>(s) + 1) ||
                  (p.copy_b == static_cast<int>(s) && p.copy_a == static_cast<int>(s) + 1)))
                throw std::invalid_argument("linear construction must chain consecutive copies");
        }
        Composite out = detail::compose(base, recipe);
        if (!out.graph.is_tree())
            throw std::logic_error("linear construction did not produce a tree");
        return out;
    }
    bool has_nontree = false;
    for (std::size_t k = 0; k < base.members.size(); ++k)
        if (!base.members[k].graph.is_tree() && recipe.coefficients.size() > k &&
            recipe.coefficients[k] > 0)
            has_nontree = true;
    if (!has_nontree)
        throw std::invalid_argument(
            "nonlinear construction requires a non-tree member with nonzero coefficient");
    return detail::compose(base, recipe);
}

/// Iteratively merges equal-colored vertex pairs while no merge would create a
/// multi-edge (or a loop). Smallest eligible color first, then smallest id
/// pair; edge colors are untouched. Returns the fixed point.
inline std::pair<Graph, TotalColoring> collapse_same_colors(const Graph& g,
                                                            const TotalColoring& c) {
    c.require_total(g);
    Graph cur = g;
    TotalColoring col = c;
    bool merged = true;
    while (merged) {
        merged = false;
        std::map<Color, std::vector<VertexId>> classes;
        for (VertexId v : cur.vertices()) classes[col.vertex(v)].push_back(v);
        for (auto& [color, vs] : classes) {
            if (vs.size() < 2) continue;
            for (std::size_t i = 0; i < vs.size() && !merged; ++i) {
                for (std::size_t j = i + 1; j < vs.size() && !merged; ++j) {
                    VertexId a = vs[i], b = vs[j];
                    if (cur.has_edge(a, b)) continue;
                    auto na = cur.neighbors(a), nb = cur.neighbors(b);
                    std::vector<VertexId> common;
                    std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(),
                                          std::back_inserter(common));
                    if (!common.empty()) continue;
                    Graph next = vertex_coincide(cur, a, b);
                    TotalColoring ncol;
                    for (VertexId v : next.vertices()) ncol.set_vertex(v, col.vertex(v));
                    for (const Edge& e : next.edges()) ncol.set_edge(e, 0);
                    for (const Edge& e : cur.edges()) {
                        VertexId u = e.first == b ? a : e.first;
                        VertexId v = e.second == b ? a : e.second;
                        ncol.set_edge(make_edge(u, v), col.edge(e));
                    }
                    cur = next;
                    col = ncol;
                    merged = true;
                }
            }
            if (merged) break;
        }
    }
    return {cur, col};
}

}  // namespace topocode
