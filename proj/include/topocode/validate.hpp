#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "topocode/coloring.hpp"
#include "topocode/graph.hpp"
#include "topocode/topcode_matrix.hpp"

namespace topocode {

enum class MagicKind { EdgeMagic, EdgeDifference, FelicitousDifference, GracefulDifference };

/// Class selector for checks that also accept the odd-graceful family.
enum class CheckKind {
    OddGraceful,
    EdgeMagic,
    EdgeDifference,
    FelicitousDifference,
    GracefulDifference
};

inline CheckKind to_check_kind(MagicKind k) {
    switch (k) {
        case MagicKind::EdgeMagic: return CheckKind::EdgeMagic;
        case MagicKind::EdgeDifference: return CheckKind::EdgeDifference;
        case MagicKind::FelicitousDifference: return CheckKind::FelicitousDifference;
        case MagicKind::GracefulDifference: return CheckKind::GracefulDifference;
    }
    throw std::logic_error("bad kind");
}

inline const char* kind_name(MagicKind k) {
    switch (k) {
        case MagicKind::EdgeMagic: return "edge-magic";
        case MagicKind::EdgeDifference: return "edge-difference";
        case MagicKind::FelicitousDifference: return "felicitous-difference";
        case MagicKind::GracefulDifference: return "graceful-difference";
    }
    return "?";
}

inline std::optional<MagicKind> kind_from_name(const std::string& s) {
    if (s == "edge-magic") return MagicKind::EdgeMagic;
    if (s == "edge-difference") return MagicKind::EdgeDifference;
    if (s == "felicitous-difference") return MagicKind::FelicitousDifference;
    if (s == "graceful-difference") return MagicKind::GracefulDifference;
    return std::nullopt;
}

/// Per-edge value whose constancy defines each magic class:
/// edge-magic x+e+y, edge-difference e+|x-y|, felicitous-difference |x+y-e|,
/// graceful-difference ||x-y|-e|.
inline Color magic_value(MagicKind kind, Color x, Color e, Color y) {
    switch (kind) {
        case MagicKind::EdgeMagic: return x + e + y;
        case MagicKind::EdgeDifference: return e + std::llabs(x - y);
        case MagicKind::FelicitousDifference: return std::llabs(x + y - e);
        case MagicKind::GracefulDifference: return std::llabs(std::llabs(x - y) - e);
    }
    throw std::logic_error("bad kind");
}

inline bool all_vertex_colors_distinct(const Graph& g, const TotalColoring& c) {
    std::set<Color> seen;
    for (VertexId v : g.vertices())
        if (!seen.insert(c.vertex(v)).second) return false;
    return true;
}

/// Edge color set equals {1, 3, ..., 2q-1} exactly.
inline bool odd_edge_exact(const Graph& g, const TotalColoring& c) {
    std::vector<Color> e;
    for (const Edge& ed : g.edges()) e.push_back(c.edge(ed));
    std::sort(e.begin(), e.end());
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != static_cast<Color>(2 * i + 1)) return false;
    return !e.empty();
}

/// Oriented bipartition with max color on the x side below min color on the y
/// side, if the graph is connected, bipartite and such an orientation exists.
inline std::optional<BipartitionView> set_ordered_bipartition(const Graph& g,
                                                              const TotalColoring& c) {
    if (!g.connected()) return std::nullopt;
    auto parts = g.two_coloring();
    if (!parts) return std::nullopt;
    auto& [a, b] = *parts;
    if (a.empty() || b.empty()) return std::nullopt;
    auto max_color = [&](const std::set<VertexId>& side) {
        Color m = c.vertex(*side.begin());
        for (VertexId v : side) m = std::max(m, c.vertex(v));
        return m;
    };
    auto min_color = [&](const std::set<VertexId>& side) {
        Color m = c.vertex(*side.begin());
        for (VertexId v : side) m = std::min(m, c.vertex(v));
        return m;
    };
    const std::set<VertexId>* lo = nullptr;
    const std::set<VertexId>* hi = nullptr;
    if (max_color(a) < min_color(b)) {
        lo = &a;
        hi = &b;
    } else if (max_color(b) < min_color(a)) {
        lo = &b;
        hi = &a;
    } else {
        return std::nullopt;
    }
    BipartitionView view;
    view.x_side.assign(lo->begin(), lo->end());
    view.y_side.assign(hi->begin(), hi->end());
    auto by_color = [&](VertexId u, VertexId v) {
        return std::make_pair(c.vertex(u), u) < std::make_pair(c.vertex(v), v);
    };
    std::sort(view.x_side.begin(), view.x_side.end(), by_color);
    std::sort(view.y_side.begin(), view.y_side.end(), by_color);
    return view;
}

struct GracefulReport {
    bool valid = false;
    bool is_labeling = false;
    bool set_ordered = false;
    std::optional<BipartitionView> bipartition;
    std::string reason;
};

namespace detail {

/// Shared body for the graceful family. Odd variant: vertices in [0,2q-1],
/// edges {1,3,...,2q-1}; classic variant: vertices in [0,q], edges [1,q].
inline GracefulReport check_graceful_family(const Graph& g, const TotalColoring& c, bool odd,
                                            bool require_set_ordered) {
    GracefulReport r;
    if (g.edge_count() < 1) {
        r.reason = "graph has no edges";
        return r;
    }
    if (!g.connected()) {
        r.reason = "graph is disconnected";
        return r;
    }
    c.require_total(g);
    const Color q = static_cast<Color>(g.edge_count());
    const Color vmax = odd ? 2 * q - 1 : q;
    Color minv = c.vertex(*g.vertices().begin());
    for (VertexId v : g.vertices()) {
        Color cv = c.vertex(v);
        minv = std::min(minv, cv);
        if (cv < 0 || cv > vmax) {
            r.reason = "vertex color out of range";
            return r;
        }
    }
    if (minv != 0) {
        r.reason = "minimum vertex color is not 0";
        return r;
    }
    for (const Edge& e : g.edges()) {
        if (c.edge(e) != std::llabs(c.vertex(e.first) - c.vertex(e.second))) {
            r.reason = "edge color is not |f(u)-f(v)|";
            return r;
        }
    }
    std::vector<Color> ec;
    for (const Edge& e : g.edges()) ec.push_back(c.edge(e));
    std::sort(ec.begin(), ec.end());
    for (std::size_t i = 0; i < ec.size(); ++i) {
        Color want = odd ? static_cast<Color>(2 * i + 1) : static_cast<Color>(i + 1);
        if (ec[i] != want) {
            r.reason = odd ? "edge colors are not exactly the odd range"
                           : "edge colors are not exactly [1,q]";
            return r;
        }
    }
    r.is_labeling = all_vertex_colors_distinct(g, c);
    r.bipartition = set_ordered_bipartition(g, c);
    r.set_ordered = r.bipartition.has_value();
    if (require_set_ordered && !r.set_ordered) {
        r.reason = "no set-ordered bipartition";
        return r;
    }
    r.valid = true;
    return r;
}

}  // namespace detail

inline GracefulReport check_graceful(const Graph& g, const TotalColoring& c,
                                     bool require_set_ordered = false) {
    return detail::check_graceful_family(g, c, /*odd=*/false, require_set_ordered);
}

inline GracefulReport check_odd_graceful(const Graph& g, const TotalColoring& c,
                                         bool require_set_ordered = false) {
    return detail::check_graceful_family(g, c, /*odd=*/true, require_set_ordered);
}

struct MagicCertificate {
    MagicKind kind = MagicKind::EdgeMagic;
    Color constant = 0;
    bool is_labeling = false;
    bool is_set_ordered = false;
    bool is_odd_edge = false;
    std::optional<BipartitionView> bipartition;
};

struct MagicCheck {
    bool valid = false;
    MagicCertificate certificate;
    std::string reason;
    std::optional<Edge> violating_edge;
    std::vector<Color> constants_seen;
};

namespace detail {

/// Equation scan only: shared constant per edge, no structural demands.
inline std::optional<Color> uniform_magic_constant(const Graph& g, const TotalColoring& c,
                                                   MagicKind kind, std::optional<Edge>* violator,
                                                   std::vector<Color>* values) {
    std::optional<Color> constant;
    std::set<Color> distinct;
    for (const Edge& e : g.edges()) {
        Color val = magic_value(kind, c.vertex(e.first), c.edge(e), c.vertex(e.second));
        distinct.insert(val);
        if (!constant) {
            constant = val;
        } else if (*constant != val && violator && !violator->has_value()) {
            *violator = e;
        }
    }
    if (values) values->assign(distinct.begin(), distinct.end());
    if (distinct.size() > 1) return std::nullopt;
    return constant;
}

}  // namespace detail

/// Verdict for the four magic classes: reports the shared constant plus the
/// labeling / set-ordered / odd-edge flags.
inline MagicCheck check_w_magic(const Graph& g, const TotalColoring& c, MagicKind kind) {
    MagicCheck r;
    r.certificate.kind = kind;
    if (g.edge_count() < 1) {
        r.reason = "graph has no edges";
        return r;
    }
    if (!g.connected()) {
        r.reason = "graph is disconnected";
        return r;
    }
    c.require_total(g);
    auto constant =
        detail::uniform_magic_constant(g, c, kind, &r.violating_edge, &r.constants_seen);
    if (!constant) {
        r.reason = "per-edge values disagree";
        return r;
    }
    r.certificate.constant = *constant;
    r.certificate.is_labeling = all_vertex_colors_distinct(g, c);
    r.certificate.is_odd_edge = odd_edge_exact(g, c);
    r.certificate.bipartition = set_ordered_bipartition(g, c);
    r.certificate.is_set_ordered = r.certificate.bipartition.has_value();
    r.valid = true;
    return r;
}

struct StronglyReport {
    bool valid = false;
    Color matching_sum = 0;   // shared f(u)+f(v) over matching edges
    Color class_constant = 0; // magic constant when a magic kind was requested
    bool is_labeling = false;
    bool set_ordered = false;
    std::optional<Edge> violating_edge;
    std::string reason;
};

/// Strongly variants on trees with a perfect matching: the base odd-edge class
/// for the requested kind plus a shared color sum on every matching edge.
inline StronglyReport check_strongly(const Graph& g, const TotalColoring& c,
                                     const std::set<Edge>& matching, CheckKind kind) {
    StronglyReport r;
    if (!g.is_tree()) throw std::invalid_argument("check_strongly: graph is not a tree");
    std::set<VertexId> covered;
    for (const Edge& e : matching) {
        if (!g.edges().count(e)) throw std::invalid_argument("matching edge not in graph");
        if (!covered.insert(e.first).second || !covered.insert(e.second).second)
            throw std::invalid_argument("matching edges share a vertex");
    }
    if (covered.size() != g.vertex_count())
        throw std::invalid_argument("matching is not perfect");
    c.require_total(g);

    const Color q = static_cast<Color>(g.edge_count());
    if (kind == CheckKind::OddGraceful) {
        GracefulReport base = check_odd_graceful(g, c, false);
        if (!base.valid) {
            r.reason = base.reason;
            return r;
        }
        r.is_labeling = base.is_labeling;
        r.set_ordered = base.set_ordered;
    } else {
        MagicKind mk;
        switch (kind) {
            case CheckKind::EdgeMagic: mk = MagicKind::EdgeMagic; break;
            case CheckKind::EdgeDifference: mk = MagicKind::EdgeDifference; break;
            case CheckKind::FelicitousDifference: mk = MagicKind::FelicitousDifference; break;
            default: mk = MagicKind::GracefulDifference; break;
        }
        MagicCheck base = check_w_magic(g, c, mk);
        if (!base.valid) {
            r.reason = base.reason;
            r.violating_edge = base.violating_edge;
            return r;
        }
        if (!base.certificate.is_odd_edge) {
            r.reason = "edge colors are not exactly the odd range";
            return r;
        }
        for (VertexId v : g.vertices()) {
            Color cv = c.vertex(v);
            if (cv < 0 || cv > 2 * q - 1) {
                r.reason = "vertex color out of odd-variant range";
                return r;
            }
        }
        r.class_constant = base.certificate.constant;
        r.is_labeling = base.certificate.is_labeling;
        r.set_ordered = base.certificate.is_set_ordered;
    }

    std::optional<Color> sum;
    for (const Edge& e : matching) {
        Color s = c.vertex(e.first) + c.vertex(e.second);
        if (!sum) {
            sum = s;
        } else if (*sum != s) {
            r.reason = "matching edge sum disagrees";
            r.violating_edge = e;
            return r;
        }
    }
    r.matching_sum = sum.value_or(0);
    r.valid = true;
    return r;
}

struct TwinReport {
    bool valid = false;
    Color constant_f = 0;
    Color constant_t = 0;
    std::set<Color> union_set;
    bool perfect = false;
    std::string reason;
};

namespace detail {

/// Class conditions used on twin sides; connectivity is not demanded here
/// because a twin partner may be a forest.
inline std::optional<Color> twin_side_constant(const Graph& g, const TotalColoring& c,
                                               CheckKind kind, std::string* why) {
    if (!odd_edge_exact(g, c)) {
        *why = "edge colors are not exactly the odd range";
        return std::nullopt;
    }
    if (kind == CheckKind::OddGraceful) {
        for (const Edge& e : g.edges()) {
            if (c.edge(e) != std::llabs(c.vertex(e.first) - c.vertex(e.second))) {
                *why = "edge color is not |f(u)-f(v)|";
                return std::nullopt;
            }
        }
        return 0;
    }
    MagicKind mk;
    switch (kind) {
        case CheckKind::EdgeMagic: mk = MagicKind::EdgeMagic; break;
        case CheckKind::EdgeDifference: mk = MagicKind::EdgeDifference; break;
        case CheckKind::FelicitousDifference: mk = MagicKind::FelicitousDifference; break;
        default: mk = MagicKind::GracefulDifference; break;
    }
    auto k = uniform_magic_constant(g, c, mk, nullptr, nullptr);
    if (!k) *why = "per-edge values disagree";
    return k;
}

}  // namespace detail

/// Twin pair check: both sides carry the class on edge set {1,...,2q-1} odd,
/// vertex colors union into [0,2q]; perfect when the union is the whole range.
inline TwinReport check_twin(const Graph& gf, const TotalColoring& cf, const Graph& gt,
                             const TotalColoring& ct, CheckKind kind) {
    TwinReport r;
    if (gf.edge_count() != gt.edge_count())
        throw std::invalid_argument("check_twin: edge counts differ");
    if (gf.edge_count() == 0) {
        r.reason = "graphs have no edges";
        return r;
    }
    cf.require_total(gf);
    ct.require_total(gt);
    std::string why;
    auto kf = detail::twin_side_constant(gf, cf, kind, &why);
    if (!kf) {
        r.reason = "first side: " + why;
        return r;
    }
    auto kt = detail::twin_side_constant(gt, ct, kind, &why);
    if (!kt) {
        r.reason = "second side: " + why;
        return r;
    }
    r.constant_f = *kf;
    r.constant_t = *kt;
    const Color q = static_cast<Color>(gf.edge_count());
    for (VertexId v : gf.vertices()) r.union_set.insert(cf.vertex(v));
    for (VertexId v : gt.vertices()) r.union_set.insert(ct.vertex(v));
    for (Color c : r.union_set) {
        if (c < 0 || c > 2 * q) {
            r.reason = "vertex color union leaves [0,2q]";
            return r;
        }
    }
    r.perfect = (r.union_set.size() == static_cast<std::size_t>(2 * q + 1));
    r.valid = true;
    return r;
}

/// True iff cA(e) + cH(e) = S on every edge.
inline bool check_edge_matching(const Graph& g, const TotalColoring& ca, const TotalColoring& ch,
                                Color s) {
    for (const Edge& e : g.edges())
        if (ca.edge(e) + ch.edge(e) != s) return false;
    return true;
}

struct MatrixTeamReport {
    bool valid = false;
    std::vector<Color> constants;  // one shared constant per matrix
    std::string reason;
};

/// Matrix team: common size, vertex entries within [0,M], odd e-entries
/// forming {1,...,2n-1} per matrix, and one kind constant per matrix.
inline MatrixTeamReport check_matrix_team(const std::vector<TopcodeMatrix>& team, MagicKind kind,
                                          Color M) {
    MatrixTeamReport r;
    if (team.empty()) {
        r.reason = "empty team";
        return r;
    }
    std::size_t n = team.front().size();
    for (const TopcodeMatrix& m : team) {
        m.require_valid();
        if (m.size() != n) throw std::invalid_argument("matrix team sizes differ");
    }
    for (const TopcodeMatrix& m : team) {
        for (Color v : m.vertex_entries()) {
            if (v < 0 || v > M) {
                r.reason = "vertex entry outside [0,M]";
                return r;
            }
        }
        if (!matrix_odd_edge_exact(m)) {
            r.reason = "E row is not exactly the odd range";
            return r;
        }
        std::optional<Color> k;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m.e_row[i] % 2 == 0) {
                r.reason = "even e-entry";
                return r;
            }
            Color val = magic_value(kind, m.x_row[i], m.e_row[i], m.y_row[i]);
            if (!k) {
                k = val;
            } else if (*k != val) {
                r.reason = "columns disagree on the constant";
                return r;
            }
        }
        r.constants.push_back(*k);
    }
    r.valid = true;
    return r;
}

enum class DerivedMode { VeSeparate, Mixed };

struct DerivedReport {
    bool valid = false;
    Color constant = 0;
    std::string reason;
};

/// Derived-coloring conditions: the candidate rearranges the base colors and
/// every edge (and every vertex) participates in a constant-valued triple.
inline DerivedReport check_derived_coloring(const Graph& g, const TotalColoring& base,
                                            const TotalColoring& candidate, MagicKind kind,
                                            DerivedMode mode) {
    DerivedReport r;
    base.require_total(g);
    candidate.require_total(g);
    auto multiset_of = [&](const TotalColoring& c, bool verts, bool edges) {
        std::multiset<Color> out;
        if (verts)
            for (VertexId v : g.vertices()) out.insert(c.vertex(v));
        if (edges)
            for (const Edge& e : g.edges()) out.insert(c.edge(e));
        return out;
    };
    if (mode == DerivedMode::VeSeparate) {
        if (multiset_of(base, true, false) != multiset_of(candidate, true, false) ||
            multiset_of(base, false, true) != multiset_of(candidate, false, true))
            throw std::invalid_argument("candidate is not a per-part rearrangement of base colors");
    } else {
        if (multiset_of(base, true, true) != multiset_of(candidate, true, true))
            throw std::invalid_argument("candidate is not a rearrangement of base colors");
    }
    auto base_check = detail::uniform_magic_constant(g, base, kind, nullptr, nullptr);
    if (!base_check) throw std::invalid_argument("base coloring is not a single-constant coloring");
    const Color c = *base_check;
    r.constant = c;

    std::vector<VertexId> verts(g.vertices().begin(), g.vertices().end());
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());

    // triple(vx, ec, vy): vx and vy in vertex roles, ec in the edge role
    auto triple = [&](Color vx, Color ec, Color vy) { return magic_value(kind, vx, ec, vy) == c; };

    if (mode == DerivedMode::VeSeparate) {
        // (i) every edge color closes a triple with two distinct vertices
        for (const Edge& ed : edges) {
            bool found = false;
            for (std::size_t i = 0; i < verts.size() && !found; ++i)
                for (std::size_t j = i + 1; j < verts.size() && !found; ++j)
                    if (triple(candidate.vertex(verts[i]), candidate.edge(ed),
                               candidate.vertex(verts[j])))
                        found = true;
            if (!found) {
                r.reason = "edge has no vertex pair closing the triple";
                return r;
            }
        }
        // (ii) every vertex color participates in a triple
        for (VertexId y : verts) {
            bool found = false;
            for (VertexId t : verts) {
                if (t == y) continue;
                for (const Edge& ed : edges)
                    if (triple(candidate.vertex(y), candidate.edge(ed), candidate.vertex(t))) {
                        found = true;
                        break;
                    }
                if (found) break;
            }
            if (!found) {
                r.reason = "vertex participates in no triple";
                return r;
            }
        }
    } else {
        // Mixed: each element pairs with two others in either role.
        std::vector<Color> pool;
        for (VertexId v : verts) pool.push_back(candidate.vertex(v));
        for (const Edge& ed : edges) pool.push_back(candidate.edge(ed));
        for (std::size_t z = 0; z < pool.size(); ++z) {
            bool found = false;
            for (std::size_t i = 0; i < pool.size() && !found; ++i) {
                if (i == z) continue;
                for (std::size_t j = 0; j < pool.size() && !found; ++j) {
                    if (j == z || j == i) continue;
                    if (triple(pool[z], pool[j], pool[i]) || triple(pool[i], pool[z], pool[j]))
                        found = true;
                }
            }
            if (!found) {
                r.reason = "element participates in no triple";
                return r;
            }
        }
    }
    r.valid = true;
    return r;
}

}  // namespace topocode
