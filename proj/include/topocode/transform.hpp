#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "topocode/coloring.hpp"
#include "topocode/graph.hpp"
#include "topocode/validate.hpp"

namespace topocode {

enum class SetDualKind { Dual, DualStar, SetXY, SetXYStar, SetX, SetXStar, SetY, SetYStar };

inline const char* set_dual_name(SetDualKind k) {
    switch (k) {
        case SetDualKind::Dual: return "dual";
        case SetDualKind::DualStar: return "dual-star";
        case SetDualKind::SetXY: return "set-xy";
        case SetDualKind::SetXYStar: return "set-xy-star";
        case SetDualKind::SetX: return "set-x";
        case SetDualKind::SetXStar: return "set-x-star";
        case SetDualKind::SetY: return "set-y";
        case SetDualKind::SetYStar: return "set-y-star";
    }
    return "?";
}

inline std::optional<SetDualKind> set_dual_from_name(const std::string& s) {
    for (SetDualKind k :
         {SetDualKind::Dual, SetDualKind::DualStar, SetDualKind::SetXY, SetDualKind::SetXYStar,
          SetDualKind::SetX, SetDualKind::SetXStar, SetDualKind::SetY, SetDualKind::SetYStar})
        if (s == set_dual_name(k)) return k;
    return std::nullopt;
}

/// Output class claimed by a transform.
enum class ColorClass { Graceful, OddGraceful, EdgeMagic, EdgeDifference, FelicitousDifference,
                        GracefulDifference };

inline const char* color_class_name(ColorClass k) {
    switch (k) {
        case ColorClass::Graceful: return "graceful";
        case ColorClass::OddGraceful: return "odd-graceful";
        case ColorClass::EdgeMagic: return "edge-magic";
        case ColorClass::EdgeDifference: return "edge-difference";
        case ColorClass::FelicitousDifference: return "felicitous-difference";
        case ColorClass::GracefulDifference: return "graceful-difference";
    }
    return "?";
}

struct TransformResult {
    TotalColoring coloring;
    ColorClass klass = ColorClass::Graceful;
    Color constant = 0;     // unused for the graceful classes
    bool set_ordered = false;
    bool verified = false;  // re-checked through the validators
    std::string note;
};

namespace detail {

struct SideData {
    std::set<VertexId> x, y;
    Color max_x = 0, min_y = 0;
};

inline SideData oriented_sides(const Graph& g, const TotalColoring& c) {
    auto view = set_ordered_bipartition(g, c);
    if (!view) throw std::invalid_argument("input is not set-ordered");
    SideData s;
    s.x.insert(view->x_side.begin(), view->x_side.end());
    s.y.insert(view->y_side.begin(), view->y_side.end());
    s.max_x = c.vertex(view->x_side.back());
    s.min_y = c.vertex(view->y_side.front());
    return s;
}

inline void verify_claim(const Graph& g, TransformResult& r) {
    switch (r.klass) {
        case ColorClass::Graceful:
            r.verified = check_graceful(g, r.coloring, false).valid &&
                         (!r.set_ordered || check_graceful(g, r.coloring, true).valid);
            break;
        case ColorClass::OddGraceful:
            r.verified = check_odd_graceful(g, r.coloring, r.set_ordered).valid;
            break;
        default: {
            MagicKind mk = r.klass == ColorClass::EdgeMagic ? MagicKind::EdgeMagic
                           : r.klass == ColorClass::EdgeDifference ? MagicKind::EdgeDifference
                           : r.klass == ColorClass::FelicitousDifference
                               ? MagicKind::FelicitousDifference
                               : MagicKind::GracefulDifference;
            MagicCheck chk = check_w_magic(g, r.coloring, mk);
            r.verified = chk.valid && chk.certificate.constant == r.constant &&
                         (!r.set_ordered || chk.certificate.is_set_ordered);
            break;
        }
    }
    if (!r.verified && r.note.empty()) r.note = "self-verification failed";
}

}  // namespace detail

/// Set-dual family over a set-ordered graceful labeling f (vertices in [0,q],
/// edges [1,q]). Star variants recolor edges with q+1-f(e); the plain variants
/// keep induced |x-y| edges.
inline TransformResult set_dual_transform(const Graph& g, const TotalColoring& f,
                                          SetDualKind kind) {
    GracefulReport in = check_graceful(g, f, true);
    if (!in.valid || !in.is_labeling)
        throw std::invalid_argument("set_dual_transform: input is not a set-ordered graceful labeling (" +
                                    in.reason + ")");
    detail::SideData sd = detail::oriented_sides(g, f);
    const Color q = static_cast<Color>(g.edge_count());
    const Color gap = sd.min_y - sd.max_x;

    TransformResult r;
    auto induced_edges = [&]() {
        for (const Edge& e : g.edges())
            r.coloring.set_edge(e, std::llabs(r.coloring.vertex(e.first) -
                                              r.coloring.vertex(e.second)));
    };
    auto star_edges = [&]() {
        for (const Edge& e : g.edges()) r.coloring.set_edge(e, q + 1 - f.edge(e));
    };
    auto xy_dual_vertices = [&]() {
        for (VertexId v : sd.x) r.coloring.set_vertex(v, sd.max_x - f.vertex(v));
        for (VertexId v : sd.y) r.coloring.set_vertex(v, q + sd.min_y - f.vertex(v));
    };

    switch (kind) {
        case SetDualKind::Dual:
            for (VertexId v : g.vertices()) r.coloring.set_vertex(v, q - f.vertex(v));
            induced_edges();
            r.klass = ColorClass::Graceful;
            r.set_ordered = true;
            break;
        case SetDualKind::DualStar:
            for (VertexId v : g.vertices()) r.coloring.set_vertex(v, q - f.vertex(v));
            star_edges();
            r.klass = ColorClass::EdgeDifference;
            r.constant = q + 1;
            r.set_ordered = true;
            break;
        case SetDualKind::SetXY:
            xy_dual_vertices();
            induced_edges();
            r.klass = ColorClass::Graceful;
            r.set_ordered = true;
            if (gap != 1) r.note = "min f(Y) - max f(X) = " + std::to_string(gap) +
                                   "; gracefulness holds only at gap 1";
            break;
        case SetDualKind::SetXYStar:
            xy_dual_vertices();
            star_edges();
            r.klass = ColorClass::GracefulDifference;
            r.constant = gap - 1;
            r.set_ordered = true;
            break;
        case SetDualKind::SetX:
            for (VertexId v : sd.x) r.coloring.set_vertex(v, sd.max_x - f.vertex(v));
            for (VertexId v : sd.y) r.coloring.set_vertex(v, f.vertex(v));
            for (const Edge& e : g.edges()) r.coloring.set_edge(e, f.edge(e));
            r.klass = ColorClass::FelicitousDifference;
            r.constant = sd.max_x;
            r.set_ordered = true;
            break;
        case SetDualKind::SetXStar:
            for (VertexId v : sd.x) r.coloring.set_vertex(v, sd.max_x - f.vertex(v));
            for (VertexId v : sd.y) r.coloring.set_vertex(v, f.vertex(v));
            star_edges();
            r.klass = ColorClass::EdgeMagic;
            r.constant = q + 1 + sd.max_x;
            r.set_ordered = true;
            break;
        case SetDualKind::SetY:
            for (VertexId v : sd.x) r.coloring.set_vertex(v, f.vertex(v));
            for (VertexId v : sd.y) r.coloring.set_vertex(v, q + sd.min_y - f.vertex(v));
            for (const Edge& e : g.edges()) r.coloring.set_edge(e, f.edge(e));
            r.klass = ColorClass::EdgeMagic;
            r.constant = q + sd.min_y;
            r.set_ordered = true;
            break;
        case SetDualKind::SetYStar:
            for (VertexId v : sd.x) r.coloring.set_vertex(v, f.vertex(v));
            for (VertexId v : sd.y) r.coloring.set_vertex(v, q + sd.min_y - f.vertex(v));
            star_edges();
            r.klass = ColorClass::FelicitousDifference;
            r.constant = sd.min_y - 1;
            r.set_ordered = true;
            break;
    }
    detail::verify_claim(g, r);
    if (kind == SetDualKind::SetXY && gap != 1) r.verified = false;
    return r;
}

/// Equivalence transforms from a set-ordered odd-graceful labeling to each of
/// the four odd-edge magic classes, with the predicted constants:
/// edge-difference 2q; graceful-difference min f(Y)-max f(X)-1;
/// felicitous-difference max f(X); edge-magic 2q+max f(X).
inline TransformResult odd_equivalence_transform(const Graph& g, const TotalColoring& f,
                                                 MagicKind target) {
    GracefulReport in = check_odd_graceful(g, f, true);
    if (!in.valid || !in.is_labeling)
        throw std::invalid_argument(
            "odd_equivalence_transform: input is not a set-ordered odd-graceful labeling (" +
            in.reason + ")");
    detail::SideData sd = detail::oriented_sides(g, f);
    const Color q = static_cast<Color>(g.edge_count());

    TransformResult r;
    r.set_ordered = true;
    auto flipped_edges = [&]() {
        for (const Edge& e : g.edges()) r.coloring.set_edge(e, 2 * q - f.edge(e));
    };
    switch (target) {
        case MagicKind::EdgeDifference:
            for (VertexId v : g.vertices()) r.coloring.set_vertex(v, 2 * q - 1 - f.vertex(v));
            flipped_edges();
            r.klass = ColorClass::EdgeDifference;
            r.constant = 2 * q;
            break;
        case MagicKind::GracefulDifference:
            for (VertexId v : sd.x) r.coloring.set_vertex(v, sd.max_x - f.vertex(v));
            for (VertexId v : sd.y) r.coloring.set_vertex(v, 2 * q - 1 + sd.min_y - f.vertex(v));
            flipped_edges();
            r.klass = ColorClass::GracefulDifference;
            r.constant = sd.min_y - sd.max_x - 1;
            break;
        case MagicKind::FelicitousDifference:
            for (VertexId v : sd.x) r.coloring.set_vertex(v, sd.max_x - f.vertex(v));
            for (VertexId v : sd.y) r.coloring.set_vertex(v, f.vertex(v));
            for (const Edge& e : g.edges()) r.coloring.set_edge(e, f.edge(e));
            r.klass = ColorClass::FelicitousDifference;
            r.constant = sd.max_x;
            break;
        case MagicKind::EdgeMagic:
            for (VertexId v : sd.x) r.coloring.set_vertex(v, sd.max_x - f.vertex(v));
            for (VertexId v : sd.y) r.coloring.set_vertex(v, f.vertex(v));
            flipped_edges();
            r.klass = ColorClass::EdgeMagic;
            r.constant = 2 * q + sd.max_x;
            break;
    }
    detail::verify_claim(g, r);
    if (!r.verified)
        throw std::logic_error("odd_equivalence_transform: output failed self-verification");
    // every output keeps the odd edge set
    if (!odd_edge_exact(g, r.coloring))
        throw std::logic_error("odd_equivalence_transform: edge set is not the odd range");
    return r;
}

struct TwinPair {
    Graph graph;
    TotalColoring coloring;
};

/// Isomorphic copy with vertex colors shifted +1 and edge colors kept; pairs
/// with the input as a graceful-difference twin.
inline TwinPair twin_from(const Graph& g, const TotalColoring& f) {
    MagicCheck in = check_w_magic(g, f, MagicKind::GracefulDifference);
    if (!in.valid || !in.certificate.is_odd_edge)
        throw std::invalid_argument("twin_from: input is not an odd-edge graceful-difference coloring");
    const Color q = static_cast<Color>(g.edge_count());
    for (VertexId v : g.vertices()) {
        Color c = f.vertex(v);
        if (c < 0 || c > 2 * q - 1)
            throw std::invalid_argument("twin_from: vertex colors must lie in [0,2q-1]");
    }
    TwinPair out;
    out.graph = g;
    for (VertexId v : g.vertices()) out.coloring.set_vertex(v, f.vertex(v) + 1);
    for (const Edge& e : g.edges()) out.coloring.set_edge(e, f.edge(e));
    return out;
}

}  // namespace topocode
