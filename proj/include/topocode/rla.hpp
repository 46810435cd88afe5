#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "topocode/coloring.hpp"
#include "topocode/graph.hpp"
#include "topocode/validate.hpp"

namespace topocode {

/// 64-bit linear congruential generator (Knuth MMIX constants). Fixed here so
/// seeded runs reproduce bit-identically across platforms.
class Lcg64 {
public:
    explicit Lcg64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
        return state_;
    }

private:
    std::uint64_t state_;
};

template <typename T>
void seeded_shuffle(std::vector<T>& items, std::uint64_t seed) {
    Lcg64 rng(seed);
    for (std::size_t i = items.size(); i > 1; --i)
        std::swap(items[i - 1], items[rng.next() % i]);
}

struct LeafOrder {
    enum class Mode { Ascending, Descending, Random };
    Mode mode = Mode::Ascending;
    std::uint64_t seed = 0;

    static LeafOrder ascending() { return {Mode::Ascending, 0}; }
    static LeafOrder descending() { return {Mode::Descending, 0}; }
    static LeafOrder random(std::uint64_t seed) { return {Mode::Random, seed}; }
};

struct rla_underflow_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RlaResult {
    Graph graph;
    TotalColoring coloring;
    Color constant_before = 0;
    Color constant_after = 0;
    std::vector<Edge> added_leaf_edges;  // in the order their colors were assigned
    std::string note;
};

namespace detail {

using Attachment = std::pair<VertexId, VertexId>;  // (anchor, fresh leaf id)

inline std::vector<Attachment> attachments_from_plan(const Graph& g, const LeafPlan& plan) {
    for (const auto& [v, c] : plan.counts)
        if (!g.has_vertex(v))
            throw std::invalid_argument("leaf plan names unknown vertex " + std::to_string(v));
    std::vector<Attachment> out;
    VertexId next = g.vertices().empty() ? 0 : *g.vertices().rbegin() + 1;
    for (const auto& [v, c] : plan.counts) {
        if (c < 0) throw std::invalid_argument("negative leaf count");
        for (int k = 0; k < c; ++k) out.emplace_back(v, next++);
    }
    return out;
}

inline void self_check(const Graph& g, const TotalColoring& c, MagicKind kind, Color expected,
                       const char* who) {
    MagicCheck chk = check_w_magic(g, c, kind);
    if (!chk.valid || chk.certificate.constant != expected || !chk.certificate.is_odd_edge)
        throw std::logic_error(std::string(who) + ": output failed self-verification (" +
                               (chk.valid ? "constant or edge set off" : chk.reason) + ")");
}

/// Continuous-round core. Leaf edges may reuse caller-chosen ids so stripped
/// layers can be re-attached in place.
inline RlaResult rla_continuous_attach(const Graph& g, const TotalColoring& f,
                                       std::vector<Attachment> leaf_edges, MagicKind kind,
                                       LeafOrder order) {
    if (g.edge_count() < 1) throw std::invalid_argument("rla: graph has no edges");
    if (!g.connected()) throw std::invalid_argument("rla: graph is disconnected");
    f.require_total(g);
    if (!odd_edge_exact(g, f))
        throw std::invalid_argument("rla: input edge colors are not exactly the odd range");
    auto lambda = uniform_magic_constant(g, f, kind, nullptr, nullptr);
    if (!lambda) throw std::invalid_argument("rla: input violates the kind equation");
    const Color q = static_cast<Color>(g.edge_count());
    const Color m = static_cast<Color>(leaf_edges.size());
    if (m < 1) throw std::invalid_argument("rla: at least one leaf required");
    for (const auto& [anchor, leaf] : leaf_edges) {
        if (!g.has_vertex(anchor)) throw std::invalid_argument("rla: unknown anchor vertex");
        if (g.has_vertex(leaf)) throw std::invalid_argument("rla: leaf id already in use");
    }

    // vertices ranked by (color, id); bundles follow that rank
    std::vector<VertexId> by_color(g.vertices().begin(), g.vertices().end());
    std::sort(by_color.begin(), by_color.end(), [&](VertexId a, VertexId b) {
        return std::make_pair(f.vertex(a), a) < std::make_pair(f.vertex(b), b);
    });
    std::map<VertexId, int> rank;
    for (std::size_t i = 0; i < by_color.size(); ++i) rank[by_color[i]] = static_cast<int>(i);

    std::sort(leaf_edges.begin(), leaf_edges.end(), [&](const Attachment& a, const Attachment& b) {
        return std::make_pair(rank[a.first], a.second) < std::make_pair(rank[b.first], b.second);
    });
    if (order.mode == LeafOrder::Mode::Descending) {
        std::sort(leaf_edges.begin(), leaf_edges.end(),
                  [&](const Attachment& a, const Attachment& b) {
                      return std::make_pair(-rank[a.first], a.second) <
                             std::make_pair(-rank[b.first], b.second);
                  });
    } else if (order.mode == LeafOrder::Mode::Random) {
        seeded_shuffle(leaf_edges, order.seed);
    }

    const bool high_range =
        kind == MagicKind::GracefulDifference || kind == MagicKind::FelicitousDifference;
    RlaResult out;
    out.constant_before = *lambda;
    out.graph = g;
    out.coloring = f;
    if (!high_range) {
        for (const Edge& e : g.edges()) out.coloring.set_edge(e, f.edge(e) + 2 * m);
        out.constant_after = *lambda + 2 * m;
    } else {
        out.constant_after = *lambda;
    }
    for (std::size_t j = 0; j < leaf_edges.size(); ++j) {
        auto [anchor, leaf] = leaf_edges[j];
        Color ec = high_range ? (2 * q - 1) + 2 * static_cast<Color>(j + 1)
                              : 2 * static_cast<Color>(j) + 1;
        Color wc = 0;
        switch (kind) {
            case MagicKind::GracefulDifference: wc = *lambda + f.vertex(anchor) + ec; break;
            case MagicKind::FelicitousDifference: wc = *lambda + ec - f.vertex(anchor); break;
            case MagicKind::EdgeMagic: wc = out.constant_after - f.vertex(anchor) - ec; break;
            case MagicKind::EdgeDifference: wc = out.constant_after + f.vertex(anchor) - ec; break;
        }
        if (wc < 0)
            throw rla_underflow_error("rla: leaf vertex color would be negative at vertex " +
                                      std::to_string(anchor));
        out.graph.add_edge(anchor, leaf);
        out.coloring.set_vertex(leaf, wc);
        out.coloring.set_edge(anchor, leaf, ec);
        out.added_leaf_edges.push_back(make_edge(anchor, leaf));
    }
    self_check(out.graph, out.coloring, kind, out.constant_after, "rla_continuous");
    return out;
}

}  // namespace detail

/// Single-round leaf adding on a set-ordered odd-edge magic labeling. Leaf
/// edges take {1,...,2m-1} in the per-kind vertex order, core edges shift by
/// 2m, and the constant moves to |N-2m| (graceful-difference) or N+2m.
inline RlaResult rla_single(const Graph& g, const TotalColoring& f, const LeafPlan& plan,
                            MagicKind kind) {
    if (g.edge_count() < 1) throw std::invalid_argument("rla_single: graph has no edges");
    if (!g.connected()) throw std::invalid_argument("rla_single: graph is disconnected");
    f.require_total(g);
    if (!all_vertex_colors_distinct(g, f))
        throw std::invalid_argument("rla_single: input must be a labeling (distinct vertex colors)");
    if (!odd_edge_exact(g, f))
        throw std::invalid_argument("rla_single: input edge colors are not exactly the odd range");
    auto view = set_ordered_bipartition(g, f);
    if (!view) throw std::invalid_argument("rla_single: input is not set-ordered");
    auto constant = detail::uniform_magic_constant(g, f, kind, nullptr, nullptr);
    if (!constant) throw std::invalid_argument("rla_single: input violates the kind equation");
    const Color n0 = *constant;
    const Color q = static_cast<Color>(g.edge_count());

    if (kind == MagicKind::GracefulDifference) {
        // the construction needs f(y) - f(x) >= f(xy) >= 1 on every edge
        std::set<VertexId> yside(view->y_side.begin(), view->y_side.end());
        for (const Edge& e : g.edges()) {
            VertexId yv = yside.count(e.second) ? e.second : e.first;
            VertexId xv = yv == e.second ? e.first : e.second;
            if (f.edge(e) < 1 || f.vertex(yv) - f.vertex(xv) < f.edge(e))
                throw std::invalid_argument(
                    "rla_single: graceful-difference round needs f(y)-f(x) >= f(xy) >= 1");
        }
    }
    if (kind == MagicKind::FelicitousDifference) {
        for (const Edge& e : g.edges())
            if (f.vertex(e.first) + f.vertex(e.second) - f.edge(e) < 0)
                throw std::invalid_argument(
                    "rla_single: felicitous-difference round needs f(x)+f(y) >= f(xy)");
    }

    auto attachments = detail::attachments_from_plan(g, plan);
    const Color m = static_cast<Color>(attachments.size());
    if (m < 1) throw std::invalid_argument("rla_single: at least one leaf required (m >= 1)");

    std::map<VertexId, std::vector<VertexId>> bundle;  // anchor -> fresh leaves ascending
    for (const auto& [anchor, leaf] : attachments) bundle[anchor].push_back(leaf);

    // per-kind coloring order of the leaf edges
    std::vector<detail::Attachment> ordered;
    auto emit_side = [&](const std::vector<VertexId>& side, bool reversed) {
        std::vector<VertexId> vs = side;
        if (reversed) std::reverse(vs.begin(), vs.end());
        for (VertexId v : vs)
            for (VertexId leaf : bundle[v]) ordered.emplace_back(v, leaf);
    };
    switch (kind) {
        case MagicKind::GracefulDifference:
        case MagicKind::EdgeMagic:
            emit_side(view->y_side, true);   // y_t downward
            emit_side(view->x_side, true);   // then x_s downward
            break;
        case MagicKind::EdgeDifference:
            emit_side(view->x_side, false);  // x_1 upward
            emit_side(view->y_side, false);
            break;
        case MagicKind::FelicitousDifference:
            emit_side(view->x_side, false);  // x_1 upward
            emit_side(view->y_side, true);   // then y_t downward
            break;
    }

    RlaResult out;
    out.constant_before = n0;
    out.constant_after =
        kind == MagicKind::GracefulDifference ? std::llabs(n0 - 2 * m) : n0 + 2 * m;
    out.graph = g;
    for (VertexId v : g.vertices()) {
        Color c = f.vertex(v);
        out.coloring.set_vertex(v, kind == MagicKind::FelicitousDifference ? c + 2 * m : c);
    }
    for (const Edge& e : g.edges()) out.coloring.set_edge(e, f.edge(e) + 2 * m);

    for (std::size_t j = 0; j < ordered.size(); ++j) {
        auto [anchor, leaf] = ordered[j];
        Color ec = 2 * static_cast<Color>(j) + 1;
        Color wc = 0;
        switch (kind) {
            case MagicKind::GracefulDifference: wc = out.constant_after + f.vertex(anchor) + ec; break;
            case MagicKind::EdgeDifference: wc = out.constant_after + f.vertex(anchor) - ec; break;
            case MagicKind::EdgeMagic: wc = out.constant_after - f.vertex(anchor) - ec; break;
            case MagicKind::FelicitousDifference: wc = n0 + ec - f.vertex(anchor); break;
        }
        if (wc < 0)
            throw rla_underflow_error("rla_single: leaf vertex color would be negative at vertex " +
                                      std::to_string(anchor));
        out.graph.add_edge(anchor, leaf);
        out.coloring.set_vertex(leaf, wc);
        out.coloring.set_edge(anchor, leaf, ec);
        out.added_leaf_edges.push_back(make_edge(anchor, leaf));
    }
    detail::self_check(out.graph, out.coloring, kind, out.constant_after, "rla_single");
    return out;
}

/// Continuous-round leaf adding; set-ordered is not required. Edge-magic and
/// edge-difference constants grow by 2m; graceful-difference and
/// felicitous-difference constants are preserved, their leaf edges taking the
/// high odd range above 2q-1.
inline RlaResult rla_continuous(const Graph& g, const TotalColoring& f, const LeafPlan& plan,
                                MagicKind kind, LeafOrder order = LeafOrder::ascending()) {
    return detail::rla_continuous_attach(g, f, detail::attachments_from_plan(g, plan), kind,
                                         order);
}

struct TreeColoring {
    TotalColoring coloring;
    Color constant = 0;
    MagicKind kind = MagicKind::GracefulDifference;
};

namespace detail {

inline bool is_star(const Graph& g) {
    if (g.vertex_count() <= 2) return true;
    int big = 0;
    for (VertexId v : g.vertices())
        if (g.degree(v) >= 2) ++big;
    return big <= 1;
}

}  // namespace detail

/// Colors any tree with >= 1 edge for the requested kind: strip leaves down to
/// a star, color the star in closed form, then re-add each stripped layer as a
/// continuous round.
inline TreeColoring color_tree(const Graph& t, MagicKind kind) {
    if (!t.is_tree()) throw std::invalid_argument("color_tree: input is not a tree");
    if (t.edge_count() < 1) throw std::invalid_argument("color_tree: tree has no edges");

    std::vector<std::map<VertexId, VertexId>> layers;  // leaf -> anchor per stripped layer
    Graph core = t;
    while (!detail::is_star(core)) {
        StripResult s = strip_leaves(core);
        layers.push_back(s.removed);
        core = s.graph;
    }

    // closed-form star coloring: center 0, edge j gets 2j-1, leaf j gets 2j-1
    // (difference-preserving kinds) or (2q-1)-(2j-1) (shifting kinds)
    const Color nq = static_cast<Color>(core.edge_count());
    VertexId center = *core.vertices().begin();
    for (VertexId v : core.vertices())
        if (core.degree(v) >= 2) center = v;
    TotalColoring coloring;
    coloring.set_vertex(center, 0);
    Color j = 0;
    const bool preserve =
        kind == MagicKind::GracefulDifference || kind == MagicKind::FelicitousDifference;
    for (const Edge& e : core.edges()) {
        VertexId leaf = e.first == center ? e.second : e.first;
        ++j;
        coloring.set_edge(e, 2 * j - 1);
        coloring.set_vertex(leaf, preserve ? 2 * j - 1 : (2 * nq - 1) - (2 * j - 1));
    }
    Color constant = preserve ? 0 : 2 * nq - 1;

    Graph current = core;
    for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
        std::vector<detail::Attachment> attach;
        for (const auto& [leaf, anchor] : *it) attach.emplace_back(anchor, leaf);
        std::sort(attach.begin(), attach.end(),
                  [](const detail::Attachment& a, const detail::Attachment& b) {
                      return a.second < b.second;
                  });
        RlaResult round =
            detail::rla_continuous_attach(current, coloring, attach, kind, LeafOrder::ascending());
        current = round.graph;
        coloring = round.coloring;
        constant = round.constant_after;
    }
    detail::self_check(current, coloring, kind, constant, "color_tree");
    return TreeColoring{coloring, constant, kind};
}

}  // namespace topocode
