#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "topocode/coloring.hpp"
#include "topocode/graph.hpp"
#include "topocode/transform.hpp"
#include "topocode/validate.hpp"

namespace topocode {

/// Per-spine-vertex leaf counts m_1..m_n describing a caterpillar.
struct CaterpillarSpec {
    std::vector<int> leaf_counts;

    std::size_t spine_length() const { return leaf_counts.size(); }
    long long total_leaves() const {
        long long m = 0;
        for (int c : leaf_counts) {
            if (c < 0) throw std::invalid_argument("negative leaf count");
            m += c;
        }
        return m;
    }
};

struct BuiltCaterpillar {
    Graph graph;
    std::vector<VertexId> spine;                 // ids 0..n-1
    std::vector<std::vector<VertexId>> leaves;   // leaf ids per spine vertex, ascending
};

/// Spine ids 0..n-1, leaf ids following in spec order.
inline BuiltCaterpillar build_caterpillar(const CaterpillarSpec& spec) {
    const int n = static_cast<int>(spec.spine_length());
    if (n < 1) throw std::invalid_argument("empty caterpillar spec");
    BuiltCaterpillar out;
    for (int i = 0; i < n; ++i) {
        out.graph.add_vertex(i);
        out.spine.push_back(i);
    }
    for (int i = 0; i + 1 < n; ++i) out.graph.add_edge(i, i + 1);
    VertexId next = n;
    out.leaves.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < spec.leaf_counts[i]; ++k) {
            out.graph.add_edge(i, next);
            out.leaves[i].push_back(next);
            ++next;
        }
    }
    return out;
}

struct LabeledCaterpillar {
    Graph graph;
    TotalColoring coloring;
    std::vector<VertexId> spine;
};

namespace detail {

// token: spine vertex (negative, -(k+1) for spine index k) or leaf (original
// star index 1..m)
using Token = int;
inline Token spine_token(int k) { return -(k + 1); }
inline bool is_spine_token(Token t) { return t < 0; }

}  // namespace detail

/// Set-ordered odd-graceful labeling of the caterpillar described by `spec`,
/// built a spine vertex at a time: start from the star holding all leaves,
/// split one spine vertex off per round, shift the kept colors and recolor the
/// moved leaves. Every intermediate round is validated; a failing round aborts
/// with a diagnostic.
inline LabeledCaterpillar odd_graceful_subdivision(const CaterpillarSpec& spec) {
    const int n = static_cast<int>(spec.spine_length());
    if (n < 1) throw std::invalid_argument("empty caterpillar spec");
    const long long m = spec.total_leaves();
    if (m + n - 1 < 1) throw std::invalid_argument("caterpillar has no edges");

    // suffix leaf totals: s[i] = m - (m_1 + ... + m_i)
    std::vector<long long> suffix(n + 1);
    suffix[0] = m;
    for (int i = 1; i <= n; ++i) suffix[i] = suffix[i - 1] - spec.leaf_counts[i - 1];

    // final vertex ids
    std::vector<long long> prefix(n + 1, 0);  // leaves before spine i
    for (int i = 1; i <= n; ++i) prefix[i] = prefix[i - 1] + spec.leaf_counts[i - 1];
    auto final_id = [&](detail::Token t) -> VertexId {
        if (detail::is_spine_token(t)) return -(t + 1);
        long long j = t;  // original star index, 1..m
        int owner = 1;
        while (!(suffix[owner] < j && j <= suffix[owner - 1])) ++owner;
        return static_cast<VertexId>(n + prefix[owner - 1] + (j - suffix[owner] - 1));
    };

    // round 1: star with every leaf at u_1
    std::vector<detail::Token> xlist{detail::spine_token(0)};
    std::vector<detail::Token> ylist;
    for (long long j = m; j >= 1; --j) ylist.push_back(static_cast<int>(j));

    auto color_of = [&](long long q) {
        std::map<detail::Token, Color> col;
        for (std::size_t p = 0; p < xlist.size(); ++p) col[xlist[p]] = 2 * static_cast<Color>(p);
        for (std::size_t p = 0; p < ylist.size(); ++p)
            col[ylist[p]] = 2 * q - 1 - 2 * static_cast<Color>(p);
        return col;
    };

    auto round_graph = [&](int k) {
        // H_k: spine u_1..u_k; u_i owns (suffix[i], suffix[i-1]] for i<k,
        // u_k owns (0, suffix[k-1]]
        Graph g;
        for (int i = 0; i < k; ++i) g.add_vertex(i);
        for (int i = 0; i + 1 < k; ++i) g.add_edge(i, i + 1);
        for (long long j = 1; j <= m; ++j) {
            int owner = 1;
            while (owner < k && !(suffix[owner] < j && j <= suffix[owner - 1])) ++owner;
            g.add_edge(owner - 1, final_id(static_cast<int>(j)));
        }
        return g;
    };

    auto validate_round = [&](int k) {
        Graph g = round_graph(k);
        if (g.edge_count() == 0) return;  // single vertex, nothing to check yet
        auto col = color_of(static_cast<long long>(g.edge_count()));
        TotalColoring c;
        for (const auto& [t, cv] : col) c.set_vertex(final_id(t), cv);
        for (const Edge& e : g.edges())
            c.set_edge(e, std::llabs(c.vertex(e.first) - c.vertex(e.second)));
        GracefulReport rep = check_odd_graceful(g, c, true);
        if (!rep.valid || !rep.is_labeling)
            throw std::logic_error("odd_graceful_subdivision: round " + std::to_string(k) +
                                   " failed validation (" + rep.reason + ")");
    };

    validate_round(1);
    for (int k = 1; k < n; ++k) {
        const long long moved = suffix[k];  // leaf indices 1..moved migrate to u_{k+1}
        if (k % 2 == 1) {
            // u_k's bundle sits at the tail of the y list, lowest indices last
            ylist.resize(ylist.size() - static_cast<std::size_t>(moved));
            ylist.push_back(detail::spine_token(k));
            for (long long j = 1; j <= moved; ++j) xlist.push_back(static_cast<int>(j));
        } else {
            // u_k's bundle sits at the tail of the x list, ascending; drop its
            // first `moved` entries
            std::size_t bstart = xlist.size() - static_cast<std::size_t>(suffix[k - 1]);
            xlist.erase(xlist.begin() + bstart, xlist.begin() + bstart + moved);
            xlist.push_back(detail::spine_token(k));
            for (long long j = moved; j >= 1; --j) ylist.push_back(static_cast<int>(j));
        }
        validate_round(k + 1);
    }

    BuiltCaterpillar built = build_caterpillar(spec);
    auto col = color_of(static_cast<long long>(built.graph.edge_count()));
    LabeledCaterpillar out;
    out.graph = built.graph;
    out.spine = built.spine;
    for (const auto& [t, cv] : col) out.coloring.set_vertex(final_id(t), cv);
    for (const Edge& e : built.graph.edges())
        out.coloring.set_edge(e, std::llabs(out.coloring.vertex(e.first) -
                                            out.coloring.vertex(e.second)));
    GracefulReport rep = check_odd_graceful(out.graph, out.coloring, true);
    if (!rep.valid || !rep.is_labeling)
        throw std::logic_error("odd_graceful_subdivision: final labeling failed validation (" +
                               rep.reason + ")");
    return out;
}

/// Runs the subdivision labeling, then each of the four equivalence
/// transforms; all four certificates carry the predicted constants.
inline std::map<MagicKind, TransformResult> caterpillar_all_magic(const CaterpillarSpec& spec) {
    LabeledCaterpillar base = odd_graceful_subdivision(spec);
    std::map<MagicKind, TransformResult> out;
    for (MagicKind k : {MagicKind::EdgeMagic, MagicKind::EdgeDifference,
                        MagicKind::FelicitousDifference, MagicKind::GracefulDifference})
        out.emplace(k, odd_equivalence_transform(base.graph, base.coloring, k));
    return out;
}

/// Signed per-spine leaf counts of a caterpillar.
struct LeafTopologicalVector {
    std::vector<long long> entries;

    bool operator==(const LeafTopologicalVector& o) const { return entries == o.entries; }
};

inline LeafTopologicalVector leaf_topological_vector(const Graph& g,
                                                     const std::vector<int>* signs = nullptr) {
    LeafTopologicalVector v;
    v.entries = leaf_degree_sequence(g, signs).values;
    return v;
}

/// Integer linear combination of equal-length leaf topological vectors.
inline LeafTopologicalVector vector_lattice_combine(const std::vector<LeafTopologicalVector>& base,
                                                    const std::vector<long long>& coeffs) {
    if (base.size() != coeffs.size())
        throw std::invalid_argument("coefficient count mismatch");
    if (base.empty()) throw std::invalid_argument("empty base");
    long long coeff_sum = std::accumulate(coeffs.begin(), coeffs.end(), 0LL);
    if (coeff_sum < 1) throw std::invalid_argument("coefficient sum must be at least 1");
    std::size_t len = base.front().entries.size();
    LeafTopologicalVector out;
    out.entries.assign(len, 0);
    for (std::size_t k = 0; k < base.size(); ++k) {
        if (base[k].entries.size() != len) throw std::invalid_argument("vector length mismatch");
        for (std::size_t i = 0; i < len; ++i) out.entries[i] += coeffs[k] * base[k].entries[i];
    }
    return out;
}

}  // namespace topocode
