#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "oracle_helpers.hpp"
#include "topocode/caterpillar.hpp"
#include "topocode/rla.hpp"

using namespace topocode;

namespace {

const MagicKind kAllKinds[] = {MagicKind::EdgeMagic, MagicKind::EdgeDifference,
                               MagicKind::FelicitousDifference, MagicKind::GracefulDifference};

std::pair<Graph, TotalColoring> labeled_input(const CaterpillarSpec& spec, MagicKind kind) {
    LabeledCaterpillar lab = odd_graceful_subdivision(spec);
    TransformResult r = odd_equivalence_transform(lab.graph, lab.coloring, kind);
    return {lab.graph, r.coloring};
}

bool odd_range_exact(const Graph& g, const TotalColoring& c) { return odd_edge_exact(g, c); }

}  // namespace

TEST_CASE("single round, graceful-difference worked example") {
    Graph g;
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    TotalColoring f;
    f.set_vertex(0, 3);
    f.set_vertex(1, 0);
    f.set_vertex(2, 1);
    f.set_edge(0, 1, 3);
    f.set_edge(1, 2, 1);
    LeafPlan plan;
    plan.counts[0] = 1;
    RlaResult r = rla_single(g, f, plan, MagicKind::GracefulDifference);
    REQUIRE(r.constant_before == 0);
    REQUIRE(r.constant_after == 2);  // |0 - 2m|
    REQUIRE(r.added_leaf_edges.size() == 1);
    Edge leaf = r.added_leaf_edges.front();
    REQUIRE(r.coloring.edge(leaf) == 1);
    REQUIRE(r.coloring.edge(0, 1) == 5);
    REQUIRE(r.coloring.edge(1, 2) == 3);
    VertexId w = leaf.first == 0 ? leaf.second : leaf.first;
    REQUIRE(r.coloring.vertex(w) == 6);  // N* + f(y) + f*(e) = 2+3+1
    MagicCheck chk = check_w_magic(r.graph, r.coloring, MagicKind::GracefulDifference);
    REQUIRE(chk.valid);
    REQUIRE(chk.certificate.constant == 2);
    REQUIRE(chk.certificate.is_odd_edge);
}

TEST_CASE("single round, edge-magic worked example") {
    Graph g;
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    TotalColoring f;
    f.set_vertex(0, 1);
    f.set_vertex(1, 0);
    f.set_vertex(2, 3);
    f.set_edge(0, 1, 3);
    f.set_edge(1, 2, 1);
    LeafPlan plan;
    plan.counts[2] = 1;
    RlaResult r = rla_single(g, f, plan, MagicKind::EdgeMagic);
    REQUIRE(r.constant_before == 4);
    REQUIRE(r.constant_after == 6);  // N + 2m
    Edge leaf = r.added_leaf_edges.front();
    REQUIRE(r.coloring.edge(leaf) == 1);
    REQUIRE(r.coloring.edge(0, 1) == 5);
    REQUIRE(r.coloring.edge(1, 2) == 3);
    VertexId w = leaf.first == 2 ? leaf.second : leaf.first;
    REQUIRE(r.coloring.vertex(w) == 2);  // N* - f(y) - f*(e) = 6-3-1
    REQUIRE(odd_range_exact(r.graph, r.coloring));
}

TEST_CASE("single round rejects an empty plan") {
    auto [g, f] = labeled_input(CaterpillarSpec{{1, 1}}, MagicKind::EdgeMagic);
    LeafPlan plan;
    for (MagicKind kind : kAllKinds)
        REQUIRE_THROWS_AS(rla_single(g, f, plan, kind), std::invalid_argument);
}

TEST_CASE("single round property suite across kinds") {
    Lcg64 rng(2024);
    int done = 0;
    while (done < 120) {
        CaterpillarSpec spec = oracle::random_caterpillar_spec(5, 8, rng);
        MagicKind kind = kAllKinds[rng.next() % 4];
        auto [g, f] = labeled_input(spec, kind);
        LeafPlan plan;
        std::vector<VertexId> verts(g.vertices().begin(), g.vertices().end());
        for (VertexId v : verts)
            if (rng.next() % 3 == 0) plan.counts[v] = 1 + static_cast<int>(rng.next() % 3);
        if (plan.total() == 0 || plan.total() > 15) continue;
        const Color m = plan.total();
        const Color q = static_cast<Color>(g.edge_count());
        RlaResult r;
        try {
            r = rla_single(g, f, plan, kind);
        } catch (const rla_underflow_error&) {
            continue;  // reported error path; resample
        }
        // validator pass with the predicted constant
        MagicCheck chk = check_w_magic(r.graph, r.coloring, kind);
        REQUIRE(chk.valid);
        Color expect = kind == MagicKind::GracefulDifference
                           ? std::llabs(r.constant_before - 2 * m)
                           : r.constant_before + 2 * m;
        REQUIRE(chk.certificate.constant == expect);
        // edge set exactly [1, 2(q+m)-1] odd
        REQUIRE(chk.certificate.is_odd_edge);
        REQUIRE(r.graph.edge_count() == static_cast<std::size_t>(q + m));
        // core vertices unchanged (modulo the documented shift for the
        // felicitous-difference round), core edges shifted by exactly 2m
        for (VertexId v : verts) {
            Color shift = kind == MagicKind::FelicitousDifference ? 2 * m : 0;
            REQUIRE(r.coloring.vertex(v) == f.vertex(v) + shift);
        }
        for (const Edge& e : g.edges()) REQUIRE(r.coloring.edge(e) == f.edge(e) + 2 * m);
        ++done;
    }
}

TEST_CASE("continuous round, graceful-difference worked example on K_2") {
    Graph g;
    g.add_edge(0, 1);
    TotalColoring f;
    f.set_vertex(0, 0);
    f.set_vertex(1, 1);
    f.set_edge(0, 1, 1);
    LeafPlan plan;
    plan.counts[1] = 1;
    RlaResult r = rla_continuous(g, f, plan, MagicKind::GracefulDifference);
    REQUIRE(r.constant_after == 0);
    Edge leaf = r.added_leaf_edges.front();
    REQUIRE(r.coloring.edge(leaf) == 3);  // high odd range
    VertexId w = leaf.first == 1 ? leaf.second : leaf.first;
    REQUIRE(r.coloring.vertex(w) == 4);  // lambda + f(u) + e'
    std::set<Color> edges;
    for (const Edge& e : r.graph.edges()) edges.insert(r.coloring.edge(e));
    REQUIRE(edges == std::set<Color>{1, 3});
}

TEST_CASE("continuous rounds shift or preserve constants per kind") {
    Lcg64 rng(5150);
    for (MagicKind kind : kAllKinds) {
        auto [g, f] = labeled_input(CaterpillarSpec{{2, 1, 2}}, kind);
        Graph cur = g;
        TotalColoring col = f;
        Color constant = check_w_magic(cur, col, kind).certificate.constant;
        for (int round = 0; round < 3; ++round) {
            LeafPlan plan;
            std::vector<VertexId> verts(cur.vertices().begin(), cur.vertices().end());
            plan.counts[verts[rng.next() % verts.size()]] = 1 + static_cast<int>(rng.next() % 3);
            plan.counts[verts[rng.next() % verts.size()]] += 1;
            const Color m = plan.total();
            RlaResult r = rla_continuous(cur, col, plan, kind, LeafOrder::ascending());
            if (kind == MagicKind::EdgeMagic || kind == MagicKind::EdgeDifference)
                REQUIRE(r.constant_after == constant + 2 * m);
            else
                REQUIRE(r.constant_after == constant);
            // vertex-color sets intersect round over round (core kept)
            for (VertexId v : verts) REQUIRE(r.coloring.vertex(v) == col.vertex(v));
            cur = r.graph;
            col = r.coloring;
            constant = r.constant_after;
            REQUIRE(odd_range_exact(cur, col));
        }
    }
}

TEST_CASE("all leaf orders are valid and the seed fixes the outcome") {
    Lcg64 rng(31337);
    for (MagicKind kind : kAllKinds) {
        auto [g, f] = labeled_input(CaterpillarSpec{{1, 2}}, kind);
        LeafPlan plan;
        plan.counts[0] = 2;
        plan.counts[1] = 1;
        for (LeafOrder order : {LeafOrder::ascending(), LeafOrder::descending(),
                                LeafOrder::random(7), LeafOrder::random(8)}) {
            RlaResult r = rla_continuous(g, f, plan, kind, order);
            REQUIRE(check_w_magic(r.graph, r.coloring, kind).valid);
            REQUIRE(odd_range_exact(r.graph, r.coloring));
        }
        // determinism: identical seeds give identical colorings
        RlaResult a = rla_continuous(g, f, plan, kind, LeafOrder::random(99));
        RlaResult b = rla_continuous(g, f, plan, kind, LeafOrder::random(99));
        REQUIRE(a.coloring == b.coloring);
        REQUIRE(a.added_leaf_edges == b.added_leaf_edges);
    }
    (void)rng;
}

TEST_CASE("random orders stay valid across many seeds") {
    Lcg64 rng(777);
    for (int t = 0; t < 30; ++t) {
        MagicKind kind = kAllKinds[rng.next() % 4];
        CaterpillarSpec spec = oracle::random_caterpillar_spec(4, 6, rng);
        auto [g, f] = labeled_input(spec, kind);
        LeafPlan plan;
        std::vector<VertexId> verts(g.vertices().begin(), g.vertices().end());
        plan.counts[verts[rng.next() % verts.size()]] = 1 + static_cast<int>(rng.next() % 4);
        RlaResult r = rla_continuous(g, f, plan, kind, LeafOrder::random(rng.next()));
        REQUIRE(check_w_magic(r.graph, r.coloring, kind).valid);
        REQUIRE(odd_range_exact(r.graph, r.coloring));
    }
}

TEST_CASE("star coloring matches the closed form") {
    Graph star;
    for (int v = 1; v <= 5; ++v) star.add_edge(0, v);
    TreeColoring tc = color_tree(star, MagicKind::GracefulDifference);
    REQUIRE(tc.constant == 0);
    REQUIRE(tc.coloring.vertex(0) == 0);
    std::set<Color> leaf_colors;
    for (int v = 1; v <= 5; ++v) leaf_colors.insert(tc.coloring.vertex(v));
    REQUIRE(leaf_colors == std::set<Color>{1, 3, 5, 7, 9});
    for (const Edge& e : star.edges())
        REQUIRE(tc.coloring.edge(e) == tc.coloring.vertex(e.first == 0 ? e.second : e.first));
}

TEST_CASE("path P_5 admits an edge-magic coloring via the pipeline") {
    Graph p;
    for (int v = 1; v < 5; ++v) p.add_edge(v - 1, v);
    TreeColoring tc = color_tree(p, MagicKind::EdgeMagic);
    MagicCheck chk = check_w_magic(p, tc.coloring, MagicKind::EdgeMagic);
    REQUIRE(chk.valid);
    REQUIRE(chk.certificate.constant == tc.constant);
    REQUIRE(chk.certificate.is_odd_edge);
}

TEST_CASE("color_tree covers all kinds over random trees") {
    Lcg64 rng(4242);
    for (int t = 0; t < 100; ++t) {
        int n = 2 + static_cast<int>(rng.next() % 17);  // up to 18 vertices
        Graph tree = oracle::random_tree(n, rng);
        for (MagicKind kind : kAllKinds) {
            TreeColoring tc = color_tree(tree, kind);
            MagicCheck chk = check_w_magic(tree, tc.coloring, kind);
            REQUIRE(chk.valid);
            REQUIRE(chk.certificate.constant == tc.constant);
            REQUIRE(chk.certificate.is_odd_edge);
        }
    }
}

TEST_CASE("color_tree rejects degenerate input") {
    Graph lone;
    lone.add_vertex(0);
    REQUIRE_THROWS_AS(color_tree(lone, MagicKind::EdgeMagic), std::invalid_argument);
    Graph cyc;
    cyc.add_edge(0, 1);
    cyc.add_edge(1, 2);
    cyc.add_edge(0, 2);
    REQUIRE_THROWS_AS(color_tree(cyc, MagicKind::EdgeMagic), std::invalid_argument);
}
