#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "oracle_helpers.hpp"
#include "topocode/graph.hpp"

using namespace topocode;

namespace {

Graph path(int n) {
    Graph g;
    g.add_vertex(0);
    for (int v = 1; v < n; ++v) g.add_edge(v - 1, v);
    return g;
}

Graph star(int m) {
    Graph g;
    g.add_vertex(0);
    for (int v = 1; v <= m; ++v) g.add_edge(0, v);
    return g;
}

Graph cycle(int n) {
    Graph g = path(n);
    g.add_edge(0, n - 1);
    return g;
}

}  // namespace

TEST_CASE("add_leaves extends a single edge into a path") {
    Graph g;
    g.add_edge(0, 1);
    LeafPlan plan;
    plan.counts[1] = 1;
    AddLeavesResult r = add_leaves(g, plan);
    REQUIRE(r.graph.vertex_count() == 3);
    REQUIRE(r.graph.edge_count() == 2);
    REQUIRE(r.leaf_edges == std::vector<Edge>{{1, 2}});
    REQUIRE(canonical_form(r.graph) == canonical_form(path(3)));
}

TEST_CASE("add_leaves builds a star from an isolated vertex") {
    Graph g;
    g.add_vertex(7);
    LeafPlan plan;
    plan.counts[7] = 5;
    AddLeavesResult r = add_leaves(g, plan);
    REQUIRE(canonical_form(r.graph) == canonical_form(star(5)));
}

TEST_CASE("add_leaves on a path yields the expected caterpillar") {
    Graph g = path(3);
    LeafPlan plan;
    plan.counts[0] = 2;
    plan.counts[2] = 1;
    AddLeavesResult r = add_leaves(g, plan);
    REQUIRE(is_caterpillar(r.graph));
    REQUIRE(leaf_degree_sequence(r.graph).values == std::vector<long long>{2, 0, 1});
}

TEST_CASE("add_leaves rejects unknown vertices") {
    Graph g = path(2);
    LeafPlan plan;
    plan.counts[9] = 1;
    REQUIRE_THROWS_AS(add_leaves(g, plan), std::invalid_argument);
}

TEST_CASE("strip_leaves on a star leaves the center and records the leaves") {
    StripResult r = strip_leaves(star(4));
    REQUIRE(r.graph.vertex_count() == 1);
    REQUIRE(r.removed.size() == 4);
    for (const auto& [leaf, anchor] : r.removed) REQUIRE(anchor == 0);
}

TEST_CASE("strip_leaves shortens a path by two") {
    StripResult r = strip_leaves(path(5));
    REQUIRE(canonical_form(r.graph) == canonical_form(path(3)));
}

TEST_CASE("a lobster strips to a caterpillar strips to a path") {
    // two rounds of leaf additions on a path, inverted by stripping
    Graph g = path(4);
    LeafPlan round1;
    round1.counts[0] = 2;
    round1.counts[2] = 1;
    Graph cat = add_leaves(g, round1).graph;
    REQUIRE(is_caterpillar(cat));
    LeafPlan round2;
    round2.counts[4] = 2;  // hang leaves off a first-round leaf
    Graph lob = add_leaves(cat, round2).graph;
    REQUIRE(is_lobster(lob));
    Graph once = strip_leaves(lob).graph;
    REQUIRE(is_caterpillar(once));
    Graph twice = strip_leaves(once).graph;
    bool path_like = true;
    for (VertexId v : twice.vertices()) path_like = path_like && twice.degree(v) <= 2;
    REQUIRE(path_like);
}

TEST_CASE("add then strip restores a leafless graph") {
    Lcg64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        Graph g = cycle(3 + static_cast<int>(rng.next() % 5));  // no leaves
        LeafPlan plan;
        for (VertexId v : g.vertices())
            if (rng.next() % 2) plan.counts[v] = 1 + static_cast<int>(rng.next() % 3);
        if (plan.counts.empty()) plan.counts[0] = 1;
        Graph grown = add_leaves(g, plan).graph;
        REQUIRE(strip_leaves(grown).graph == g);
    }
}

TEST_CASE("vertex_coincide across graphs") {
    Graph a = path(2);
    Graph b;
    b.add_edge(10, 11);
    Graph joined = vertex_coincide(a, 1, b, 10);
    REQUIRE(canonical_form(joined) == canonical_form(path(3)));

    Graph s2 = star(2);
    Graph s3;
    s3.add_edge(20, 21);
    s3.add_edge(20, 22);
    s3.add_edge(20, 23);
    Graph merged = vertex_coincide(s2, 0, s3, 20);
    REQUIRE(canonical_form(merged) == canonical_form(star(5)));
}

TEST_CASE("two 4-cycles coincided at a vertex") {
    Graph a = cycle(4);
    Graph b;
    b.add_edge(10, 11);
    b.add_edge(11, 12);
    b.add_edge(12, 13);
    b.add_edge(10, 13);
    Graph joined = vertex_coincide(a, 0, b, 10);
    REQUIRE(joined.vertex_count() == 7);
    REQUIRE(joined.edge_count() == 8);
    int cut_candidates = 0;
    for (VertexId v : joined.vertices())
        if (joined.degree(v) == 4) ++cut_candidates;
    REQUIRE(cut_candidates == 1);
}

TEST_CASE("within-graph coincide guards against multi-edges") {
    Graph g = path(3);  // 0-1-2; merging 0 and 2 would double the edge to 1
    REQUIRE_THROWS_AS(vertex_coincide(g, 0, 2), std::invalid_argument);
    Graph sq = cycle(4);
    REQUIRE_THROWS_AS(vertex_coincide(sq, 0, 2), std::invalid_argument);
    // merge of far-apart vertices in a long path is fine
    Graph p5 = path(5);
    Graph merged = vertex_coincide(p5, 0, 4);
    REQUIRE(merged.vertex_count() == 4);
    REQUIRE(merged.edge_count() == 4);
}

TEST_CASE("caterpillar and lobster recognition") {
    REQUIRE(is_caterpillar(path(1)));
    REQUIRE(is_caterpillar(path(2)));
    REQUIRE(is_caterpillar(path(7)));
    REQUIRE(spine(path(7)).size() == 7);  // a bare path is its own spine
    REQUIRE(is_caterpillar(star(6)));
    REQUIRE(spine(star(6)) == std::vector<VertexId>{0});

    // spider with three legs of length 2: not a caterpillar, is a lobster
    Graph spider;
    spider.add_edge(0, 1);
    spider.add_edge(1, 2);
    spider.add_edge(0, 3);
    spider.add_edge(3, 4);
    spider.add_edge(0, 5);
    spider.add_edge(5, 6);
    REQUIRE_FALSE(is_caterpillar(spider));
    REQUIRE(is_lobster(spider));
    REQUIRE_THROWS_AS(spine(spider), std::invalid_argument);

    // legs of length 3: not a lobster
    Graph spider3;
    for (int leg = 0; leg < 3; ++leg) {
        int base = 1 + 3 * leg;
        spider3.add_edge(0, base);
        spider3.add_edge(base, base + 1);
        spider3.add_edge(base + 1, base + 2);
    }
    REQUIRE_FALSE(is_caterpillar(spider3));
    REQUIRE_FALSE(is_lobster(spider3));

    REQUIRE_FALSE(is_caterpillar(cycle(4)));
    // every caterpillar is a lobster
    Lcg64 rng(5);
    for (int t = 0; t < 20; ++t) {
        CaterpillarSpec spec = oracle::random_caterpillar_spec(5, 8, rng);
        Graph g = build_caterpillar(spec).graph;
        REQUIRE(is_caterpillar(g));
        REQUIRE(is_lobster(g));
    }
}

TEST_CASE("leaf degree sequences") {
    CaterpillarSpec a1{{7, 3, 0, 3, 0, 6}};
    Graph g = build_caterpillar(a1).graph;
    REQUIRE(leaf_degree_sequence(g).values == std::vector<long long>{7, 3, 0, 3, 0, 6});

    REQUIRE(leaf_degree_sequence(path(6)).values == std::vector<long long>(6, 0));

    CaterpillarSpec b1{{1, 5, 8, 5, 8, 2}};
    Graph h = build_caterpillar(b1).graph;
    REQUIRE(leaf_degree_sequence(h).values == std::vector<long long>{1, 5, 8, 5, 8, 2});

    std::vector<int> signs{1, -1, 1, -1, 1, 1};
    REQUIRE(leaf_degree_sequence(g, &signs).values ==
            std::vector<long long>{7, -3, 0, -3, 0, 6});
}

TEST_CASE("M-leaf complement checks") {
    LeafDegreeSequence a1{{7, 3, 0, 3, 0, 6}};
    LeafDegreeSequence b1{{1, 5, 8, 5, 8, 2}};
    REQUIRE(uniform_leaf_complement(a1, b1, 8));
    REQUIRE_FALSE(uniform_leaf_complement(a1, b1, 9));

    // constant sequence against itself at twice the value
    LeafDegreeSequence flat{{3, 3, 3}};
    REQUIRE(uniform_leaf_complement(flat, flat, 6));
    LeafDegreeSequence slope{{1, 2, 3}};
    REQUIRE_FALSE(uniform_leaf_complement(slope, slope, 4));

    // permuted mode with signed sequences
    LeafDegreeSequence a2{{7, -3, 0, -3, 0, 6}};
    LeafDegreeSequence b2{{-2, 8, 5, 8, 5, -1}};
    auto witness = permuted_leaf_complement(b2, a2, 8);
    REQUIRE(witness.has_value());
    for (std::size_t i = 0; i < witness->size(); ++i)
        REQUIRE(std::abs(b2.values[i]) + std::abs(a2.values[(*witness)[i]]) == 8);
    REQUIRE_FALSE(permuted_leaf_complement(a2, b2, 7).has_value());

    LeafDegreeSequence wrong{{1, 2}};
    REQUIRE_THROWS_AS(uniform_leaf_complement(a1, wrong, 8), std::invalid_argument);
}

TEST_CASE("universal sequences and graphs") {
    LeafDegreeSequence h{{1, 0}};
    LeafDegreeSequence t{{0, 1}};
    REQUIRE(universal_sequence(h, t).values == std::vector<long long>{1, 1});

    LeafDegreeSequence a1{{7, 3, 0, 3, 0, 6}};
    LeafDegreeSequence b1{{1, 5, 8, 5, 8, 2}};
    REQUIRE(universal_sequence(a1, b1).values == std::vector<long long>(6, 8));

    LeafDegreeSequence abc{{4, 2, 5}};
    LeafDegreeSequence zero{{0, 0, 0}};
    REQUIRE(universal_sequence(abc, zero).values == abc.values);

    // graph-level: the combined caterpillar's sequence is the positional sum
    Graph ga = build_caterpillar(CaterpillarSpec{{7, 3, 0, 3, 0, 6}}).graph;
    Graph gb = build_caterpillar(CaterpillarSpec{{1, 5, 8, 5, 8, 2}}).graph;
    LeafDegreeSequence sum =
        universal_sequence(leaf_degree_sequence(ga), leaf_degree_sequence(gb));
    Graph gu = build_caterpillar(CaterpillarSpec{{8, 8, 8, 8, 8, 8}}).graph;
    REQUIRE(leaf_degree_sequence(gu).values == sum.values);
}

TEST_CASE("canonical form distinguishes and identifies") {
    REQUIRE(canonical_form(path(3)) == canonical_form(star(2)));
    REQUIRE(canonical_form(cycle(4)) != canonical_form(path(4)));

    // all graphs on 4 labeled vertices fall into 11 classes
    std::set<std::string> classes;
    for (int mask = 0; mask < (1 << 6); ++mask) {
        Graph g;
        for (int v = 0; v < 4; ++v) g.add_vertex(v);
        int bit = 0;
        for (int u = 0; u < 4; ++u)
            for (int v = u + 1; v < 4; ++v, ++bit)
                if (mask & (1 << bit)) g.add_edge(u, v);
        classes.insert(canonical_form(g));
    }
    REQUIRE(classes.size() == 11);

    REQUIRE_THROWS_AS(canonical_form(path(13)), std::invalid_argument);
}

TEST_CASE("canonical form counts all graph classes on 5 vertices") {
    std::set<std::string> classes;
    for (int mask = 0; mask < (1 << 10); ++mask) {
        Graph g;
        for (int v = 0; v < 5; ++v) g.add_vertex(v);
        int bit = 0;
        for (int u = 0; u < 5; ++u)
            for (int v = u + 1; v < 5; ++v, ++bit)
                if (mask & (1 << bit)) g.add_edge(u, v);
        classes.insert(canonical_form(g));
    }
    REQUIRE(classes.size() == 34);
}

TEST_CASE("canonical form agrees with exhaustive isomorphism testing") {
    Lcg64 rng(77);
    auto random_graph = [&](int n, int percent) {
        Graph g;
        for (int v = 0; v < n; ++v) g.add_vertex(v);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (static_cast<int>(rng.next() % 100) < percent) g.add_edge(u, v);
        return g;
    };
    for (int trial = 0; trial < 60; ++trial) {
        int n = 2 + static_cast<int>(rng.next() % 6);  // up to 7 vertices
        Graph a = random_graph(n, 40);
        Graph b = random_graph(n, 40);
        REQUIRE((canonical_form(a) == canonical_form(b)) == oracle::isomorphic_brute(a, b));
        // a relabeled copy must always match
        Graph c;
        for (VertexId v : a.vertices()) c.add_vertex(v + 100);
        for (const Edge& e : a.edges()) c.add_edge(e.first + 100, e.second + 100);
        REQUIRE(canonical_form(a) == canonical_form(c));
    }
}
