#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "oracle_helpers.hpp"
#include "topocode/caterpillar.hpp"
#include "topocode/io_json.hpp"
#include "topocode/rla.hpp"
#include "topocode/topcode.hpp"

using namespace topocode;

namespace {

TopcodeMatrix fixture_matrix(const std::string& name) {
    return io::matrix_from_text(io::read_file(std::string(FIXTURE_DIR) + "/" + name));
}

TopcodeMatrix normalized(TopcodeMatrix m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m.x_row[i] > m.y_row[i]) std::swap(m.x_row[i], m.y_row[i]);
    std::vector<std::size_t> idx(m.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(m.e_row[a], m.x_row[a], m.y_row[a]) <
               std::tie(m.e_row[b], m.x_row[b], m.y_row[b]);
    });
    TopcodeMatrix out;
    for (std::size_t i : idx) {
        out.x_row.push_back(m.x_row[i]);
        out.e_row.push_back(m.e_row[i]);
        out.y_row.push_back(m.y_row[i]);
    }
    return out;
}

}  // namespace

TEST_CASE("extraction of K_2") {
    Graph g;
    g.add_edge(0, 1);
    TotalColoring c;
    c.set_vertex(0, 0);
    c.set_vertex(1, 1);
    c.set_edge(0, 1, 1);
    TopcodeMatrix m = to_topcode_matrix(g, c);
    REQUIRE(m.x_row == std::vector<Color>{0});
    REQUIRE(m.e_row == std::vector<Color>{1});
    REQUIRE(m.y_row == std::vector<Color>{1});
    REQUIRE_FALSE(matrix_evaluated_relations(m).empty());
}

TEST_CASE("b1 fixture round-trips through its merged realization") {
    TopcodeMatrix b1 = fixture_matrix("b1_matrix.txt");
    auto [g, c] = realize_merged(b1);
    REQUIRE(g.vertex_count() == 9);  // nine distinct vertex colors
    REQUIRE(g.edge_count() == 10);
    REQUIRE(g.connected());
    GracefulReport rep = check_odd_graceful(g, c, false);
    REQUIRE(rep.valid);
    REQUIRE(rep.is_labeling);
    // re-extraction reproduces the fixture up to the smaller-endpoint-first
    // column normalization the extractor applies
    REQUIRE(to_topcode_matrix(g, c) == normalized(b1));
}

TEST_CASE("b10 fixture realizes as a forest and twins with b1") {
    TopcodeMatrix b1 = fixture_matrix("b1_matrix.txt");
    TopcodeMatrix b10 = fixture_matrix("b10_matrix.txt");
    auto [g1, c1] = realize_merged(b1);
    auto [g10, c10] = realize_merged(b10);
    REQUIRE_FALSE(g10.connected());  // the private side is a forest
    TwinReport twin = check_twin(g1, c1, g10, c10, CheckKind::OddGraceful);
    REQUIRE(twin.valid);
    REQUIRE(twin.perfect);
    std::set<Color> expected;
    for (Color v = 0; v <= 20; ++v) expected.insert(v);
    REQUIRE(twin.union_set == expected);
}

TEST_CASE("realize_matrix finds the unique K_2 realization") {
    TopcodeMatrix m;
    m.x_row = {0};
    m.e_row = {1};
    m.y_row = {1};
    auto all = realize_matrix(m);
    REQUIRE(all.size() == 1);
    REQUIRE(all.front().first.edge_count() == 1);
}

TEST_CASE("realize_matrix on the b1 fixture includes the nine-vertex form") {
    TopcodeMatrix b1 = fixture_matrix("b1_matrix.txt");
    auto all = realize_matrix(b1, 12);
    REQUIRE_FALSE(all.empty());
    bool has_nine = false;
    for (const auto& [g, c] : all) has_nine = has_nine || g.vertex_count() == 9;
    REQUIRE(has_nine);
    for (const auto& [g, c] : all) REQUIRE(to_topcode_matrix(g, c) == normalized(b1));
}

TEST_CASE("contradictory columns have no realization") {
    // both columns force an edge between the color-0 and color-2 vertices
    TopcodeMatrix m;
    m.x_row = {0, 0};
    m.e_row = {2, 2};
    m.y_row = {2, 2};
    REQUIRE(realize_matrix(m).empty());
}

TEST_CASE("realize then re-extract is a fixed point on small colorings") {
    Lcg64 rng(808);
    int done = 0;
    while (done < 25) {
        int n = 2 + static_cast<int>(rng.next() % 8);  // up to 8 edges
        Graph t = oracle::random_tree(n, rng);
        TreeColoring tc = color_tree(t, MagicKind::GracefulDifference);
        TopcodeMatrix m = to_topcode_matrix(t, tc.coloring);
        auto all = realize_matrix(m, 12);
        REQUIRE_FALSE(all.empty());
        bool found_self = false;
        for (const auto& [g, c] : all) {
            REQUIRE(to_topcode_matrix(g, c) == m);  // already normalized
            if (canonical_form_colored(g, c.vertex_colors, c.edge_colors) ==
                canonical_form_colored(t, tc.coloring.vertex_colors, tc.coloring.edge_colors))
                found_self = true;
        }
        REQUIRE(found_self);
        ++done;
    }
}

TEST_CASE("emit_string identity order and range checks") {
    TopcodeMatrix m;
    m.x_row = {0};
    m.e_row = {1};
    m.y_row = {1};
    NumberString s = emit_string(m, 0);
    REQUIRE(s.digits == "011");
    REQUIRE(s.duplicate_entries);  // the entry 1 appears twice
    REQUIRE_THROWS_AS(emit_string(m, 6), std::out_of_range);  // 3! = 6
    REQUIRE_THROWS_AS(emit_string(m, -1), std::out_of_range);
}

TEST_CASE("a 3x10 matrix owns 30 factorial orderings") {
    REQUIRE(factorial(30) == BigInt("265252859812191058636308480000000"));
    TopcodeMatrix b1 = fixture_matrix("b1_matrix.txt");
    REQUIRE(b1.size() == 10);
    // the last valid index is 30! - 1
    REQUIRE_NOTHROW(emit_string(b1, factorial(30) - 1));
    REQUIRE_THROWS_AS(emit_string(b1, factorial(30)), std::out_of_range);
}

TEST_CASE("permutations differing only on equal entries collide") {
    TopcodeMatrix m;
    m.x_row = {0};
    m.e_row = {1};
    m.y_row = {1};
    // orders (0,1,1): indices 0 (identity) and 1 (swap the equal tail) collide
    NumberString a = emit_string(m, 0);
    NumberString b = emit_string(m, 1);
    REQUIRE(a.digits == b.digits);
    REQUIRE(a.perm_index != b.perm_index);
    REQUIRE(a.duplicate_entries);

    TopcodeMatrix distinct;
    distinct.x_row = {0};
    distinct.e_row = {1};
    distinct.y_row = {2};
    std::set<std::string> outputs;
    for (int i = 0; i < 6; ++i) outputs.insert(emit_string(distinct, i).digits);
    REQUIRE(outputs.size() == 6);  // injective when entries are distinct
    REQUIRE_FALSE(emit_string(distinct, 0).duplicate_entries);
}

TEST_CASE("emit_string digit length is invariant under the permutation") {
    TopcodeMatrix b1 = fixture_matrix("b1_matrix.txt");
    std::size_t len = emit_string(b1, 0).digits.size();
    Lcg64 rng(15);
    for (int t = 0; t < 10; ++t) {
        BigInt idx = BigInt(rng.next()) % factorial(30);
        REQUIRE(emit_string(b1, idx).digits.size() == len);
    }
}

namespace {

AuthBundle b1_b10_bundle(const BigInt& rule) {
    AuthBundle b;
    TopcodeMatrix b1 = fixture_matrix("b1_matrix.txt");
    TopcodeMatrix b10 = fixture_matrix("b10_matrix.txt");
    auto [g1, c1] = realize_merged(b1);
    auto [g10, c10] = realize_merged(b10);
    b.public_graph = g1;
    b.public_coloring = c1;
    b.private_graph = g10;
    b.private_coloring = c10;
    b.kind = CheckKind::OddGraceful;
    b.rule = rule;
    return b;
}

}  // namespace

TEST_CASE("authentication accepts the fixture bundle and rejects tampering") {
    AuthBundle bundle = b1_b10_bundle(0);
    NumberString s_pub =
        emit_string(to_topcode_matrix(bundle.public_graph, bundle.public_coloring), bundle.rule);
    NumberString s_priv =
        emit_string(to_topcode_matrix(bundle.private_graph, bundle.private_coloring), bundle.rule);
    REQUIRE(authenticate(bundle, s_pub, s_priv).ok);

    // mismatched rules between the strings
    NumberString other =
        emit_string(to_topcode_matrix(bundle.public_graph, bundle.public_coloring), 1);
    REQUIRE_FALSE(authenticate(bundle, other, s_priv).ok);

    // every single-field tamper flips the verdict
    for (VertexId v : bundle.private_graph.vertices()) {
        AuthBundle t = bundle;
        t.private_coloring.set_vertex(v, t.private_coloring.vertex(v) + 1);
        REQUIRE_FALSE(authenticate(t, s_pub, s_priv).ok);
    }
    for (const Edge& e : bundle.private_graph.edges()) {
        AuthBundle t = bundle;
        t.private_coloring.set_edge(e, t.private_coloring.edge(e) + 1);
        REQUIRE_FALSE(authenticate(t, s_pub, s_priv).ok);
    }
    for (VertexId v : bundle.public_graph.vertices()) {
        AuthBundle t = bundle;
        t.public_coloring.set_vertex(v, t.public_coloring.vertex(v) + 1);
        REQUIRE_FALSE(authenticate(t, s_pub, s_priv).ok);
    }
    for (const Edge& e : bundle.public_graph.edges()) {
        AuthBundle t = bundle;
        t.public_coloring.set_edge(e, t.public_coloring.edge(e) + 1);
        REQUIRE_FALSE(authenticate(t, s_pub, s_priv).ok);
    }
    {
        AuthBundle t = bundle;
        t.rule += 1;
        REQUIRE_FALSE(authenticate(t, s_pub, s_priv).ok);
    }
}

TEST_CASE("vault round-trips byte-exactly") {
    AuthBundle bundle = b1_b10_bundle(12345);
    std::vector<std::uint8_t> plain;
    Lcg64 rng(2718);
    for (int i = 0; i < 4096; ++i) plain.push_back(static_cast<std::uint8_t>(rng.next() % 256));
    std::vector<std::uint8_t> vault = vault_encrypt(plain, bundle);
    std::vector<std::uint8_t> back =
        vault_decrypt(vault, bundle.private_graph, bundle.private_coloring, bundle.kind);
    REQUIRE(back == plain);

    // empty payload round-trips too
    std::vector<std::uint8_t> empty;
    REQUIRE(vault_decrypt(vault_encrypt(empty, bundle), bundle.private_graph,
                          bundle.private_coloring, bundle.kind) == empty);
}

TEST_CASE("vault refuses a wrong private coloring") {
    AuthBundle bundle = b1_b10_bundle(7);
    std::vector<std::uint8_t> plain{1, 2, 3, 4, 5};
    std::vector<std::uint8_t> vault = vault_encrypt(plain, bundle);
    TotalColoring wrong = bundle.private_coloring;
    wrong.set_vertex(*bundle.private_graph.vertices().begin(),
                     wrong.vertex(*bundle.private_graph.vertices().begin()) + 1);
    REQUIRE_THROWS_WITH(
        vault_decrypt(vault, bundle.private_graph, wrong, bundle.kind),
        Catch::Matchers::ContainsSubstring("authentication failure"));
}

TEST_CASE("vault detects a flipped digest byte") {
    AuthBundle bundle = b1_b10_bundle(7);
    std::vector<std::uint8_t> plain{9, 9, 9};
    std::vector<std::uint8_t> vault = vault_encrypt(plain, bundle);
    // digest sits right before the ciphertext
    std::size_t digest_at = vault.size() - plain.size() - 32;
    vault[digest_at] ^= 0x01;
    REQUIRE_THROWS_WITH(
        vault_decrypt(vault, bundle.private_graph, bundle.private_coloring, bundle.kind),
        Catch::Matchers::ContainsSubstring("digest mismatch"));
}

TEST_CASE("vault rejects malformed headers") {
    AuthBundle bundle = b1_b10_bundle(7);
    auto vault = vault_encrypt({1, 2, 3}, bundle);
    auto bad = vault;
    bad[0] = 'X';
    REQUIRE_THROWS_WITH(vault_decrypt(bad, bundle.private_graph, bundle.private_coloring,
                                      bundle.kind),
                        Catch::Matchers::ContainsSubstring("magic"));
    auto short_vault = std::vector<std::uint8_t>(vault.begin(), vault.begin() + 10);
    REQUIRE_THROWS_AS(vault_decrypt(short_vault, bundle.private_graph, bundle.private_coloring,
                                    bundle.kind),
                      std::invalid_argument);
}

TEST_CASE("matrix text and JSON forms parse to the same matrix") {
    TopcodeMatrix b1 = fixture_matrix("b1_matrix.txt");
    std::string text = io::matrix_to_text(b1);
    REQUIRE(io::matrix_from_string(text) == b1);
    std::string json_text = io::matrix_to_json(b1).dump();
    REQUIRE(io::matrix_from_string(json_text) == b1);
}
