#pragma once

#include <openssl/evp.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "topocode/coloring.hpp"
#include "topocode/graph.hpp"
#include "topocode/topcode_matrix.hpp"
#include "topocode/validate.hpp"

namespace topocode {

using BigInt = boost::multiprecision::cpp_int;

/// One column per edge as (smaller endpoint color, edge color, larger
/// endpoint color), columns sorted by edge color.
inline TopcodeMatrix to_topcode_matrix(const Graph& g, const TotalColoring& c) {
    c.require_total(g);
    std::vector<std::array<Color, 3>> cols;
    for (const Edge& e : g.edges()) {
        Color a = c.vertex(e.first), b = c.vertex(e.second);
        cols.push_back({std::min(a, b), c.edge(e), std::max(a, b)});
    }
    std::sort(cols.begin(), cols.end(), [](const auto& l, const auto& r) {
        return std::tie(l[1], l[0], l[2]) < std::tie(r[1], r[0], r[2]);
    });
    TopcodeMatrix m;
    for (const auto& col : cols) {
        m.x_row.push_back(col[0]);
        m.e_row.push_back(col[1]);
        m.y_row.push_back(col[2]);
    }
    return m;
}

/// Relations under which the matrix is evaluated (a column-wise e = theta(x,y)
/// exists): the graceful rule plus each magic kind with a shared constant.
inline std::vector<std::string> matrix_evaluated_relations(const TopcodeMatrix& m) {
    std::vector<std::string> out;
    if (matrix_is_graceful(m)) out.push_back("graceful");
    for (MagicKind k : {MagicKind::EdgeMagic, MagicKind::EdgeDifference,
                        MagicKind::FelicitousDifference, MagicKind::GracefulDifference}) {
        std::optional<Color> shared;
        bool ok = m.size() > 0;
        for (std::size_t i = 0; i < m.size() && ok; ++i) {
            Color v = magic_value(k, m.x_row[i], m.e_row[i], m.y_row[i]);
            if (!shared) shared = v;
            else if (*shared != v) ok = false;
        }
        if (ok) out.push_back(std::string(kind_name(k)) + "=" + std::to_string(*shared));
    }
    return out;
}

/// Maximal merge: one vertex per distinct color. Deterministic realization
/// used for fixtures; throws when same-colored merging breaks simplicity.
inline std::pair<Graph, TotalColoring> realize_merged(const TopcodeMatrix& m) {
    m.require_valid();
    if (m.size() == 0) throw std::invalid_argument("empty matrix");
    std::map<Color, VertexId> vertex_of;
    Graph g;
    TotalColoring c;
    VertexId next = 0;
    auto vertex_for = [&](Color col) {
        auto it = vertex_of.find(col);
        if (it != vertex_of.end()) return it->second;
        vertex_of[col] = next;
        g.add_vertex(next);
        c.set_vertex(next, col);
        return next++;
    };
    for (std::size_t i = 0; i < m.size(); ++i) {
        VertexId u = vertex_for(m.x_row[i]);
        VertexId v = vertex_for(m.y_row[i]);
        if (u == v) throw std::invalid_argument("column endpoints share a color; merge is a loop");
        if (g.has_edge(u, v)) throw std::invalid_argument("merged realization has a multi-edge");
        g.add_edge(u, v);
        c.set_edge(u, v, m.e_row[i]);
    }
    return {g, c};
}

namespace detail {

/// Set partitions of {0..n-1} as restricted growth strings.
inline void for_each_set_partition(int n, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> rgs(n, 0);
    std::function<void(int, int)> rec = [&](int i, int maxb) {
        if (i == n) {
            fn(rgs);
            return;
        }
        for (int b = 0; b <= maxb; ++b) {
            rgs[i] = b;
            rec(i + 1, std::max(maxb, b + 1));
        }
    };
    if (n == 0) fn(rgs);
    else rec(0, 0);
}

inline double bell_estimate(int n) {
    static const double bells[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570,
                                   4213597};
    if (n < 13) return bells[n];
    return 1e18;
}

}  // namespace detail

/// All non-isomorphic simple connected graphs (colored canonical form) whose
/// colorings reproduce the matrix, found by merging equal-colored column
/// endpoints in every consistent way. Set require_connected false to include
/// forests (a twin partner need not be connected).
inline std::vector<std::pair<Graph, TotalColoring>> realize_matrix(const TopcodeMatrix& m,
                                                                   int cap = 12,
                                                                   bool require_connected = true) {
    m.require_valid();
    if (cap > 12) throw std::invalid_argument("realize_matrix: cap exceeds 12");
    if (m.size() == 0) return {};
    const int q = static_cast<int>(m.size());

    // slots 0..2q-1: column i has x-slot 2i and y-slot 2i+1
    std::vector<Color> slot_color(2 * q);
    for (int i = 0; i < q; ++i) {
        slot_color[2 * i] = m.x_row[i];
        slot_color[2 * i + 1] = m.y_row[i];
    }
    std::map<Color, std::vector<int>> classes;
    for (int s = 0; s < 2 * q; ++s) classes[slot_color[s]].push_back(s);

    double combos = 1;
    for (const auto& [col, slots] : classes)
        combos *= detail::bell_estimate(static_cast<int>(slots.size()));
    if (combos > 5e6) throw std::runtime_error("realize_matrix: search space too large");

    std::vector<std::pair<Color, std::vector<int>>> class_list(classes.begin(), classes.end());
    std::vector<std::vector<int>> chosen(class_list.size());
    std::vector<std::pair<Graph, TotalColoring>> results;
    std::set<std::string> seen;

    std::function<void(std::size_t)> assemble = [&](std::size_t ci) {
        if (ci == class_list.size()) {
            // vertex per (class, block)
            std::map<std::pair<std::size_t, int>, VertexId> vid;
            VertexId next = 0;
            Graph g;
            TotalColoring c;
            std::vector<VertexId> slot_vertex(2 * q);
            for (std::size_t k = 0; k < class_list.size(); ++k) {
                for (std::size_t s = 0; s < class_list[k].second.size(); ++s) {
                    auto key = std::make_pair(k, chosen[k][s]);
                    if (!vid.count(key)) {
                        vid[key] = next;
                        g.add_vertex(next);
                        c.set_vertex(next, class_list[k].first);
                        ++next;
                    }
                    slot_vertex[class_list[k].second[s]] = vid[key];
                }
            }
            if (next > cap) return;
            for (int i = 0; i < q; ++i) {
                VertexId u = slot_vertex[2 * i], v = slot_vertex[2 * i + 1];
                if (u == v) return;           // loop
                if (g.has_edge(u, v)) return; // multi-edge
                g.add_edge(u, v);
                c.set_edge(u, v, m.e_row[i]);
            }
            if (require_connected && !g.connected()) return;
            std::string canon = canonical_form_colored(g, c.vertex_colors, c.edge_colors, 12);
            if (seen.insert(canon).second) results.emplace_back(std::move(g), std::move(c));
            return;
        }
        int sz = static_cast<int>(class_list[ci].second.size());
        detail::for_each_set_partition(sz, [&](const std::vector<int>& rgs) {
            chosen[ci] = rgs;
            assemble(ci + 1);
        });
    };
    assemble(0);
    return results;
}

inline BigInt factorial(long long n) {
    if (n < 0) throw std::invalid_argument("factorial of negative");
    BigInt f = 1;
    for (long long i = 2; i <= n; ++i) f *= i;
    return f;
}

/// Decimal digit string built from the matrix entries in a permuted order.
struct NumberString {
    std::string digits;
    BigInt perm_index;
    bool duplicate_entries = false;  // equal entries make distinct indices collide
};

/// Lehmer-code unranking of perm_index over the 3q entries (x row, then e row,
/// then y row), each entry printed base 10 without padding.
inline NumberString emit_string(const TopcodeMatrix& m, const BigInt& perm_index) {
    m.require_valid();
    const long long L = static_cast<long long>(3 * m.size());
    if (L == 0) throw std::invalid_argument("empty matrix");
    if (perm_index < 0 || perm_index >= factorial(L))
        throw std::out_of_range("permutation index out of range");
    std::vector<Color> flat;
    flat.insert(flat.end(), m.x_row.begin(), m.x_row.end());
    flat.insert(flat.end(), m.e_row.begin(), m.e_row.end());
    flat.insert(flat.end(), m.y_row.begin(), m.y_row.end());

    std::vector<Color> remaining = flat;
    NumberString out;
    out.perm_index = perm_index;
    BigInt idx = perm_index;
    for (long long i = 0; i < L; ++i) {
        BigInt f = factorial(L - 1 - i);
        BigInt d = idx / f;
        idx %= f;
        long long pos = d.convert_to<long long>();
        out.digits += std::to_string(remaining[pos]);
        remaining.erase(remaining.begin() + pos);
    }
    std::set<Color> uniq(flat.begin(), flat.end());
    out.duplicate_entries = uniq.size() != flat.size();
    return out;
}

inline std::array<std::uint8_t, 32> sha256_bytes(const std::string& data) {
    std::array<std::uint8_t, 32> out{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
        len != 32)
        throw std::runtime_error("digest computation failed");
    return out;
}

struct AuthBundle {
    Graph public_graph;
    TotalColoring public_coloring;
    Graph private_graph;
    TotalColoring private_coloring;
    CheckKind kind = CheckKind::OddGraceful;
    BigInt rule;  // shared permutation index
};

struct AuthVerdict {
    bool ok = false;
    std::string reason;
};

/// Topological authentication: the pair passes the twin check for the declared
/// kind, and both strings re-derive from their matrices under the one rule.
inline AuthVerdict authenticate(const AuthBundle& bundle, const NumberString& s_pub,
                                const NumberString& s_priv) {
    AuthVerdict v;
    TwinReport twin = check_twin(bundle.public_graph, bundle.public_coloring,
                                 bundle.private_graph, bundle.private_coloring, bundle.kind);
    if (!twin.valid) {
        v.reason = "twin check failed: " + twin.reason;
        return v;
    }
    if (s_pub.perm_index != bundle.rule || s_priv.perm_index != bundle.rule) {
        v.reason = "strings were not derived under the bundle rule";
        return v;
    }
    NumberString expect_pub =
        emit_string(to_topcode_matrix(bundle.public_graph, bundle.public_coloring), bundle.rule);
    if (expect_pub.digits != s_pub.digits) {
        v.reason = "public string does not re-derive";
        return v;
    }
    NumberString expect_priv =
        emit_string(to_topcode_matrix(bundle.private_graph, bundle.private_coloring), bundle.rule);
    if (expect_priv.digits != s_priv.digits) {
        v.reason = "private string does not re-derive";
        return v;
    }
    v.ok = true;
    return v;
}

// ---------------------------------------------------------------------------
// File vault: header stores the public matrix, the rule, and a digest of the
// keystream string; the private side gates decryption.
// ---------------------------------------------------------------------------

namespace detail {

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

inline std::uint32_t get_u32(const std::vector<std::uint8_t>& in, std::size_t& at) {
    if (at + 4 > in.size()) throw std::invalid_argument("vault header truncated");
    std::uint32_t v = (std::uint32_t(in[at]) << 24) | (std::uint32_t(in[at + 1]) << 16) |
                      (std::uint32_t(in[at + 2]) << 8) | std::uint32_t(in[at + 3]);
    at += 4;
    return v;
}

inline std::vector<std::uint8_t> big_to_bytes(const BigInt& v) {
    std::vector<std::uint8_t> out;
    BigInt x = v;
    if (x == 0) out.push_back(0);
    while (x > 0) {
        out.push_back(static_cast<std::uint8_t>(x & 0xff));
        x >>= 8;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

inline BigInt big_from_bytes(const std::vector<std::uint8_t>& bytes) {
    BigInt x = 0;
    for (std::uint8_t b : bytes) {
        x <<= 8;
        x += b;
    }
    return x;
}

/// digit d maps to the keystream byte (23 d + 7) mod 256
inline void xor_keystream(std::vector<std::uint8_t>& data, const std::string& digits) {
    if (digits.empty()) throw std::invalid_argument("empty keystream");
    for (std::size_t i = 0; i < data.size(); ++i) {
        int d = digits[i % digits.size()] - '0';
        data[i] ^= static_cast<std::uint8_t>((d * 23 + 7) % 256);
    }
}

/// Twin conditions between a public matrix and a presented private side.
inline void matrix_twin_or_throw(const TopcodeMatrix& pub, const Graph& priv_g,
                                 const TotalColoring& priv_c, CheckKind kind) {
    if (pub.size() != priv_g.edge_count())
        throw std::invalid_argument("authentication failure: edge counts differ");
    const Color q = static_cast<Color>(pub.size());
    if (!matrix_odd_edge_exact(pub))
        throw std::invalid_argument("authentication failure: public edge row is not the odd range");
    if (kind == CheckKind::OddGraceful) {
        if (!matrix_is_graceful(pub))
            throw std::invalid_argument("authentication failure: public matrix is not graceful");
    } else {
        MagicKind mk = kind == CheckKind::EdgeMagic            ? MagicKind::EdgeMagic
                       : kind == CheckKind::EdgeDifference     ? MagicKind::EdgeDifference
                       : kind == CheckKind::FelicitousDifference ? MagicKind::FelicitousDifference
                                                                 : MagicKind::GracefulDifference;
        std::optional<Color> shared;
        for (std::size_t i = 0; i < pub.size(); ++i) {
            Color v = magic_value(mk, pub.x_row[i], pub.e_row[i], pub.y_row[i]);
            if (!shared) shared = v;
            else if (*shared != v)
                throw std::invalid_argument("authentication failure: public columns disagree");
        }
    }
    std::string why;
    if (!twin_side_constant(priv_g, priv_c, kind, &why))
        throw std::invalid_argument("authentication failure: private side " + why);
    std::set<Color> uni = pub.vertex_entries();
    for (VertexId v : priv_g.vertices()) uni.insert(priv_c.vertex(v));
    for (Color c : uni)
        if (c < 0 || c > 2 * q)
            throw std::invalid_argument("authentication failure: vertex color union leaves [0,2q]");
}

}  // namespace detail

/// "TOPC" | version 1 | u32 q | 3q u32 entries | length-prefixed rule |
/// 32-byte digest of the keystream digits | ciphertext.
inline std::vector<std::uint8_t> vault_encrypt(const std::vector<std::uint8_t>& plain,
                                               const AuthBundle& bundle) {
    TwinReport twin = check_twin(bundle.public_graph, bundle.public_coloring,
                                 bundle.private_graph, bundle.private_coloring, bundle.kind);
    if (!twin.valid) throw std::invalid_argument("vault_encrypt: bundle fails twin check: " + twin.reason);
    TopcodeMatrix pub = to_topcode_matrix(bundle.public_graph, bundle.public_coloring);
    NumberString s_pub = emit_string(pub, bundle.rule);

    std::vector<std::uint8_t> out{'T', 'O', 'P', 'C', 1};
    detail::put_u32(out, static_cast<std::uint32_t>(pub.size()));
    for (const auto* row : {&pub.x_row, &pub.e_row, &pub.y_row})
        for (Color c : *row) detail::put_u32(out, static_cast<std::uint32_t>(c));
    std::vector<std::uint8_t> rule = detail::big_to_bytes(bundle.rule);
    detail::put_u32(out, static_cast<std::uint32_t>(rule.size()));
    out.insert(out.end(), rule.begin(), rule.end());
    auto digest = sha256_bytes(s_pub.digits);
    out.insert(out.end(), digest.begin(), digest.end());

    std::vector<std::uint8_t> body = plain;
    detail::xor_keystream(body, s_pub.digits);
    out.insert(out.end(), body.begin(), body.end());
    return out;
}

/// Decrypts a vault with the presented private side: authenticates against the
/// stored public matrix, re-derives the keystream string, checks its digest,
/// then inverts the stream.
inline std::vector<std::uint8_t> vault_decrypt(const std::vector<std::uint8_t>& vault,
                                               const Graph& priv_g, const TotalColoring& priv_c,
                                               CheckKind kind) {
    std::size_t at = 0;
    if (vault.size() < 5 || vault[0] != 'T' || vault[1] != 'O' || vault[2] != 'P' ||
        vault[3] != 'C')
        throw std::invalid_argument("vault: bad magic");
    if (vault[4] != 1) throw std::invalid_argument("vault: unsupported version");
    at = 5;
    std::uint32_t q = detail::get_u32(vault, at);
    TopcodeMatrix pub;
    for (auto* row : {&pub.x_row, &pub.e_row, &pub.y_row})
        for (std::uint32_t i = 0; i < q; ++i)
            row->push_back(static_cast<Color>(detail::get_u32(vault, at)));
    std::uint32_t rule_len = detail::get_u32(vault, at);
    if (at + rule_len > vault.size()) throw std::invalid_argument("vault header truncated");
    BigInt rule = detail::big_from_bytes(
        std::vector<std::uint8_t>(vault.begin() + at, vault.begin() + at + rule_len));
    at += rule_len;
    if (at + 32 > vault.size()) throw std::invalid_argument("vault header truncated");
    std::array<std::uint8_t, 32> digest{};
    std::copy(vault.begin() + at, vault.begin() + at + 32, digest.begin());
    at += 32;

    detail::matrix_twin_or_throw(pub, priv_g, priv_c, kind);
    NumberString s_pub = emit_string(pub, rule);
    if (sha256_bytes(s_pub.digits) != digest)
        throw std::invalid_argument("vault: digest mismatch");

    std::vector<std::uint8_t> body(vault.begin() + at, vault.end());
    detail::xor_keystream(body, s_pub.digits);
    return body;
}

}  // namespace topocode
