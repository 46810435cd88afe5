#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "topocode/caterpillar.hpp"
#include "topocode/coloring.hpp"
#include "topocode/graph.hpp"
#include "topocode/lattice.hpp"
#include "topocode/rla.hpp"
#include "topocode/topcode.hpp"
#include "topocode/topcode_matrix.hpp"
#include "topocode/transform.hpp"
#include "topocode/validate.hpp"

namespace topocode::io {

using nlohmann::json;

// ----- graph: {"vertices":[...],"edges":[[u,v],...]} with u < v -----

inline json graph_to_json(const Graph& g) {
    json j;
    j["vertices"] = json::array();
    for (VertexId v : g.vertices()) j["vertices"].push_back(v);
    j["edges"] = json::array();
    for (const Edge& e : g.edges()) j["edges"].push_back({e.first, e.second});
    return j;
}

inline Graph graph_from_json(const json& j) {
    Graph g;
    for (const auto& v : j.at("vertices")) {
        int id = v.get<int>();
        if (id < 0) throw std::invalid_argument("vertex ids must be non-negative");
        g.add_vertex(id);
    }
    for (const auto& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edge must be a pair");
        g.add_edge(e[0].get<int>(), e[1].get<int>());
    }
    return g;
}

// ----- coloring: {"vertex_colors":{"id":c},"edge_colors":[[u,v,c],...]} -----

inline json coloring_to_json(const TotalColoring& c) {
    json j;
    j["vertex_colors"] = json::object();
    for (const auto& [v, col] : c.vertex_colors) j["vertex_colors"][std::to_string(v)] = col;
    j["edge_colors"] = json::array();
    for (const auto& [e, col] : c.edge_colors) j["edge_colors"].push_back({e.first, e.second, col});
    return j;
}

inline TotalColoring coloring_from_json(const json& j) {
    TotalColoring c;
    for (const auto& [key, val] : j.at("vertex_colors").items())
        c.set_vertex(std::stoi(key), val.get<Color>());
    for (const auto& e : j.at("edge_colors")) {
        if (!e.is_array() || e.size() != 3)
            throw std::invalid_argument("edge color entry must be [u,v,color]");
        c.set_edge(e[0].get<int>(), e[1].get<int>(), e[2].get<Color>());
    }
    return c;
}

// ----- leaf plan: {"counts":{"id":n},"order":"ascending","seed":0} -----

struct LeafPlanSpec {
    LeafPlan plan;
    LeafOrder order = LeafOrder::ascending();
};

inline json leaf_plan_to_json(const LeafPlan& p, const LeafOrder& order) {
    json j;
    j["counts"] = json::object();
    for (const auto& [v, n] : p.counts) j["counts"][std::to_string(v)] = n;
    switch (order.mode) {
        case LeafOrder::Mode::Ascending: j["order"] = "ascending"; break;
        case LeafOrder::Mode::Descending: j["order"] = "descending"; break;
        case LeafOrder::Mode::Random: j["order"] = "random"; break;
    }
    j["seed"] = order.seed;
    return j;
}

inline LeafPlanSpec leaf_plan_from_json(const json& j) {
    LeafPlanSpec out;
    for (const auto& [key, val] : j.at("counts").items())
        out.plan.counts[std::stoi(key)] = val.get<int>();
    std::string order = j.value("order", "ascending");
    if (order == "ascending") out.order.mode = LeafOrder::Mode::Ascending;
    else if (order == "descending") out.order.mode = LeafOrder::Mode::Descending;
    else if (order == "random") out.order.mode = LeafOrder::Mode::Random;
    else throw std::invalid_argument("unknown leaf order: " + order);
    out.order.seed = j.value("seed", std::uint64_t{0});
    return out;
}

// ----- Topcode matrix: {"x":[...],"e":[...],"y":[...]} or 3 text rows -----

inline json matrix_to_json(const TopcodeMatrix& m) {
    return json{{"x", m.x_row}, {"e", m.e_row}, {"y", m.y_row}};
}

inline TopcodeMatrix matrix_from_json(const json& j) {
    TopcodeMatrix m;
    m.x_row = j.at("x").get<std::vector<Color>>();
    m.e_row = j.at("e").get<std::vector<Color>>();
    m.y_row = j.at("y").get<std::vector<Color>>();
    m.require_valid();
    return m;
}

inline std::string matrix_to_text(const TopcodeMatrix& m) {
    std::ostringstream os;
    for (const auto* row : {&m.x_row, &m.e_row, &m.y_row}) {
        for (std::size_t i = 0; i < row->size(); ++i) os << (i ? " " : "") << (*row)[i];
        os << "\n";
    }
    return os.str();
}

/// Three whitespace-separated integer rows.
inline TopcodeMatrix matrix_from_text(const std::string& text) {
    std::istringstream is(text);
    TopcodeMatrix m;
    std::string line;
    std::vector<std::vector<Color>> rows;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::vector<Color> row;
        Color v;
        while (ls >> v) row.push_back(v);
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.size() != 3) throw std::invalid_argument("matrix text needs exactly three rows");
    m.x_row = rows[0];
    m.e_row = rows[1];
    m.y_row = rows[2];
    m.require_valid();
    return m;
}

/// Accepts either the JSON object form or the three-row text form.
inline TopcodeMatrix matrix_from_string(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (!j.is_discarded() && j.is_object()) return matrix_from_json(j);
    return matrix_from_text(text);
}

// ----- certificates and reports -----

inline json certificate_to_json(const MagicCertificate& cert) {
    json j;
    j["kind"] = kind_name(cert.kind);
    j["constant"] = cert.constant;
    j["is_labeling"] = cert.is_labeling;
    j["is_set_ordered"] = cert.is_set_ordered;
    j["is_odd_edge"] = cert.is_odd_edge;
    if (cert.bipartition) {
        j["bipartition"] = {{"x_side", cert.bipartition->x_side},
                            {"y_side", cert.bipartition->y_side}};
    }
    return j;
}

inline json graceful_report_to_json(const GracefulReport& r, bool odd) {
    json j;
    j["kind"] = odd ? "odd-graceful" : "graceful";
    j["valid"] = r.valid;
    j["is_labeling"] = r.is_labeling;
    j["is_set_ordered"] = r.set_ordered;
    if (!r.valid) j["reason"] = r.reason;
    return j;
}

inline json transform_result_to_json(const TransformResult& r) {
    json j;
    j["class"] = color_class_name(r.klass);
    j["constant"] = r.constant;
    j["set_ordered"] = r.set_ordered;
    j["verified"] = r.verified;
    if (!r.note.empty()) j["note"] = r.note;
    j["coloring"] = coloring_to_json(r.coloring);
    return j;
}

// ----- caterpillar spec: JSON integer list -----

inline CaterpillarSpec spec_from_json(const json& j) {
    CaterpillarSpec s;
    s.leaf_counts = j.get<std::vector<int>>();
    return s;
}

// ----- composition recipe -----

inline CompositionRecipe recipe_from_json(const json& j) {
    CompositionRecipe r;
    r.coefficients = j.at("coefficients").get<std::vector<int>>();
    if (j.contains("plans"))
        for (const auto& pj : j.at("plans")) {
            LeafPlanSpec ps = leaf_plan_from_json(pj);
            r.plans.push_back(ps.plan);
            r.order = ps.order;  // one order for the composition round
        }
    if (j.contains("coincide"))
        for (const auto& cj : j.at("coincide")) {
            if (!cj.is_array() || cj.size() != 4)
                throw std::invalid_argument("coincide entry must be [copy,vertex,copy,vertex]");
            r.coincides.push_back(CoincidePair{cj[0].get<int>(), cj[1].get<int>(),
                                               cj[2].get<int>(), cj[3].get<int>()});
        }
    return r;
}

inline json composite_report_to_json(const Composite& comp) {
    json j;
    j["pieces"] = json::array();
    for (const PieceReport& p : comp.report.pieces)
        j["pieces"].push_back({{"copy", p.copy_index},
                               {"member", p.member_index},
                               {"constant", p.constant},
                               {"vertices", p.vertices},
                               {"edges", p.edges}});
    j["constants"] = comp.report.constants;
    j["coincide"] = json::array();
    for (const CoincidePair& p : comp.report.coincide_log)
        j["coincide"].push_back({p.copy_a, p.vertex_a, p.copy_b, p.vertex_b});
    return j;
}

// ----- auth bundle -----

inline json bundle_to_json(const AuthBundle& b) {
    json j;
    j["public"] = {{"graph", graph_to_json(b.public_graph)},
                   {"coloring", coloring_to_json(b.public_coloring)}};
    j["private"] = {{"graph", graph_to_json(b.private_graph)},
                    {"coloring", coloring_to_json(b.private_coloring)}};
    j["kind"] = b.kind == CheckKind::OddGraceful
                    ? "odd-graceful"
                    : kind_name(b.kind == CheckKind::EdgeMagic ? MagicKind::EdgeMagic
                                : b.kind == CheckKind::EdgeDifference ? MagicKind::EdgeDifference
                                : b.kind == CheckKind::FelicitousDifference
                                    ? MagicKind::FelicitousDifference
                                    : MagicKind::GracefulDifference);
    j["rule"] = b.rule.str();
    return j;
}

inline CheckKind check_kind_from_name(const std::string& s) {
    if (s == "odd-graceful") return CheckKind::OddGraceful;
    auto mk = kind_from_name(s);
    if (!mk) throw std::invalid_argument("unknown kind: " + s);
    return to_check_kind(*mk);
}

inline AuthBundle bundle_from_json(const json& j) {
    AuthBundle b;
    b.public_graph = graph_from_json(j.at("public").at("graph"));
    b.public_coloring = coloring_from_json(j.at("public").at("coloring"));
    b.private_graph = graph_from_json(j.at("private").at("graph"));
    b.private_coloring = coloring_from_json(j.at("private").at("coloring"));
    b.kind = check_kind_from_name(j.at("kind").get<std::string>());
    b.rule = BigInt(j.at("rule").get<std::string>());
    return b;
}

// ----- files -----

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << data;
}

inline json read_json(const std::string& path) { return json::parse(read_file(path)); }

}  // namespace topocode::io
