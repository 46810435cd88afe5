// Command-line front end: verify colorings, run transforms and leaf-adding
// rounds, build caterpillar labelings, compose lattice elements, count
// partitions, and drive the Topcode codec and file vault.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "topocode/topocode.hpp"

using namespace topocode;
using nlohmann::json;

namespace {

bool log_enabled() {
    const char* v = std::getenv("TOPOCODE_LOG");
    return v != nullptr && *v != '\0';
}

void log_note(const std::string& msg) {
    if (log_enabled()) std::cerr << "[topocode] " << msg << "\n";
}

void emit(const json& j, const std::string& output_path) {
    std::string text = j.dump(2) + "\n";
    if (output_path.empty()) std::cout << text;
    else io::write_file(output_path, text);
}

struct GraphColoring {
    Graph graph;
    TotalColoring coloring;
};

GraphColoring load_graph_coloring(const std::string& path) {
    json j = io::read_json(path);
    GraphColoring gc;
    gc.graph = io::graph_from_json(j.at("graph"));
    gc.coloring = io::coloring_from_json(j.at("coloring"));
    return gc;
}

json graph_coloring_json(const Graph& g, const TotalColoring& c) {
    return json{{"graph", io::graph_to_json(g)}, {"coloring", io::coloring_to_json(c)}};
}

MagicKind parse_kind(const std::string& s) {
    auto k = kind_from_name(s);
    if (!k) throw CLI::ValidationError("--kind", "unknown kind " + s);
    return *k;
}

LeafOrder parse_order(const std::string& order, std::uint64_t seed) {
    if (order == "ascending") return LeafOrder::ascending();
    if (order == "descending") return LeafOrder::descending();
    if (order == "random") return LeafOrder::random(seed);
    throw CLI::ValidationError("--order", "unknown order " + order);
}

int cmd_verify(const std::string& input, const std::string& matrix_path, const std::string& kind,
               const std::string& output) {
    if (!matrix_path.empty()) {
        TopcodeMatrix m = io::matrix_from_string(io::read_file(matrix_path));
        json j;
        j["q"] = m.size();
        j["odd_edge_exact"] = matrix_odd_edge_exact(m);
        j["relations"] = matrix_evaluated_relations(m);
        bool ok = false;
        if (kind == "odd-graceful") {
            ok = matrix_is_graceful(m) && matrix_odd_edge_exact(m);
            j["kind"] = "odd-graceful";
            j["valid"] = ok;
        } else {
            auto team = check_matrix_team({m}, parse_kind(kind), *m.vertex_entries().rbegin());
            ok = team.valid;
            j["kind"] = kind;
            j["valid"] = team.valid;
            if (team.valid) j["constant"] = team.constants.front();
            else j["reason"] = team.reason;
        }
        emit(j, output);
        return ok ? 0 : 1;
    }
    GraphColoring gc = load_graph_coloring(input);
    if (kind == "odd-graceful") {
        GracefulReport r = check_odd_graceful(gc.graph, gc.coloring, false);
        emit(io::graceful_report_to_json(r, true), output);
        return r.valid ? 0 : 1;
    }
    MagicCheck r = check_w_magic(gc.graph, gc.coloring, parse_kind(kind));
    json j = io::certificate_to_json(r.certificate);
    j["valid"] = r.valid;
    if (!r.valid) {
        j["reason"] = r.reason;
        if (r.violating_edge)
            j["violating_edge"] = {r.violating_edge->first, r.violating_edge->second};
    }
    emit(j, output);
    return r.valid ? 0 : 1;
}

int cmd_transform(const std::string& input, const std::string& op, const std::string& target,
                  const std::string& output) {
    GraphColoring gc = load_graph_coloring(input);
    if (op == "twin") {
        TwinPair tp = twin_from(gc.graph, gc.coloring);
        json j = graph_coloring_json(tp.graph, tp.coloring);
        TwinReport twin = check_twin(gc.graph, gc.coloring, tp.graph, tp.coloring,
                                     CheckKind::GracefulDifference);
        j["twin"] = {{"valid", twin.valid}, {"perfect", twin.perfect}};
        emit(j, output);
        return 0;
    }
    TransformResult r;
    if (op == "odd-equiv") {
        r = odd_equivalence_transform(gc.graph, gc.coloring, parse_kind(target));
    } else {
        auto sd = set_dual_from_name(op);
        if (!sd) throw CLI::ValidationError("--op", "unknown transform " + op);
        r = set_dual_transform(gc.graph, gc.coloring, *sd);
    }
    emit(io::transform_result_to_json(r), output);
    return r.verified ? 0 : 1;
}

int cmd_rla(const std::string& input, const std::string& plan_path, const std::string& mode,
            const std::string& kind, const std::string& order_flag, std::uint64_t seed,
            bool seed_set, const std::string& output) {
    GraphColoring gc = load_graph_coloring(input);
    io::LeafPlanSpec plan = io::leaf_plan_from_json(io::read_json(plan_path));
    LeafOrder order = plan.order;
    if (!order_flag.empty()) order = parse_order(order_flag, seed);
    if (seed_set) order.seed = seed;
    RlaResult r;
    if (mode == "single") {
        r = rla_single(gc.graph, gc.coloring, plan.plan, parse_kind(kind));
        log_note("single round ignores --order; the coloring order is fixed per kind");
    } else if (mode == "continuous") {
        r = rla_continuous(gc.graph, gc.coloring, plan.plan, parse_kind(kind), order);
    } else {
        throw CLI::ValidationError("--mode", "expected single or continuous");
    }
    json j = graph_coloring_json(r.graph, r.coloring);
    j["constant_before"] = r.constant_before;
    j["constant_after"] = r.constant_after;
    j["added_leaf_edges"] = json::array();
    for (const Edge& e : r.added_leaf_edges) j["added_leaf_edges"].push_back({e.first, e.second});
    emit(j, output);
    return 0;
}

int cmd_tree_color(const std::string& input, const std::string& kind, const std::string& output) {
    json gj = io::read_json(input);
    Graph t = io::graph_from_json(gj.contains("graph") ? gj.at("graph") : gj);
    TreeColoring tc = color_tree(t, parse_kind(kind));
    MagicCheck chk = check_w_magic(t, tc.coloring, tc.kind);
    json j = graph_coloring_json(t, tc.coloring);
    j["constant"] = tc.constant;
    j["certificate"] = io::certificate_to_json(chk.certificate);
    emit(j, output);
    return chk.valid ? 0 : 1;
}

int cmd_caterpillar(const std::string& spec_str, const std::string& kind,
                    const std::string& output) {
    CaterpillarSpec spec = io::spec_from_json(json::parse(spec_str));
    LabeledCaterpillar lab = odd_graceful_subdivision(spec);
    json j = graph_coloring_json(lab.graph, lab.coloring);
    j["spine"] = lab.spine;
    GracefulReport base = check_odd_graceful(lab.graph, lab.coloring, true);
    j["odd_graceful"] = io::graceful_report_to_json(base, true);
    if (!kind.empty()) {
        TransformResult r = odd_equivalence_transform(lab.graph, lab.coloring, parse_kind(kind));
        j["coloring"] = io::coloring_to_json(r.coloring);
        j["certificate"] = io::transform_result_to_json(r);
        j["certificate"].erase("coloring");
    }
    emit(j, output);
    return 0;
}

ColoredBase load_base(const json& j) {
    MagicKind kind = parse_kind(j.at("kind").get<std::string>());
    std::vector<std::pair<Graph, TotalColoring>> members;
    for (const auto& mj : j.at("members"))
        members.emplace_back(io::graph_from_json(mj.at("graph")),
                             io::coloring_from_json(mj.at("coloring")));
    Color anchor = j.value("anchor_color", 0);
    return make_colored_base(members, kind, anchor);
}

int cmd_lattice_compose(const std::string& base_path, const std::string& recipe_path,
                        const std::string& mode, const std::string& output) {
    ColoredBase base = load_base(io::read_json(base_path));
    CompositionRecipe recipe = io::recipe_from_json(io::read_json(recipe_path));
    Composite comp;
    if (mode == "larvc") comp = larvc_compose(base, recipe);
    else if (mode == "linear") comp = construction_compose(base, recipe, ConstructionMode::Linear);
    else if (mode == "nonlinear")
        comp = construction_compose(base, recipe, ConstructionMode::Nonlinear);
    else throw CLI::ValidationError("--mode", "expected larvc, linear or nonlinear");
    json j = graph_coloring_json(comp.graph, comp.coloring);
    j["report"] = io::composite_report_to_json(comp);
    emit(j, output);
    return 0;
}

int cmd_lattice_collapse(const std::string& input, const std::string& output) {
    GraphColoring gc = load_graph_coloring(input);
    auto [g, c] = collapse_same_colors(gc.graph, gc.coloring);
    emit(graph_coloring_json(g, c), output);
    return 0;
}

int cmd_count(const std::string& which, long long a, long long b) {
    if (which == "A") {
        std::cout << partition_A(a, b) << "\n";
    } else if (which == "n") {
        std::cout << partition_n(a, b) << "\n";
    } else if (which == "aleaf") {
        ALeafResult r = a_leaf_count(a, b);
        if (r.diverged)
            std::cout << r.exact_form << " (factorial form " << r.factorial_form
                      << " diverges: some k exceeds p)\n";
        else
            std::cout << r.factorial_form << "\n";
    } else {
        throw CLI::ValidationError("count", "expected A, n or aleaf");
    }
    return 0;
}

int cmd_topcode_extract(const std::string& input, const std::string& output, bool text) {
    GraphColoring gc = load_graph_coloring(input);
    TopcodeMatrix m = to_topcode_matrix(gc.graph, gc.coloring);
    if (text) {
        if (output.empty()) std::cout << io::matrix_to_text(m);
        else io::write_file(output, io::matrix_to_text(m));
        return 0;
    }
    json j = io::matrix_to_json(m);
    j["relations"] = matrix_evaluated_relations(m);
    emit(j, output);
    return 0;
}

int cmd_topcode_realize(const std::string& matrix_path, int cap, bool allow_disconnected,
                        bool merged, const std::string& output) {
    TopcodeMatrix m = io::matrix_from_string(io::read_file(matrix_path));
    json j = json::array();
    if (merged) {
        auto [g, c] = realize_merged(m);
        j.push_back(graph_coloring_json(g, c));
    } else {
        for (const auto& [g, c] : realize_matrix(m, cap, !allow_disconnected))
            j.push_back(graph_coloring_json(g, c));
    }
    emit(j, output);
    return j.empty() ? 1 : 0;
}

int cmd_topcode_emit(const std::string& matrix_path, const std::string& perm_index,
                     const std::string& output) {
    TopcodeMatrix m = io::matrix_from_string(io::read_file(matrix_path));
    NumberString s = emit_string(m, BigInt(perm_index));
    json j;
    j["digits"] = s.digits;
    j["perm_index"] = s.perm_index.str();
    j["duplicate_entries"] = s.duplicate_entries;
    emit(j, output);
    return 0;
}

int cmd_auth_keygen(const std::string& spec_str, const std::string& perm_index,
                    const std::string& output) {
    CaterpillarSpec spec = io::spec_from_json(json::parse(spec_str));
    LabeledCaterpillar lab = odd_graceful_subdivision(spec);
    TransformResult grd =
        odd_equivalence_transform(lab.graph, lab.coloring, MagicKind::GracefulDifference);
    TwinPair tp = twin_from(lab.graph, grd.coloring);
    AuthBundle bundle;
    bundle.public_graph = lab.graph;
    bundle.public_coloring = grd.coloring;
    bundle.private_graph = tp.graph;
    bundle.private_coloring = tp.coloring;
    bundle.kind = CheckKind::GracefulDifference;
    bundle.rule = BigInt(perm_index);
    TwinReport twin = check_twin(bundle.public_graph, bundle.public_coloring, bundle.private_graph,
                                 bundle.private_coloring, bundle.kind);
    json j = io::bundle_to_json(bundle);
    j["twin"] = {{"valid", twin.valid}, {"perfect", twin.perfect}};
    emit(j, output);
    return twin.valid ? 0 : 1;
}

int cmd_auth_encrypt(const std::string& bundle_path, const std::string& input,
                     const std::string& output) {
    AuthBundle bundle = io::bundle_from_json(io::read_json(bundle_path));
    std::string plain = io::read_file(input);
    std::vector<std::uint8_t> bytes(plain.begin(), plain.end());
    std::vector<std::uint8_t> vault = vault_encrypt(bytes, bundle);
    io::write_file(output, std::string(vault.begin(), vault.end()));
    return 0;
}

int cmd_auth_decrypt(const std::string& bundle_path, const std::string& input,
                     const std::string& output) {
    json j = io::read_json(bundle_path);
    Graph priv_g = io::graph_from_json(j.at("private").at("graph"));
    TotalColoring priv_c = io::coloring_from_json(j.at("private").at("coloring"));
    CheckKind kind = io::check_kind_from_name(j.at("kind").get<std::string>());
    std::string vault_text = io::read_file(input);
    std::vector<std::uint8_t> vault(vault_text.begin(), vault_text.end());
    std::vector<std::uint8_t> plain = vault_decrypt(vault, priv_g, priv_c, kind);
    io::write_file(output, std::string(plain.begin(), plain.end()));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"odd-edge magic-type total colorings: validators, transforms, lattices, codec"};
    app.require_subcommand(1);

    std::string input, output, kind, matrix_path, plan_path, op, target, mode, order;
    std::string spec_str, base_path, recipe_path, perm_index = "0", bundle_path, which;
    long long count_a = 0, count_b = 0;
    std::uint64_t seed = 0;
    int cap = 12;
    bool text = false, allow_disconnected = false, merged = false;

    auto* verify = app.add_subcommand("verify", "check a coloring or matrix against a class");
    verify->add_option("--input", input, "graph+coloring JSON");
    verify->add_option("--matrix", matrix_path, "Topcode matrix (JSON or 3-row text)");
    verify->add_option("--kind", kind, "class to check")->required();
    verify->add_option("--output", output);

    auto* transform = app.add_subcommand("transform", "apply a color transform");
    transform->add_option("--input", input)->required();
    transform->add_option("--op", op, "dual|dual-star|set-xy|set-xy-star|set-x|set-x-star|set-y|set-y-star|odd-equiv|twin")->required();
    transform->add_option("--target", target, "magic kind for odd-equiv");
    transform->add_option("--output", output);

    auto* rla = app.add_subcommand("rla", "leaf-adding round");
    rla->add_option("--input", input)->required();
    rla->add_option("--plan", plan_path, "leaf plan JSON")->required();
    rla->add_option("--mode", mode, "single|continuous")->required();
    rla->add_option("--kind", kind)->required();
    rla->add_option("--order", order, "ascending|descending|random");
    auto* seed_opt = rla->add_option("--seed", seed);
    rla->add_option("--output", output);

    auto* tree = app.add_subcommand("tree-color", "color any tree for a kind");
    tree->add_option("--input", input)->required();
    tree->add_option("--kind", kind)->required();
    tree->add_option("--output", output);

    auto* cat = app.add_subcommand("caterpillar", "labeling from a caterpillar spec");
    cat->add_option("--spec", spec_str, "JSON list of per-spine leaf counts")->required();
    cat->add_option("--kind", kind, "also emit this magic coloring");
    cat->add_option("--output", output);

    auto* lattice = app.add_subcommand("lattice", "compose or collapse");
    auto* compose = lattice->add_subcommand("compose");
    compose->add_option("--base", base_path)->required();
    compose->add_option("--recipe", recipe_path)->required();
    compose->add_option("--mode", mode, "larvc|linear|nonlinear")->capture_default_str();
    auto* collapse = lattice->add_subcommand("collapse");
    collapse->add_option("--input", input)->required();
    collapse->add_option("--output", output);
    compose->add_option("--output", output);
    lattice->require_subcommand(1);

    auto* count = app.add_subcommand("count", "partition counting");
    count->add_option("which", which, "A|n|aleaf")->required();
    count->add_option("a", count_a, "m (or p for aleaf)")->required();
    count->add_option("b", count_b, "k (or m for aleaf)")->required();

    auto* topcode = app.add_subcommand("topcode", "matrix codec");
    auto* extract = topcode->add_subcommand("extract");
    extract->add_option("--input", input)->required();
    extract->add_flag("--text", text, "emit the 3-row text form");
    extract->add_option("--output", output);
    auto* realize = topcode->add_subcommand("realize");
    realize->add_option("--matrix", matrix_path)->required();
    realize->add_option("--cap", cap, "vertex cap")->capture_default_str();
    realize->add_flag("--allow-disconnected", allow_disconnected);
    realize->add_flag("--merged", merged, "deterministic one-vertex-per-color realization");
    realize->add_option("--output", output);
    auto* emit_cmd = topcode->add_subcommand("emit");
    emit_cmd->add_option("--matrix", matrix_path)->required();
    emit_cmd->add_option("--perm-index", perm_index)->capture_default_str();
    emit_cmd->add_option("--output", output);
    topcode->require_subcommand(1);

    auto* auth = app.add_subcommand("auth", "topological authentication and vault");
    auto* keygen = auth->add_subcommand("keygen");
    keygen->add_option("--spec", spec_str)->required();
    keygen->add_option("--perm-index", perm_index)->capture_default_str();
    keygen->add_option("--output", output);
    auto* encrypt = auth->add_subcommand("encrypt");
    encrypt->add_option("--bundle", bundle_path)->required();
    encrypt->add_option("--input", input)->required();
    encrypt->add_option("--output", output)->required();
    auto* decrypt = auth->add_subcommand("decrypt");
    decrypt->add_option("--bundle", bundle_path)->required();
    decrypt->add_option("--input", input)->required();
    decrypt->add_option("--output", output)->required();
    auth->require_subcommand(1);

    if (mode.empty()) mode = "larvc";

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*verify) return cmd_verify(input, matrix_path, kind, output);
        if (*transform) return cmd_transform(input, op, target, output);
        if (*rla) return cmd_rla(input, plan_path, mode, kind, order, seed,
                                 seed_opt->count() > 0, output);
        if (*tree) return cmd_tree_color(input, kind, output);
        if (*cat) return cmd_caterpillar(spec_str, kind, output);
        if (*compose) return cmd_lattice_compose(base_path, recipe_path,
                                                 mode.empty() ? "larvc" : mode, output);
        if (*collapse) return cmd_lattice_collapse(input, output);
        if (*count) return cmd_count(which, count_a, count_b);
        if (*extract) return cmd_topcode_extract(input, output, text);
        if (*realize) return cmd_topcode_realize(matrix_path, cap, allow_disconnected, merged,
                                                 output);
        if (*emit_cmd) return cmd_topcode_emit(matrix_path, perm_index, output);
        if (*keygen) return cmd_auth_keygen(spec_str, perm_index, output);
        if (*encrypt) return cmd_auth_encrypt(bundle_path, input, output);
        if (*decrypt) return cmd_auth_decrypt(bundle_path, input, output);
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
