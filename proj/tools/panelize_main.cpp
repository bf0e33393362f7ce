#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "panelize/adjacency.hpp"
#include "panelize/bdf.hpp"
#include "panelize/config.hpp"
#include "panelize/errors.hpp"
#include "panelize/extract.hpp"
#include "panelize/global_loop.hpp"
#include "panelize/manifest.hpp"
#include "panelize/render.hpp"
#include "panelize/stiffener.hpp"

namespace {

using namespace panelize;

void emit(const std::string& text, const std::string& out_path)
{
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw Error("cannot open output file: " + out_path);
    out << text;
    if (!out)
        throw Error("failed writing output file: " + out_path);
}

void report_warnings(const std::vector<std::string>& warnings)
{
    for (const auto& w : warnings)
        std::cerr << "panelize: warning: " << w << "\n";
}

std::vector<DividingCurve> read_curves(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open curves file: " + path);
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("curves file is not valid JSON: ") + e.what());
    }
    if (root.is_object() && root.contains("curves"))
        root = root["curves"];
    if (!root.is_array())
        throw ParseError("curves file must hold a JSON array of node id arrays");
    std::vector<DividingCurve> curves;
    for (const auto& entry : root) {
        if (!entry.is_array())
            throw ParseError("each curve must be an array of node ids");
        DividingCurve curve;
        for (const auto& v : entry) {
            if (!v.is_number_integer() || v.get<long long>() <= 0)
                throw ParseError("curve node ids must be positive integers");
            curve.nodes.push_back(static_cast<NodeId>(v.get<long long>()));
        }
        curves.push_back(std::move(curve));
    }
    return curves;
}

std::vector<Panel> panels_from_manifest(const Manifest& manifest)
{
    std::vector<Panel> panels;
    for (const ManifestPanel& mp : manifest.panels) {
        Panel p;
        p.id = mp.id;
        p.elements.insert(mp.elements.begin(), mp.elements.end());
        p.nodes.insert(mp.nodes.begin(), mp.nodes.end());
        p.boundary.loop = mp.boundary;
        for (const auto& inner : mp.inner_boundaries)
            p.inner_loops.push_back(PanelBoundary{inner});
        panels.push_back(std::move(p));
    }
    return panels;
}

int run_decompose(const std::string& mesh_path, const std::string& curves_path,
                  const std::string& out_path)
{
    BulkDeck deck = parse_bdf_file(mesh_path);
    report_warnings(deck.warnings);
    const AdjacencyIndex index = build_adjacency(deck.mesh);
    const std::vector<DividingCurve> curves = read_curves(curves_path);
    const std::vector<Panel> panels = decompose(deck.mesh, index, curves);
    emit(manifest_to_string(Manifest::from_panels(panels)) + "\n", out_path);
    return 0;
}

int run_stiffen(const std::string& mesh_path, const std::string& manifest_path,
                const std::string& out_path)
{
    BulkDeck deck = parse_bdf_file(mesh_path);
    report_warnings(deck.warnings);
    Manifest manifest = read_manifest(manifest_path);
    const std::vector<Panel> panels = panels_from_manifest(manifest);

    // The stiffener layer is the deck's quads; the skin tris stay behind.
    Mesh stiffeners;
    for (const auto& [eid, element] : deck.mesh.elements) {
        if (element.kind != ElementKind::Quad)
            continue;
        for (const NodeId n : element.nodes)
            if (!stiffeners.nodes.count(n))
                stiffeners.nodes[n] = deck.mesh.nodes.at(n);
        stiffeners.elements[eid] = element;
    }
    if (stiffeners.elements.empty())
        throw TopologyError("deck has no QUAD stiffener elements");

    const StiffenerAssignment assignment = associate_stiffeners(panels, stiffeners);
    report_warnings(assignment.warnings);
    for (const ElementId e : assignment.unassigned)
        std::cerr << "panelize: warning: stiffener element " << e
                  << " is not attached to any panel\n";

    const AdjacencyIndex stiffener_index = build_adjacency(stiffeners);
    std::map<ElementId, const AmbiguityRecord*> ambiguous;
    for (const AmbiguityRecord& rec : assignment.ambiguities)
        ambiguous[rec.element] = &rec;

    for (ManifestPanel& mp : manifest.panels) {
        mp.stiffeners.clear();
        const auto it = assignment.by_panel.find(mp.id);
        if (it == assignment.by_panel.end())
            continue;
        ChainSet chains = build_chains(it->second, stiffener_index);
        if (!chains.malformed.empty()) {
            std::ostringstream msg;
            msg << "panel " << mp.id << " has malformed stiffener runs:";
            for (const auto& [elements, reason] : chains.malformed)
                msg << ' ' << reason << ';';
            throw TopologyError(msg.str());
        }
        for (StiffenerChain& chain : chains.chains) {
            StiffenerRecord record;
            record.elements = chain.elements;
            std::ostringstream note;
            for (const ElementId e : chain.elements) {
                const auto amb = ambiguous.find(e);
                if (amb == ambiguous.end())
                    continue;
                if (!note.str().empty())
                    note << "; ";
                note << "element " << e << " also touches panel";
                for (const int candidate : amb->second->candidate_panels)
                    if (candidate != mp.id)
                        note << ' ' << candidate;
                note << " (kept on panel " << amb->second->chosen_panel << ")";
            }
            record.note = note.str();
            mp.stiffeners.push_back(std::move(record));
        }
    }
    emit(manifest_to_string(manifest) + "\n", out_path);
    return 0;
}

int run_optimize(const std::string& manifest_path, const std::string& config_path,
                 std::uint64_t seed, unsigned workers, const std::string& out_path)
{
    Manifest manifest = read_manifest(manifest_path);
    if (manifest.panels.empty())
        throw AnalysisError("manifest has no panels to size");
    SizingConfig config = read_sizing_config(config_path);
    config.loop.seed = seed;
    config.loop.worker_count = workers;

    std::vector<PanelProblem> problems;
    for (const ManifestPanel& mp : manifest.panels)
        problems.push_back(config.problem_for(mp.id));

    ConstantLoadsProvider constant;
    StiffnessRedistributionProvider redistribution(config.material);
    GlobalProvider& provider =
        config.provider == "redistribution"
            ? static_cast<GlobalProvider&>(redistribution)
            : static_cast<GlobalProvider&>(constant);

    const LoopResult result =
        run_global_local(problems, config.material, config.bounds, provider, config.loop);

    const std::set<int> infeasible =
        result.history.empty()
            ? std::set<int>{}
            : std::set<int>(result.history.back().infeasible_panels.begin(),
                            result.history.back().infeasible_panels.end());
    for (ManifestPanel& mp : manifest.panels) {
        const auto d = result.designs.find(mp.id);
        const auto a = result.analyses.find(mp.id);
        if (d == result.designs.end() || a == result.analyses.end())
            continue;
        DesignRecord record;
        record.t = d->second.t;
        record.t_stiff = d->second.t_stiff;
        record.h_stiff = d->second.h_stiff;
        record.weight = a->second.weight;
        record.sigma_vm_max = a->second.sigma_vm_max;
        if (a->second.buckling_critical)
            record.lambda_p = a->second.lambda_p;
        record.status = infeasible.count(mp.id) ? "INFEASIBLE" : "FEASIBLE";
        mp.design = record;
    }
    manifest.history.clear();
    for (const IterationRecord& rec : result.history) {
        HistoryRecord h;
        h.iteration = rec.iteration;
        h.total_weight = rec.total_weight;
        h.delta_pct = rec.delta_pct;
        h.infeasible_panels = static_cast<int>(rec.infeasible_panels.size());
        h.global_constraints = rec.global_constraints;
        manifest.history.push_back(h);
    }
    manifest.status = to_string(result.status);
    emit(manifest_to_string(manifest) + "\n", out_path);

    if (result.status == LoopStatus::ProviderError)
        throw AnalysisError("global provider failed: " + result.provider_error);
    if (result.status == LoopStatus::NotConvergedFeasibility)
        throw AnalysisError("loop finished with infeasible panels");
    return 0;
}

int run_render(const std::string& mesh_path, const std::string& manifest_path,
               const std::string& out_path)
{
    BulkDeck deck = parse_bdf_file(mesh_path);
    report_warnings(deck.warnings);
    std::vector<ManifestPanel> panels;
    if (!manifest_path.empty())
        panels = read_manifest(manifest_path).panels;
    emit(render_svg(deck.mesh, panels), out_path);
    return 0;
}

int run_info(const std::string& mesh_path, const std::string& manifest_path)
{
    if (mesh_path.empty() && manifest_path.empty())
        throw Error("info needs --mesh and/or --manifest");
    std::ostringstream out;
    if (!mesh_path.empty()) {
        BulkDeck deck = parse_bdf_file(mesh_path);
        report_warnings(deck.warnings);
        std::size_t tris = 0, quads = 0, with_coords = 0;
        for (const auto& entry : deck.mesh.elements)
            (entry.second.kind == ElementKind::Tri ? tris : quads) += 1;
        for (const auto& entry : deck.mesh.nodes)
            if (entry.second.coords)
                ++with_coords;
        const AdjacencyIndex index = build_adjacency(deck.mesh);
        out << "mesh: " << mesh_path << "\n"
            << "  nodes: " << deck.mesh.nodes.size() << " (" << with_coords
            << " with coordinates)\n"
            << "  elements: " << deck.mesh.elements.size() << " (" << tris << " tri, "
            << quads << " quad)\n"
            << "  edges: " << index.edge_to_elements.size() << "\n"
            << "  consistent winding: " << (index.consistent_winding ? "yes" : "no") << "\n";
    }
    if (!manifest_path.empty()) {
        const Manifest manifest = read_manifest(manifest_path);
        out << "manifest: " << manifest_path << "\n"
            << "  panels: " << manifest.panels.size() << "\n";
        for (const ManifestPanel& mp : manifest.panels) {
            out << "  panel " << mp.id << ": " << mp.elements.size() << " elements, "
                << mp.nodes.size() << " nodes, boundary " << mp.boundary.size() << " nodes";
            if (!mp.inner_boundaries.empty())
                out << ", " << mp.inner_boundaries.size() << " holes";
            if (!mp.stiffeners.empty())
                out << ", " << mp.stiffeners.size() << " stiffener chains";
            if (mp.design)
                out << ", design " << mp.design->status;
            out << "\n";
        }
        if (!manifest.status.empty())
            out << "  status: " << manifest.status << " after " << manifest.history.size()
                << " iterations\n";
    }
    std::cout << out.str();
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"panel decomposition and sizing for shell meshes"};
    app.require_subcommand(1);

    std::string mesh_path, curves_path, manifest_path, config_path, out_path;
    std::uint64_t seed = 0;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());

    CLI::App* decompose_cmd =
        app.add_subcommand("decompose", "split a skin mesh into panels along curves");
    decompose_cmd->add_option("--mesh", mesh_path, "input mesh (BDF)")->required();
    decompose_cmd->add_option("--curves", curves_path, "dividing curves (JSON)")->required();
    decompose_cmd->add_option("--out", out_path, "output manifest (default stdout)");

    CLI::App* stiffen_cmd =
        app.add_subcommand("stiffen", "attach stiffener quad chains to panels");
    stiffen_cmd->add_option("--mesh", mesh_path, "input mesh with stiffener quads (BDF)")
        ->required();
    stiffen_cmd->add_option("--manifest", manifest_path, "manifest from decompose")->required();
    stiffen_cmd->add_option("--out", out_path, "output manifest (default stdout)");

    CLI::App* optimize_cmd =
        app.add_subcommand("optimize", "run the global/local sizing loop");
    optimize_cmd->add_option("--manifest", manifest_path, "manifest with panels")->required();
    optimize_cmd->add_option("--config", config_path, "sizing configuration (JSON)")
        ->required();
    optimize_cmd->add_option("--seed", seed, "RNG seed (default 0)");
    optimize_cmd->add_option("--workers", workers, "worker threads (default hardware)");
    optimize_cmd->add_option("--out", out_path, "output manifest (default stdout)");

    CLI::App* render_cmd = app.add_subcommand("render", "draw the mesh as SVG");
    render_cmd->add_option("--mesh", mesh_path, "input mesh (BDF)")->required();
    render_cmd->add_option("--manifest", manifest_path, "manifest for panel colors");
    render_cmd->add_option("--out", out_path, "output SVG (default stdout)");

    CLI::App* info_cmd = app.add_subcommand("info", "print mesh and manifest summaries");
    info_cmd->add_option("--mesh", mesh_path, "input mesh (BDF)");
    info_cmd->add_option("--manifest", manifest_path, "manifest to summarize");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (decompose_cmd->parsed())
            return run_decompose(mesh_path, curves_path, out_path);
        if (stiffen_cmd->parsed())
            return run_stiffen(mesh_path, manifest_path, out_path);
        if (optimize_cmd->parsed())
            return run_optimize(manifest_path, config_path, seed, workers, out_path);
        if (render_cmd->parsed())
            return run_render(mesh_path, manifest_path, out_path);
        if (info_cmd->parsed())
            return run_info(mesh_path, manifest_path);
    } catch (const ParseError& e) {
        std::cerr << "panelize: error: " << e.what() << "\n";
        return 1;
    } catch (const TopologyError& e) {
        std::cerr << "panelize: error: " << e.what() << "\n";
        return 2;
    } catch (const AnalysisError& e) {
        std::cerr << "panelize: error: " << e.what() << "\n";
        return 3;
    } catch (const RenderError& e) {
        std::cerr << "panelize: error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "panelize: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
