#include "panelize/config.hpp"

#include <fstream>

#include <json.hpp>

namespace panelize {

namespace {

using nlohmann::json;

double require_num(const json& obj, const std::string& where, const std::string& key)
{
    if (!obj.contains(key) || !obj[key].is_number())
        throw ParseError("config: " + where + "." + key + " must be a number");
    return obj[key].get<double>();
}

double optional_num(const json& obj, const std::string& where, const std::string& key,
                    double fallback)
{
    if (!obj.contains(key))
        return fallback;
    if (!obj[key].is_number())
        throw ParseError("config: " + where + "." + key + " must be a number");
    return obj[key].get<double>();
}

const json& require_obj(const json& root, const std::string& key)
{
    if (!root.contains(key) || !root[key].is_object())
        throw ParseError("config: missing object '" + key + "'");
    return root[key];
}

void read_bound_pair(const json& bounds, const std::string& key, double& lo, double& hi)
{
    if (!bounds.contains(key) || !bounds[key].is_array() || bounds[key].size() != 2 ||
        !bounds[key][0].is_number() || !bounds[key][1].is_number())
        throw ParseError("config: bounds." + key + " must be [min, max]");
    lo = bounds[key][0].get<double>();
    hi = bounds[key][1].get<double>();
}

PanelGeometry read_geometry(const json& g, const std::string& where,
                            const PanelGeometry& fallback, bool partial)
{
    PanelGeometry out = fallback;
    out.a = partial ? optional_num(g, where, "a", fallback.a) : require_num(g, where, "a");
    out.b = partial ? optional_num(g, where, "b", fallback.b) : require_num(g, where, "b");
    const double n = optional_num(g, where, "n_stiff", partial ? fallback.n_stiff : 0.0);
    if (n < 0 || n != static_cast<int>(n))
        throw ParseError("config: " + where + ".n_stiff must be a non-negative integer");
    out.n_stiff = static_cast<int>(n);
    // Stiffeners run the a-direction by default.
    out.stiffener_length = optional_num(g, where, "stiffener_length",
                                        partial ? fallback.stiffener_length : out.a);
    return out;
}

PanelLoads read_loads(const json& l, const std::string& where, const PanelLoads& fallback)
{
    PanelLoads out;
    out.nx = optional_num(l, where, "nx", fallback.nx);
    out.ny = optional_num(l, where, "ny", fallback.ny);
    out.nxy = optional_num(l, where, "nxy", fallback.nxy);
    return out;
}

} // namespace

PanelProblem SizingConfig::problem_for(int panel_id) const
{
    PanelProblem p;
    p.panel_id = panel_id;
    const auto g = geometry_overrides.find(panel_id);
    p.geom = g != geometry_overrides.end() ? g->second : geometry;
    const auto l = load_overrides.find(panel_id);
    p.loads = l != load_overrides.end() ? l->second : loads;
    return p;
}

SizingConfig parse_sizing_config(const std::string& text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object())
        throw ParseError("config root must be a JSON object");

    SizingConfig cfg;
    const json& mat = require_obj(root, "material");
    cfg.material.E = require_num(mat, "material", "E");
    cfg.material.nu = require_num(mat, "material", "nu");
    cfg.material.rho = require_num(mat, "material", "rho");
    cfg.material.sigma_y = require_num(mat, "material", "sigma_y");

    const json& bounds = require_obj(root, "bounds");
    read_bound_pair(bounds, "t", cfg.bounds.t_min, cfg.bounds.t_max);
    read_bound_pair(bounds, "t_stiff", cfg.bounds.t_stiff_min, cfg.bounds.t_stiff_max);
    read_bound_pair(bounds, "h_stiff", cfg.bounds.h_stiff_min, cfg.bounds.h_stiff_max);

    cfg.geometry = read_geometry(require_obj(root, "geometry"), "geometry", PanelGeometry{},
                                 /*partial=*/false);
    cfg.loads = read_loads(require_obj(root, "loads"), "loads", PanelLoads{});

    if (root.contains("loop")) {
        const json& loop = root["loop"];
        if (!loop.is_object())
            throw ParseError("config: 'loop' must be an object");
        cfg.loop.threshold_pct =
            optional_num(loop, "loop", "threshold_pct", cfg.loop.threshold_pct);
        const double iters =
            optional_num(loop, "loop", "max_iterations", cfg.loop.max_iterations);
        if (iters < 1 || iters != static_cast<int>(iters))
            throw ParseError("config: loop.max_iterations must be a positive integer");
        cfg.loop.max_iterations = static_cast<int>(iters);
        if (loop.contains("provider")) {
            if (!loop["provider"].is_string())
                throw ParseError("config: loop.provider must be a string");
            cfg.provider = loop["provider"].get<std::string>();
            if (cfg.provider != "constant" && cfg.provider != "redistribution")
                throw ParseError("config: unknown provider '" + cfg.provider + "'");
        }
    }

    if (root.contains("panel_overrides")) {
        const json& overrides = root["panel_overrides"];
        if (!overrides.is_object())
            throw ParseError("config: 'panel_overrides' must be an object keyed by panel id");
        for (const auto& [key, value] : overrides.items()) {
            int panel_id = 0;
            try {
                std::size_t used = 0;
                panel_id = std::stoi(key, &used);
                if (used != key.size())
                    throw std::invalid_argument(key);
            } catch (const std::exception&) {
                throw ParseError("config: panel_overrides key '" + key +
                                 "' is not a panel id");
            }
            if (!value.is_object())
                throw ParseError("config: panel_overrides." + key + " must be an object");
            const std::string where = "panel_overrides." + key;
            if (value.contains("geometry"))
                cfg.geometry_overrides[panel_id] = read_geometry(
                    value["geometry"], where + ".geometry", cfg.geometry, /*partial=*/true);
            if (value.contains("loads"))
                cfg.load_overrides[panel_id] =
                    read_loads(value["loads"], where + ".loads", cfg.loads);
        }
    }

    try {
        cfg.material.validate();
        cfg.bounds.validate();
        cfg.geometry.validate();
        cfg.loop.validate();
        for (const auto& entry : cfg.geometry_overrides)
            entry.second.validate();
    } catch (const AnalysisError& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    return cfg;
}

SizingConfig read_sizing_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open config file: " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_sizing_config(text);
}

} // namespace panelize
