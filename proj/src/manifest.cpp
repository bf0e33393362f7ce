#include "panelize/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "panelize/errors.hpp"

namespace panelize {

using nlohmann::json;

namespace {

json to_json(const Manifest& m)
{
    json doc;
    doc["format_version"] = m.format_version;
    doc["panels"] = json::array();
    for (const auto& p : m.panels) {
        json jp;
        jp["id"] = p.id;
        jp["elements"] = p.elements;
        jp["nodes"] = p.nodes;
        jp["boundary"] = p.boundary;
        if (!p.inner_boundaries.empty())
            jp["inner_boundaries"] = p.inner_boundaries;
        if (!p.stiffeners.empty()) {
            json js = json::array();
            for (const auto& s : p.stiffeners) {
                json jc;
                jc["elements"] = s.elements;
                if (!s.note.empty())
                    jc["note"] = s.note;
                js.push_back(std::move(jc));
            }
            jp["stiffeners"] = std::move(js);
        }
        if (p.design) {
            json jd;
            jd["t"] = p.design->t;
            jd["t_stiff"] = p.design->t_stiff;
            jd["h_stiff"] = p.design->h_stiff;
            jd["weight"] = p.design->weight;
            jd["sigma_vm_max"] = p.design->sigma_vm_max;
            if (p.design->lambda_p)
                jd["lambda_p"] = *p.design->lambda_p;
            else
                jd["lambda_p"] = "NON_CRITICAL";
            jd["status"] = p.design->status;
            jp["design"] = std::move(jd);
        }
        doc["panels"].push_back(std::move(jp));
    }
    if (!m.history.empty()) {
        json jh = json::array();
        for (const auto& r : m.history) {
            json jr;
            jr["iteration"] = r.iteration;
            jr["total_weight"] = r.total_weight;
            if (r.delta_pct)
                jr["delta_pct"] = *r.delta_pct;
            jr["infeasible_panels"] = r.infeasible_panels;
            jr["global_constraints"] = r.global_constraints;
            jh.push_back(std::move(jr));
        }
        doc["history"] = std::move(jh);
    }
    if (!m.status.empty())
        doc["status"] = m.status;
    return doc;
}

template <typename T>
T require(const json& j, const char* key)
{
    if (!j.contains(key))
        throw ParseError(std::string("manifest: missing key '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("manifest: bad value for '") + key + "': " + e.what());
    }
}

Manifest from_json(const json& doc)
{
    if (!doc.is_object())
        throw ParseError("manifest: top level must be an object");
    Manifest m;
    m.format_version = require<int>(doc, "format_version");
    if (m.format_version != 1)
        throw ParseError("manifest: unknown format_version " +
                         std::to_string(m.format_version));
    if (!doc.contains("panels") || !doc.at("panels").is_array())
        throw ParseError("manifest: missing 'panels' array");
    for (const auto& jp : doc.at("panels")) {
        ManifestPanel p;
        p.id = require<int>(jp, "id");
        p.elements = require<std::vector<ElementId>>(jp, "elements");
        p.nodes = require<std::vector<NodeId>>(jp, "nodes");
        p.boundary = require<std::vector<NodeId>>(jp, "boundary");
        if (jp.contains("inner_boundaries"))
            p.inner_boundaries = require<std::vector<std::vector<NodeId>>>(jp, "inner_boundaries");
        if (jp.contains("stiffeners")) {
            for (const auto& js : jp.at("stiffeners")) {
                StiffenerRecord s;
                s.elements = require<std::vector<ElementId>>(js, "elements");
                if (js.contains("note"))
                    s.note = require<std::string>(js, "note");
                p.stiffeners.push_back(std::move(s));
            }
        }
        if (jp.contains("design")) {
            const auto& jd = jp.at("design");
            DesignRecord d;
            d.t = require<double>(jd, "t");
            d.t_stiff = require<double>(jd, "t_stiff");
            d.h_stiff = require<double>(jd, "h_stiff");
            d.weight = require<double>(jd, "weight");
            d.sigma_vm_max = require<double>(jd, "sigma_vm_max");
            if (jd.contains("lambda_p") && jd.at("lambda_p").is_number())
                d.lambda_p = jd.at("lambda_p").get<double>();
            d.status = require<std::string>(jd, "status");
            p.design = std::move(d);
        }
        m.panels.push_back(std::move(p));
    }
    if (doc.contains("history")) {
        for (const auto& jr : doc.at("history")) {
            HistoryRecord r;
            r.iteration = require<int>(jr, "iteration");
            r.total_weight = require<double>(jr, "total_weight");
            if (jr.contains("delta_pct"))
                r.delta_pct = jr.at("delta_pct").get<double>();
            r.infeasible_panels = require<int>(jr, "infeasible_panels");
            r.global_constraints = require<std::string>(jr, "global_constraints");
            m.history.push_back(r);
        }
    }
    if (doc.contains("status"))
        m.status = doc.at("status").get<std::string>();
    return m;
}

} // namespace

Manifest Manifest::from_panels(const std::vector<Panel>& panels)
{
    Manifest m;
    for (const auto& panel : panels) {
        ManifestPanel p;
        p.id = panel.id;
        p.elements.assign(panel.elements.begin(), panel.elements.end());
        p.nodes.assign(panel.nodes.begin(), panel.nodes.end());
        p.boundary = panel.boundary.loop;
        for (const auto& hole : panel.inner_loops)
            p.inner_boundaries.push_back(hole.loop);
        m.panels.push_back(std::move(p));
    }
    return m;
}

Manifest parse_manifest(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("manifest: ") + e.what());
    }
    return from_json(doc);
}

Manifest read_manifest(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_manifest(buf.str());
}

std::string manifest_to_string(const Manifest& m)
{
    return to_json(m).dump();
}

void write_manifest(const Manifest& m, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw Error("cannot write '" + path + "'");
    out << manifest_to_string(m) << "\n";
}

} // namespace panelize
