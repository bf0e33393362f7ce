#include "panelize/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace panelize {

namespace {

const char* kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759",
                          "#b07aa1", "#76b7b2", "#edc948", "#9c755f"};
constexpr const char* kUnassignedFill = "#d8d8d8";

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    // Avoid the negative-zero artifact so output stays stable across
    // arithmetic that differs only in rounding direction.
    if (std::string(buf) == "-0.00")
        return "0.00";
    return buf;
}

} // namespace

std::string render_svg(const Mesh& mesh, const std::vector<ManifestPanel>& panels,
                       const RenderOptions& options)
{
    if (mesh.elements.empty())
        throw RenderError("mesh has no elements to render");

    // Every referenced node needs coordinates.
    std::array<double, 3> lo, hi;
    lo.fill(std::numeric_limits<double>::infinity());
    hi.fill(-std::numeric_limits<double>::infinity());
    for (const auto& entry : mesh.elements) {
        for (const NodeId n : entry.second.nodes) {
            const auto& node = mesh.nodes.at(n);
            if (!node.coords)
                throw RenderError("node " + std::to_string(n) +
                                  " has no coordinates; cannot render");
            for (int k = 0; k < 3; ++k) {
                lo[k] = std::min(lo[k], (*node.coords)[k]);
                hi[k] = std::max(hi[k], (*node.coords)[k]);
            }
        }
    }

    // Project onto the two axes with the largest extents; ties keep the
    // lower axis index so the choice is deterministic.
    std::array<double, 3> range = {hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]};
    int drop = 2;
    for (int k = 0; k < 3; ++k)
        if (range[k] < range[drop])
            drop = k;
    const int ax = drop == 0 ? 1 : 0;
    const int ay = drop == 2 ? 1 : 2;

    const double span = options.canvas - 2.0 * options.margin;
    const double widest = std::max(range[ax], range[ay]);
    const double scale = widest > 0 ? span / widest : 1.0;
    const double width = range[ax] * scale + 2.0 * options.margin;
    const double height = range[ay] * scale + 2.0 * options.margin;
    auto px = [&](double v) { return options.margin + (v - lo[ax]) * scale; };
    auto py = [&](double v) { return height - options.margin - (v - lo[ay]) * scale; };

    // Element -> panel color, stiffeners at reduced opacity.
    std::map<ElementId, std::string> fill;
    std::map<ElementId, bool> is_stiffener;
    for (const ManifestPanel& panel : panels) {
        const std::string color =
            kPalette[static_cast<std::size_t>(std::max(panel.id - 1, 0)) %
                     (sizeof kPalette / sizeof kPalette[0])];
        for (const ElementId e : panel.elements)
            fill.emplace(e, color);
        for (const StiffenerRecord& s : panel.stiffeners)
            for (const ElementId e : s.elements) {
                fill.emplace(e, color);
                is_stiffener[e] = true;
            }
    }

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width)
        << "\" height=\"" << num(height) << "\" viewBox=\"0 0 " << num(width) << ' '
        << num(height) << "\">\n";
    svg << "<g stroke=\"#333333\" stroke-width=\"" << num(options.stroke)
        << "\" stroke-linejoin=\"round\">\n";
    for (const auto& [eid, element] : mesh.elements) {
        svg << "<polygon points=\"";
        bool first = true;
        for (const NodeId n : element.nodes) {
            const auto& c = *mesh.nodes.at(n).coords;
            if (!first)
                svg << ' ';
            svg << num(px(c[ax])) << ',' << num(py(c[ay]));
            first = false;
        }
        const auto it = fill.find(eid);
        svg << "\" fill=\"" << (it != fill.end() ? it->second : kUnassignedFill) << '"';
        if (is_stiffener.count(eid))
            svg << " fill-opacity=\"0.55\"";
        svg << "/>\n";
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

} // namespace panelize
