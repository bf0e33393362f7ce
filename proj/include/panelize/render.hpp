#pragma once

#include <map>
#include <string>
#include <vector>

#include "panelize/errors.hpp"
#include "panelize/manifest.hpp"
#include "panelize/mesh.hpp"

namespace panelize {

struct RenderOptions {
    double canvas = 800;  // longest image side in px
    double margin = 20;   // px border around the drawing
    double stroke = 0.6;  // element outline width in px
};

// Projects the mesh to the plane of its two largest coordinate extents and
// draws every element, filled by owning panel. Panels cycle a fixed palette;
// elements outside every panel are grey. Output is byte-deterministic.
// Requires coordinates on every referenced node; RenderError otherwise.
std::string render_svg(const Mesh& mesh, const std::vector<ManifestPanel>& panels,
                       const RenderOptions& options = {});

} // namespace panelize
