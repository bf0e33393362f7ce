#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "panelize/errors.hpp"
#include "panelize/global_loop.hpp"
#include "panelize/panel_opt.hpp"

namespace panelize {

// Sizing configuration parsed from JSON. Geometry and loads give the
// defaults for every panel; panel_overrides patches either per panel id.
struct SizingConfig {
    Material material;
    DesignBounds bounds;
    PanelGeometry geometry;
    PanelLoads loads;
    LoopConfig loop;
    std::string provider = "constant"; // "constant" or "redistribution"
    std::map<int, PanelGeometry> geometry_overrides;
    std::map<int, PanelLoads> load_overrides;

    PanelProblem problem_for(int panel_id) const;
};

SizingConfig parse_sizing_config(const std::string& text);
SizingConfig read_sizing_config(const std::string& path);

} // namespace panelize
