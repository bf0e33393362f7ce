#pragma once

#include <set>
#include <utility>
#include <vector>

#include "panelize/adjacency.hpp"

namespace panelize {

// A node path along mesh edges dividing a region in two. Curves carry no
// geometry; mapping physical cut lines onto node paths is the caller's job.
struct DividingCurve {
    std::vector<NodeId> nodes;
};

// Cyclically ordered node loop enclosing a panel. Orientation matters: walks
// prefer the side whose element winding follows the loop direction, which is
// what makes wholly interior loops unambiguous on consistently wound meshes.
struct PanelBoundary {
    std::vector<NodeId> loop;
};

struct Panel {
    int id = 0;
    std::set<ElementId> elements;
    std::set<NodeId> nodes; // union of element connectivities
    PanelBoundary boundary;
    std::vector<PanelBoundary> inner_loops; // hole boundaries, if any
};

// Trace of one boundary or curve walk. element_list entries pair the element
// id with its connectivity nodes; node_list is the visited boundary nodes in
// traversal order.
struct WalkState {
    NodeId checkpoint_node = 0;
    ElementId checkpoint_element = 0;
    std::vector<std::pair<ElementId, std::vector<NodeId>>> element_list;
    std::vector<NodeId> node_list;
};

// Thrown internally when a walk detects it started on the wrong side of its
// boundary; the public entry points catch it and restart from the alternative
// candidate. Public so tests can drive the recovery branch directly.
class WrongPathError : public TopologyError {
public:
    using TopologyError::TopologyError;
};

// Over-inclusive first cut: every element sharing >= k nodes with the curve,
// so both sides of an interior curve. One-sided walks disambiguate later.
std::set<ElementId> curve_side_elements(const AdjacencyIndex& index,
                                        const DividingCurve& curve, int k = 2);

// Walks the boundary loop and collects, in walk order, every element that has
// an edge on the loop and lies on the panel side. Tries both candidate
// elements at the start edge, restarting when a wrong-path is detected.
WalkState periphery_walk(const AdjacencyIndex& index, const PanelBoundary& boundary,
                         NodeId start);

// Single attempt from a chosen first element; throws WrongPathError instead
// of restarting. decompose uses it with a known-side candidate, tests use it
// to exercise detection.
WalkState periphery_walk_attempt(const AdjacencyIndex& index, const PanelBoundary& boundary,
                                 NodeId start, ElementId first);

// Panel-side element on the curve's first segment, anchored to an already
// accepted periphery element so it cannot sit on the far side.
ElementId curve_first_element(const AdjacencyIndex& index, const DividingCurve& curve,
                              const WalkState& periphery);

// Walks one side of a dividing curve from the given first element, collecting
// the side's elements that have an edge on the curve, ordered along it.
WalkState curve_side_walk(const AdjacencyIndex& index, const DividingCurve& curve,
                          ElementId first);

// Edge-adjacency closure from seed where boundary (and hole) edges act as
// walls. Verifies the fill stays inside: every accepted boundary element is
// reached and no wall ends up with both of its elements inside the fill.
Panel flood_fill_panel(const AdjacencyIndex& index, const std::set<ElementId>& boundary_elements,
                       ElementId seed, const PanelBoundary& boundary,
                       const std::vector<PanelBoundary>& inner_loops = {});

// periphery_walk + flood_fill_panel for a boundary loop without holes.
Panel extract_panel(const Mesh& mesh, const AdjacencyIndex& index,
                    const PanelBoundary& boundary);

// Splits the whole skin into panels along the given curves. Panels come back
// ordered by their smallest element id, with ids 1..n assigned in that order.
std::vector<Panel> decompose(const Mesh& mesh, const AdjacencyIndex& index,
                             const std::vector<DividingCurve>& curves);

// Independent verification oracle: plain breadth-first fill that never crosses
// a wall edge. Shares no machinery with the walks above on purpose.
std::set<ElementId> oracle_side_fill(const AdjacencyIndex& index, const std::set<Edge>& walls,
                                     ElementId seed);

} // namespace panelize
