#include "panelize/extract.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "panelize/log.hpp"

namespace panelize {

namespace {

std::string edge_str(const Edge& e)
{
    return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
}

std::set<Edge> loop_edge_set(const std::vector<NodeId>& loop)
{
    std::set<Edge> out;
    for (std::size_t i = 0; i < loop.size(); ++i)
        out.insert(make_edge(loop[i], loop[(i + 1) % loop.size()]));
    return out;
}

std::set<Edge> curve_edge_set(const std::vector<NodeId>& path)
{
    std::set<Edge> out;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        out.insert(make_edge(path[i], path[i + 1]));
    return out;
}

void validate_loop(const AdjacencyIndex& index, const std::vector<NodeId>& loop)
{
    if (loop.size() < 3)
        throw TopologyError("boundary loop needs at least 3 nodes");
    std::set<NodeId> distinct(loop.begin(), loop.end());
    if (distinct.size() != loop.size())
        throw TopologyError("boundary loop repeats a node");
    for (std::size_t i = 0; i < loop.size(); ++i) {
        Edge e = make_edge(loop[i], loop[(i + 1) % loop.size()]);
        auto it = index.edge_to_elements.find(e);
        if (it == index.edge_to_elements.end())
            throw TopologyError("boundary is not a closed edge loop: " + edge_str(e) +
                                " is not a mesh edge");
        if (it->second.size() > 2)
            throw TopologyError("non-manifold edge " + edge_str(e) + " on boundary");
    }
}

void validate_curve(const AdjacencyIndex& index, const DividingCurve& curve)
{
    if (curve.nodes.size() < 2)
        throw TopologyError("dividing curve needs at least 2 nodes");
    std::set<NodeId> distinct(curve.nodes.begin(), curve.nodes.end());
    if (distinct.size() != curve.nodes.size())
        throw TopologyError("dividing curve repeats a node");
    for (std::size_t i = 0; i + 1 < curve.nodes.size(); ++i) {
        Edge e = make_edge(curve.nodes[i], curve.nodes[i + 1]);
        auto it = index.edge_to_elements.find(e);
        if (it == index.edge_to_elements.end())
            throw TopologyError("curve discontinuity: " + edge_str(e) + " is not a mesh edge");
        if (it->second.size() > 2)
            throw TopologyError("non-manifold edge " + edge_str(e) + " on curve");
    }
}

// Rotates around `corner` from element `cur` (entered across `entry`) until an
// element carrying `target` is reached. Walls stop the rotation: hitting one,
// or falling off a free edge, means the walk sits on the wrong side.
ElementId pivot(const AdjacencyIndex& index, ElementId cur, NodeId corner, Edge entry,
                Edge target, const std::set<Edge>& walls)
{
    const std::size_t fan_limit = index.node_to_elements.at(corner).size() + 2;
    for (std::size_t step = 0; step < fan_limit; ++step) {
        const auto edges = index.edges_of(cur);
        if (std::find(edges.begin(), edges.end(), target) != edges.end())
            return cur;
        Edge exit{0, 0};
        int n_exits = 0;
        for (const Edge& e : edges) {
            if ((e.first == corner || e.second == corner) && e != entry) {
                exit = e;
                ++n_exits;
            }
        }
        if (n_exits != 1)
            throw TopologyError("element " + std::to_string(cur) +
                                " has an irregular edge fan at node " + std::to_string(corner));
        if (walls.count(exit))
            throw WrongPathError("pivot at node " + std::to_string(corner) +
                                 " crosses boundary edge " + edge_str(exit));
        const auto& incident = index.edge_to_elements.at(exit);
        if (incident.size() > 2)
            throw TopologyError("non-manifold edge " + edge_str(exit));
        ElementId next = 0;
        bool found = false;
        for (ElementId e : incident) {
            if (e != cur) {
                next = e;
                found = true;
            }
        }
        if (!found)
            throw WrongPathError("pivot at node " + std::to_string(corner) +
                                 " dead-ends on free edge " + edge_str(exit));
        cur = next;
        entry = exit;
    }
    throw TopologyError("element fan at node " + std::to_string(corner) + " does not close");
}

std::size_t loop_position(const std::vector<NodeId>& loop, NodeId start)
{
    auto it = std::find(loop.begin(), loop.end(), start);
    if (it == loop.end())
        throw TopologyError("start node " + std::to_string(start) +
                            " is not on the boundary loop");
    return static_cast<std::size_t>(it - loop.begin());
}

// A loop with a free edge has only one side carrying elements, so loop
// orientation cannot mean anything there. Winding is enforced only on wholly
// interior loops, where it is the one thing that picks the panel side.
bool loop_wholly_interior(const AdjacencyIndex& index, const std::vector<NodeId>& loop)
{
    for (std::size_t i = 0; i < loop.size(); ++i) {
        const Edge e = make_edge(loop[i], loop[(i + 1) % loop.size()]);
        if (index.edge_to_elements.at(e).size() < 2)
            return false;
    }
    return true;
}

} // namespace

std::set<ElementId> curve_side_elements(const AdjacencyIndex& index, const DividingCurve& curve,
                                        int k)
{
    validate_curve(index, curve);
    std::set<NodeId> nodes(curve.nodes.begin(), curve.nodes.end());
    return elements_sharing_at_least(index, nodes, k);
}

WalkState periphery_walk_attempt(const AdjacencyIndex& index, const PanelBoundary& boundary,
                                 NodeId start, ElementId first)
{
    validate_loop(index, boundary.loop);
    const auto& loop = boundary.loop;
    const std::size_t m = loop.size();
    const std::size_t si = loop_position(loop, start);
    const std::set<Edge> walls = loop_edge_set(loop);

    WalkState state;
    std::set<ElementId> accepted;
    const bool enforce_winding = index.consistent_winding && loop_wholly_interior(index, loop);
    auto accept = [&](ElementId e, NodeId u, NodeId v) {
        // On a consistently wound mesh the panel-side element of a directed
        // boundary edge must wind with it; the far-side element winds against.
        if (enforce_winding && !index.contains_directed(e, u, v))
            throw WrongPathError("element " + std::to_string(e) +
                                 " winds against boundary direction (" + std::to_string(u) +
                                 "," + std::to_string(v) + ")");
        if (accepted.insert(e).second)
            state.element_list.emplace_back(e, index.nodes_of(e));
        state.checkpoint_element = e;
    };

    {
        const Edge start_edge = make_edge(loop[si], loop[(si + 1) % m]);
        const auto& cands = index.edge_to_elements.at(start_edge);
        if (std::find(cands.begin(), cands.end(), first) == cands.end())
            throw TopologyError("element " + std::to_string(first) +
                                " is not on the start edge " + edge_str(start_edge));
    }

    ElementId cur = first;
    accept(cur, loop[si], loop[(si + 1) % m]);
    state.node_list.push_back(loop[si]);
    state.checkpoint_node = loop[si];
    for (std::size_t k = 1; k < m; ++k) {
        const NodeId corner = loop[(si + k) % m];
        const NodeId next = loop[(si + k + 1) % m];
        const Edge entry = make_edge(loop[(si + k - 1) % m], corner);
        const Edge target = make_edge(corner, next);
        cur = pivot(index, cur, corner, entry, target, walls);
        accept(cur, corner, next);
        state.node_list.push_back(corner);
        state.checkpoint_node = corner;
    }
    // Close the ring: pivot back across the start corner so the checkpoint
    // returns to where it began.
    {
        const NodeId corner = loop[si];
        const Edge entry = make_edge(loop[(si + m - 1) % m], corner);
        const Edge target = make_edge(corner, loop[(si + 1) % m]);
        cur = pivot(index, cur, corner, entry, target, walls);
        state.checkpoint_node = corner;
        state.checkpoint_element = cur;
    }
    return state;
}

WalkState periphery_walk(const AdjacencyIndex& index, const PanelBoundary& boundary, NodeId start)
{
    validate_loop(index, boundary.loop);
    const auto& loop = boundary.loop;
    const std::size_t si = loop_position(loop, start);
    const NodeId u = loop[si];
    const NodeId v = loop[(si + 1) % loop.size()];
    const auto& cands = index.edge_to_elements.at(make_edge(u, v));

    std::vector<ElementId> order;
    if (index.consistent_winding) {
        for (ElementId e : cands)
            if (index.contains_directed(e, u, v))
                order.push_back(e);
        for (ElementId e : cands)
            if (!index.contains_directed(e, u, v))
                order.push_back(e);
    } else {
        order.assign(cands.begin(), cands.end());
        if (cands.size() > 1 && loop_wholly_interior(index, loop))
            log::write(log::Level::warn,
                       "interior loop on a mesh without consistent winding is two-sided; "
                       "taking the lowest-id start candidate");
    }

    std::string reasons;
    for (ElementId e : order) {
        try {
            return periphery_walk_attempt(index, boundary, start, e);
        } catch (const WrongPathError& wrong) {
            // Wrong side: discard the partial lists and restart from the
            // alternative candidate at the start edge.
            log::write(log::Level::debug, std::string("periphery walk restarted: ") + wrong.what());
            if (!reasons.empty())
                reasons += "; ";
            reasons += wrong.what();
        }
    }
    throw TopologyError("periphery walk failed from every start-edge candidate: " + reasons);
}

ElementId curve_first_element(const AdjacencyIndex& index, const DividingCurve& curve,
                              const WalkState& periphery)
{
    validate_curve(index, curve);
    if (std::find(periphery.node_list.begin(), periphery.node_list.end(), curve.nodes.front()) ==
        periphery.node_list.end())
        throw TopologyError("curve start node " + std::to_string(curve.nodes.front()) +
                            " is not on the panel periphery");

    std::set<ElementId> accepted;
    std::set<NodeId> accepted_nodes;
    for (const auto& [eid, conn] : periphery.element_list) {
        accepted.insert(eid);
        accepted_nodes.insert(conn.begin(), conn.end());
    }

    const Edge first_seg = make_edge(curve.nodes[0], curve.nodes[1]);
    const auto& cands = index.edge_to_elements.at(first_seg);

    ElementId best = 0;
    int best_shared = -1;
    for (ElementId e : cands) {
        bool anchored = accepted.count(e) != 0;
        if (!anchored) {
            for (ElementId nb : edge_neighbors(index, e)) {
                if (accepted.count(nb)) {
                    anchored = true;
                    break;
                }
            }
        }
        if (!anchored)
            continue;
        int shared = 0;
        for (NodeId n : index.nodes_of(e))
            if (accepted_nodes.count(n))
                ++shared;
        // Prefer the candidate sharing more nodes with the accepted periphery;
        // ids ascend in cands, so ties resolve to the lower id.
        if (shared > best_shared) {
            best_shared = shared;
            best = e;
        }
    }
    if (best_shared < 0)
        throw TopologyError("no panel-side element found on curve segment " + edge_str(first_seg));
    return best;
}

WalkState curve_side_walk(const AdjacencyIndex& index, const DividingCurve& curve, ElementId first)
{
    validate_curve(index, curve);
    const auto& path = curve.nodes;
    const std::set<Edge> walls = curve_edge_set(path);
    {
        const auto first_edges = index.edges_of(first);
        const Edge seg0 = make_edge(path[0], path[1]);
        if (std::find(first_edges.begin(), first_edges.end(), seg0) == first_edges.end())
            throw TopologyError("element " + std::to_string(first) +
                                " does not sit on the curve's first segment");
    }

    WalkState state;
    std::set<ElementId> accepted;
    auto accept = [&](ElementId e) {
        if (accepted.insert(e).second)
            state.element_list.emplace_back(e, index.nodes_of(e));
        state.checkpoint_element = e;
    };

    ElementId cur = first;
    accept(cur);
    state.node_list.push_back(path[0]);
    state.checkpoint_node = path[0];
    for (std::size_t i = 1; i + 1 < path.size(); ++i) {
        const NodeId corner = path[i];
        const Edge entry = make_edge(path[i - 1], corner);
        const Edge target = make_edge(corner, path[i + 1]);
        cur = pivot(index, cur, corner, entry, target, walls);
        accept(cur);
        state.node_list.push_back(corner);
        state.checkpoint_node = corner;
    }
    state.node_list.push_back(path.back());
    state.checkpoint_node = path.back();
    return state;
}

Panel flood_fill_panel(const AdjacencyIndex& index, const std::set<ElementId>& boundary_elements,
                       ElementId seed, const PanelBoundary& boundary,
                       const std::vector<PanelBoundary>& inner_loops)
{
    validate_loop(index, boundary.loop);
    std::set<Edge> walls = loop_edge_set(boundary.loop);
    for (const auto& hole : inner_loops) {
        validate_loop(index, hole.loop);
        const auto hole_edges = loop_edge_set(hole.loop);
        walls.insert(hole_edges.begin(), hole_edges.end());
    }
    if (!index.has_element(seed))
        throw TopologyError("unknown seed element " + std::to_string(seed));

    std::set<ElementId> fill{seed};
    std::deque<ElementId> queue{seed};
    while (!queue.empty()) {
        const ElementId cur = queue.front();
        queue.pop_front();
        for (const Edge& e : index.edges_of(cur)) {
            if (walls.count(e))
                continue;
            const auto& incident = index.edge_to_elements.at(e);
            if (incident.size() > 2)
                throw TopologyError("non-manifold edge " + edge_str(e));
            for (ElementId nb : incident) {
                if (nb != cur && fill.insert(nb).second)
                    queue.push_back(nb);
            }
        }
    }

    for (ElementId e : boundary_elements)
        if (!fill.count(e))
            throw TopologyError("boundary element " + std::to_string(e) +
                                " is unreachable from seed " + std::to_string(seed));
    // A closed wall must have the fill on exactly one side; both sides inside
    // means the boundary failed to enclose a region.
    for (const Edge& e : walls) {
        const auto& incident = index.edge_to_elements.at(e);
        if (incident.size() == 2 && fill.count(incident[0]) && fill.count(incident[1]))
            throw TopologyError("fill escaped across boundary edge " + edge_str(e));
    }

    Panel panel;
    panel.elements = fill;
    for (ElementId e : fill) {
        const auto& conn = index.nodes_of(e);
        panel.nodes.insert(conn.begin(), conn.end());
    }
    panel.boundary = boundary;
    panel.inner_loops = inner_loops;
    return panel;
}

Panel extract_panel(const Mesh& mesh, const AdjacencyIndex& index, const PanelBoundary& boundary)
{
    for (NodeId n : boundary.loop)
        if (!mesh.nodes.count(n))
            throw TopologyError("boundary node " + std::to_string(n) + " is not in the mesh");
    const WalkState walk = periphery_walk(index, boundary, boundary.loop.front());
    std::set<ElementId> boundary_elements;
    for (const auto& [eid, conn] : walk.element_list)
        boundary_elements.insert(eid);
    return flood_fill_panel(index, boundary_elements, walk.element_list.front().first, boundary);
}

namespace {

// Boundary loops of one element region, each oriented so its directed edges
// follow the winding of the region elements alongside them.
std::vector<std::vector<NodeId>> trace_region_loops(const AdjacencyIndex& index,
                                                    const std::set<ElementId>& region)
{
    std::map<Edge, std::vector<ElementId>> count;
    for (ElementId e : region)
        for (const Edge& edge : index.edges_of(e))
            count[edge].push_back(e);
    std::map<Edge, ElementId> border; // edge -> the single region element on it
    std::map<NodeId, std::vector<NodeId>> link;
    for (const auto& [edge, els] : count) {
        if (els.size() != 1)
            continue;
        border.emplace(edge, els.front());
        link[edge.first].push_back(edge.second);
        link[edge.second].push_back(edge.first);
    }
    for (auto& [node, nbrs] : link) {
        if (nbrs.size() != 2)
            throw TopologyError("panel boundary pinched at node " + std::to_string(node));
        std::sort(nbrs.begin(), nbrs.end());
    }

    std::vector<std::vector<NodeId>> loops;
    std::set<NodeId> used;
    for (const auto& [start, nbrs] : link) {
        if (used.count(start))
            continue;
        NodeId next = nbrs.front();
        if (index.consistent_winding) {
            for (NodeId cand : nbrs) {
                if (index.contains_directed(border.at(make_edge(start, cand)), start, cand)) {
                    next = cand;
                    break;
                }
            }
        }
        std::vector<NodeId> loop{start, next};
        while (true) {
            const NodeId prev = loop[loop.size() - 2];
            const NodeId cur = loop.back();
            const auto& ln = link.at(cur);
            const NodeId follow = ln[0] == prev ? ln[1] : ln[0];
            if (follow == start)
                break;
            loop.push_back(follow);
        }
        used.insert(loop.begin(), loop.end());
        loops.push_back(std::move(loop));
    }
    // Outer loop first. Without coordinates the outer ring is identified as
    // the longest loop (regions here are disc-like patches of a plate mesh).
    std::stable_sort(loops.begin(), loops.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });
    return loops;
}

} // namespace

std::vector<Panel> decompose(const Mesh& mesh, const AdjacencyIndex& index,
                             const std::vector<DividingCurve>& curves)
{
    if (mesh.elements.empty())
        throw TopologyError("mesh has no elements to decompose");
    for (const auto& [eid, element] : mesh.elements)
        if (element.kind != ElementKind::Tri)
            throw TopologyError("skin decomposition requires TRI elements; element " +
                                std::to_string(eid) + " is a QUAD");

    std::set<Edge> walls;
    std::vector<std::set<NodeId>> curve_nodes;
    for (const auto& curve : curves) {
        validate_curve(index, curve);
        const auto edges = curve_edge_set(curve.nodes);
        for (const Edge& e : edges)
            if (!walls.insert(e).second)
                throw TopologyError("curves share edge " + edge_str(e));
        curve_nodes.emplace_back(curve.nodes.begin(), curve.nodes.end());
    }

    std::set<NodeId> free_nodes;
    for (const auto& [edge, els] : index.edge_to_elements) {
        if (els.size() == 1) {
            free_nodes.insert(edge.first);
            free_nodes.insert(edge.second);
        }
    }
    for (std::size_t ci = 0; ci < curves.size(); ++ci) {
        for (const NodeId endpoint : {curves[ci].nodes.front(), curves[ci].nodes.back()}) {
            bool anchored = free_nodes.count(endpoint) != 0;
            for (std::size_t cj = 0; !anchored && cj < curves.size(); ++cj)
                if (cj != ci && curve_nodes[cj].count(endpoint))
                    anchored = true;
            if (!anchored)
                throw TopologyError("curve endpoint " + std::to_string(endpoint) +
                                    " does not land on the outer boundary or another curve");
        }
    }

    // Regions: edge-connected components with curve edges as walls.
    std::map<ElementId, int> region_of;
    std::vector<std::set<ElementId>> regions;
    for (const auto& [eid, conn] : index.element_nodes) {
        if (region_of.count(eid))
            continue;
        std::set<ElementId> region{eid};
        std::deque<ElementId> queue{eid};
        while (!queue.empty()) {
            const ElementId cur = queue.front();
            queue.pop_front();
            for (const Edge& e : index.edges_of(cur)) {
                if (walls.count(e))
                    continue;
                const auto& incident = index.edge_to_elements.at(e);
                if (incident.size() > 2)
                    throw TopologyError("non-manifold edge " + edge_str(e));
                for (ElementId nb : incident)
                    if (nb != cur && region.insert(nb).second)
                        queue.push_back(nb);
            }
        }
        for (ElementId e : region)
            region_of[e] = static_cast<int>(regions.size());
        regions.push_back(std::move(region));
    }

    std::vector<Panel> panels;
    for (const auto& region : regions) {
        const auto loops = trace_region_loops(index, region);
        PanelBoundary outer{loops.front()};
        std::vector<PanelBoundary> inner;
        for (std::size_t i = 1; i < loops.size(); ++i)
            inner.push_back(PanelBoundary{loops[i]});

        // Reproduce the region through the production walk + fill machinery;
        // the component pass above only fixed the loops. The first element is
        // the region's own element on the first loop edge, so the walk starts
        // on the known side regardless of mesh winding.
        ElementId first = 0;
        for (ElementId e : index.edge_to_elements.at(make_edge(outer.loop[0], outer.loop[1])))
            if (region.count(e))
                first = e;
        const WalkState walk = periphery_walk_attempt(index, outer, outer.loop.front(), first);
        std::set<ElementId> boundary_elements;
        for (const auto& [eid, conn] : walk.element_list)
            boundary_elements.insert(eid);
        Panel panel = flood_fill_panel(index, boundary_elements, walk.element_list.front().first,
                                       outer, inner);
        if (panel.elements != region)
            throw TopologyError("decomposition self-check failed: walk and component fill disagree");
        panels.push_back(std::move(panel));
    }

    std::sort(panels.begin(), panels.end(),
              [](const Panel& a, const Panel& b) { return *a.elements.begin() < *b.elements.begin(); });
    for (std::size_t i = 0; i < panels.size(); ++i)
        panels[i].id = static_cast<int>(i + 1);
    return panels;
}

std::set<ElementId> oracle_side_fill(const AdjacencyIndex& index, const std::set<Edge>& walls,
                                     ElementId seed)
{
    if (!index.has_element(seed))
        return {};
    std::set<ElementId> fill{seed};
    std::deque<ElementId> queue{seed};
    while (!queue.empty()) {
        const ElementId cur = queue.front();
        queue.pop_front();
        for (const Edge& e : index.edges_of(cur)) {
            if (walls.count(e))
                continue;
            for (ElementId nb : index.edge_to_elements.at(e)) {
                if (nb != cur && fill.insert(nb).second)
                    queue.push_back(nb);
            }
        }
    }
    return fill;
}

} // namespace panelize
