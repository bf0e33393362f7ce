#include "panelize/stiffener.hpp"

#include <algorithm>

namespace panelize {

StiffenerAssignment associate_stiffeners(const std::vector<Panel>& panels,
                                         const Mesh& stiffener_mesh)
{
    StiffenerAssignment out;
    std::set<NodeId> skin;
    for (const auto& p : panels)
        skin.insert(p.nodes.begin(), p.nodes.end());

    for (const auto& [eid, element] : stiffener_mesh.elements) {
        if (element.kind != ElementKind::Quad)
            throw TopologyError("stiffener mesh must contain QUAD elements only; element " +
                                std::to_string(eid) + " is a TRI");

        int with_skin = 0;
        for (NodeId n : element.nodes)
            with_skin += skin.count(n) ? 1 : 0;
        if (with_skin != 2)
            out.warnings.push_back("element " + std::to_string(eid) + " shares " +
                                   std::to_string(with_skin) +
                                   " nodes with the skin, expected 2");

        // Candidate panels share at least 2 nodes; more shared nodes wins,
        // then the lower panel id.
        std::vector<std::pair<int, int>> candidates; // (panel id, shared count)
        for (const auto& p : panels) {
            int shared = 0;
            for (NodeId n : element.nodes)
                shared += p.nodes.count(n) ? 1 : 0;
            if (shared >= 2)
                candidates.emplace_back(p.id, shared);
        }
        if (candidates.empty()) {
            out.unassigned.insert(eid);
            continue;
        }
        int chosen = candidates.front().first;
        int chosen_shared = candidates.front().second;
        for (const auto& [pid, shared] : candidates) {
            if (shared > chosen_shared || (shared == chosen_shared && pid < chosen)) {
                chosen = pid;
                chosen_shared = shared;
            }
        }
        out.by_panel[chosen].insert(eid);
        if (candidates.size() > 1) {
            AmbiguityRecord rec;
            rec.element = eid;
            rec.chosen_panel = chosen;
            for (const auto& [pid, shared] : candidates)
                rec.candidate_panels.push_back(pid);
            out.ambiguities.push_back(std::move(rec));
        }
    }
    return out;
}

ChainSet build_chains(const std::set<ElementId>& assigned, const AdjacencyIndex& stiffener_index)
{
    ChainSet out;

    // Neighbors within the assigned set, connected by any shared node.
    std::map<ElementId, std::set<ElementId>> neighbors;
    for (ElementId e : assigned) {
        neighbors[e];
        for (NodeId n : stiffener_index.nodes_of(e)) {
            for (ElementId other : stiffener_index.node_to_elements.at(n))
                if (other != e && assigned.count(other))
                    neighbors[e].insert(other);
        }
    }

    std::set<ElementId> seen;
    for (ElementId start : assigned) {
        if (seen.count(start))
            continue;
        std::set<ElementId> component{start};
        std::vector<ElementId> stack{start};
        while (!stack.empty()) {
            ElementId cur = stack.back();
            stack.pop_back();
            for (ElementId nb : neighbors.at(cur))
                if (component.insert(nb).second)
                    stack.push_back(nb);
        }
        seen.insert(component.begin(), component.end());

        std::vector<ElementId> ends;
        ElementId branching = 0;
        for (ElementId e : component) {
            const std::size_t deg = neighbors.at(e).size();
            if (deg > 2)
                branching = e;
            else if (deg <= 1)
                ends.push_back(e);
        }
        std::vector<ElementId> members(component.begin(), component.end());
        if (branching != 0) {
            out.malformed.emplace_back(members, "branching at element " +
                                                     std::to_string(branching));
            continue;
        }
        if (component.size() == 1) {
            out.chains.push_back({members, 0});
            continue;
        }
        if (ends.size() != 2) {
            out.malformed.emplace_back(members, "chain closes on itself");
            continue;
        }

        // Orient from the end element carrying the smaller node id; ties go
        // to the lower element id.
        std::sort(ends.begin(), ends.end(), [&](ElementId a, ElementId b) {
            const auto& na = stiffener_index.nodes_of(a);
            const auto& nb = stiffener_index.nodes_of(b);
            const NodeId ma = *std::min_element(na.begin(), na.end());
            const NodeId mb = *std::min_element(nb.begin(), nb.end());
            return ma != mb ? ma < mb : a < b;
        });
        std::vector<ElementId> ordered{ends.front()};
        std::set<ElementId> used{ends.front()};
        while (ordered.size() < component.size()) {
            bool advanced = false;
            for (ElementId nb : neighbors.at(ordered.back())) {
                if (!used.count(nb)) {
                    ordered.push_back(nb);
                    used.insert(nb);
                    advanced = true;
                    break;
                }
            }
            if (!advanced)
                break;
        }
        if (ordered.size() != component.size()) {
            out.malformed.emplace_back(members, "chain is not a simple run");
            continue;
        }
        out.chains.push_back({std::move(ordered), 0});
    }
    return out;
}

} // namespace panelize
