#include "panelize/adjacency.hpp"

#include <algorithm>

namespace panelize {

const std::vector<NodeId>& AdjacencyIndex::nodes_of(ElementId e) const
{
    auto it = element_nodes.find(e);
    if (it == element_nodes.end())
        throw TopologyError("unknown element id " + std::to_string(e));
    return it->second;
}

std::vector<Edge> AdjacencyIndex::edges_of(ElementId e) const
{
    const auto& n = nodes_of(e);
    std::vector<Edge> out;
    out.reserve(n.size());
    for (std::size_t i = 0; i < n.size(); ++i)
        out.push_back(make_edge(n[i], n[(i + 1) % n.size()]));
    return out;
}

bool AdjacencyIndex::contains_directed(ElementId e, NodeId u, NodeId v) const
{
    const auto& n = nodes_of(e);
    for (std::size_t i = 0; i < n.size(); ++i)
        if (n[i] == u && n[(i + 1) % n.size()] == v)
            return true;
    return false;
}

AdjacencyIndex build_adjacency(const Mesh& mesh)
{
    AdjacencyIndex index;
    for (const auto& [eid, element] : mesh.elements) {
        index.element_nodes.emplace(eid, element.nodes);
        for (NodeId n : element.nodes)
            index.node_to_elements[n].push_back(eid);
        const auto& nn = element.nodes;
        for (std::size_t i = 0; i < nn.size(); ++i)
            index.edge_to_elements[make_edge(nn[i], nn[(i + 1) % nn.size()])].push_back(eid);
    }
    for (auto& [n, els] : index.node_to_elements)
        std::sort(els.begin(), els.end());
    for (auto& [edge, els] : index.edge_to_elements) {
        std::sort(els.begin(), els.end());
        if (els.size() == 2) {
            bool a = index.contains_directed(els[0], edge.first, edge.second);
            bool b = index.contains_directed(els[1], edge.first, edge.second);
            if (a == b)
                index.consistent_winding = false;
        } else if (els.size() > 2) {
            index.consistent_winding = false;
        }
    }
    return index;
}

std::set<ElementId> elements_sharing_at_least(const AdjacencyIndex& index,
                                              const std::set<NodeId>& nodes, int k)
{
    if (k < 1)
        throw TopologyError("share count k must be >= 1, got " + std::to_string(k));
    std::map<ElementId, int> hits;
    for (NodeId n : nodes) {
        auto it = index.node_to_elements.find(n);
        if (it == index.node_to_elements.end())
            continue;
        for (ElementId e : it->second)
            ++hits[e];
    }
    std::set<ElementId> out;
    for (const auto& [e, count] : hits)
        if (count >= k)
            out.insert(e);
    return out;
}

std::set<ElementId> edge_neighbors(const AdjacencyIndex& index, ElementId e)
{
    std::set<ElementId> out;
    for (const Edge& edge : index.edges_of(e)) {
        for (ElementId other : index.edge_to_elements.at(edge))
            if (other != e)
                out.insert(other);
    }
    return out;
}

} // namespace panelize
