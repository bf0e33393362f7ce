#pragma once

#include <map>
#include <set>
#include <vector>

#include "panelize/mesh.hpp"

namespace panelize {

// Connectivity lookup tables. Immutable after build_adjacency and safe to
// share across threads. Owns copies of the element connectivity so it can
// outlive the Mesh it was built from.
struct AdjacencyIndex {
    std::map<ElementId, std::vector<NodeId>> element_nodes;
    std::map<NodeId, std::vector<ElementId>> node_to_elements; // sorted
    std::map<Edge, std::vector<ElementId>> edge_to_elements;   // sorted, >2 = non-manifold
    // True when every interior edge is wound in opposite directions by its two
    // elements. Walks use winding to pick the panel side only when this holds.
    bool consistent_winding = true;

    bool has_element(ElementId e) const { return element_nodes.count(e) != 0; }
    const std::vector<NodeId>& nodes_of(ElementId e) const;
    std::vector<Edge> edges_of(ElementId e) const;
    // True if (u, v) appears as a forward step in e's cyclic node order.
    bool contains_directed(ElementId e, NodeId u, NodeId v) const;
};

AdjacencyIndex build_adjacency(const Mesh& mesh);

// Elements sharing at least k nodes with the query set. Pure set operation.
std::set<ElementId> elements_sharing_at_least(const AdjacencyIndex& index,
                                              const std::set<NodeId>& nodes, int k);

// Elements other than e sharing a full edge with e.
std::set<ElementId> edge_neighbors(const AdjacencyIndex& index, ElementId e);

} // namespace panelize
