#pragma once

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "panelize/errors.hpp"

namespace panelize {

using NodeId = int;
using ElementId = int;

enum class ElementKind { Tri, Quad };

// Coordinates are carried for I/O round-trips only; no extraction operation
// reads them. A node parsed without coordinates keeps nullopt.
struct Node {
    std::optional<std::array<double, 3>> coords;
};

struct Element {
    ElementKind kind = ElementKind::Tri;
    std::vector<NodeId> nodes; // winding exactly as parsed, never reoriented
};

// Undirected edge key, smaller node id first.
using Edge = std::pair<NodeId, NodeId>;

inline Edge make_edge(NodeId a, NodeId b)
{
    return a < b ? Edge{a, b} : Edge{b, a};
}

struct Mesh {
    std::map<NodeId, Node> nodes;
    std::map<ElementId, Element> elements;

    void add_node(NodeId id, std::optional<std::array<double, 3>> coords = std::nullopt)
    {
        if (id <= 0)
            throw TopologyError("node id must be positive, got " + std::to_string(id));
        if (!nodes.emplace(id, Node{coords}).second)
            throw TopologyError("duplicate node id " + std::to_string(id));
    }

    void add_element(ElementId id, ElementKind kind, std::vector<NodeId> conn)
    {
        if (id <= 0)
            throw TopologyError("element id must be positive, got " + std::to_string(id));
        const std::size_t want = kind == ElementKind::Tri ? 3 : 4;
        if (conn.size() != want)
            throw TopologyError("element " + std::to_string(id) + " has " +
                                std::to_string(conn.size()) + " nodes, expected " +
                                std::to_string(want));
        for (std::size_t i = 0; i < conn.size(); ++i)
            for (std::size_t j = i + 1; j < conn.size(); ++j)
                if (conn[i] == conn[j])
                    throw TopologyError("element " + std::to_string(id) +
                                        " repeats node " + std::to_string(conn[i]));
        if (!elements.emplace(id, Element{kind, std::move(conn)}).second)
            throw TopologyError("duplicate element id " + std::to_string(id));
    }
};

} // namespace panelize
