#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "panelize/extract.hpp"

namespace panelize {

struct StiffenerChain {
    std::vector<ElementId> elements; // ordered end to end
    int attached_panel = 0;          // 0 = unattached
};

struct AmbiguityRecord {
    ElementId element = 0;
    int chosen_panel = 0;
    std::vector<int> candidate_panels; // every panel sharing >= 2 nodes
};

struct StiffenerAssignment {
    std::map<int, std::set<ElementId>> by_panel;
    std::vector<AmbiguityRecord> ambiguities; // quads on panel boundaries
    std::set<ElementId> unassigned;           // < 2 shared nodes with every panel
    std::vector<std::string> warnings;        // quads not sharing exactly 2 skin nodes
};

// Assigns each stiffener quad to the panel it shares >= 2 nodes with. A quad
// on a panel boundary goes to the panel sharing more nodes, then to the lower
// panel id, and is surfaced as ambiguous either way.
StiffenerAssignment associate_stiffeners(const std::vector<Panel>& panels,
                                         const Mesh& stiffener_mesh);

struct ChainSet {
    std::vector<StiffenerChain> chains;
    // Element groups that do not form simple open runs (branching quads,
    // closed rings), reported instead of guessed at.
    std::vector<std::pair<std::vector<ElementId>, std::string>> malformed;
};

// Partitions assigned quads into maximal node-connected runs, each ordered so
// the end element containing the smaller node id comes first.
ChainSet build_chains(const std::set<ElementId>& assigned, const AdjacencyIndex& stiffener_index);

} // namespace panelize
