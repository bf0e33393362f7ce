#pragma once

#include <cstdint>
#include <string>

#include "panelize/bdf.hpp"
#include "panelize/extract.hpp"
#include "panelize/mesh.hpp"

namespace panelize::fixtures {

// 2x4-cell reference grid: 15 nodes in 3 rows of 5, node row*5+col+1 at
// (col, row, 0), 16 consistently wound tris numbered row-major, two per
// cell: odd id (a,b,d) and even id (a,d,c) across the a-d diagonal.
Mesh reference_mesh();

PanelBoundary reference_lower_loop(); // (1,2,3,4,5,10,9,8,7,6)
PanelBoundary reference_upper_loop(); // (6,7,8,9,10,15,14,13,12,11)
DividingCurve reference_mid_curve();  // (6,7,8,9,10)

// Reference skin plus three stiffener quad chains: one riding the bottom
// panel, one the top panel, one exactly on the mid curve (the tie case).
Mesh stiffened_reference_mesh();

struct GridSpec {
    int cell_rows = 1;
    int cell_cols = 1;
    std::uint64_t diagonal_seed = 0; // picks each cell's split diagonal
    bool reverse_winding = false;    // reverse every element (stays consistent)
    bool with_coords = false;
};

Mesh grid_mesh(const GridSpec& spec);
NodeId grid_node(const GridSpec& spec, int row, int col);

// Small-field deck of reference_mesh(), produced by the writer.
std::string reference_deck_text();

// Deck of stiffened_reference_mesh() for the stiffen CLI flow.
std::string stiffened_deck_text();

} // namespace panelize::fixtures
