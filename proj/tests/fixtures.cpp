#include "fixtures.hpp"

#include <algorithm>

#include "panelize/panel_opt.hpp"

namespace panelize::fixtures {

namespace {

void add_grid_node(Mesh& mesh, NodeId id, double x, double y, double z, bool with_coords)
{
    if (with_coords)
        mesh.add_node(id, std::array<double, 3>{x, y, z});
    else
        mesh.add_node(id);
}

} // namespace

Mesh reference_mesh()
{
    Mesh mesh;
    for (int row = 0; row < 3; ++row)
        for (int col = 0; col < 5; ++col)
            add_grid_node(mesh, row * 5 + col + 1, col, row, 0.0, true);
    for (int row = 0; row < 2; ++row) {
        for (int col = 0; col < 4; ++col) {
            const NodeId a = row * 5 + col + 1;
            const NodeId b = a + 1;
            const NodeId c = a + 5;
            const NodeId d = a + 6;
            const ElementId base = 2 * (row * 4 + col);
            mesh.add_element(base + 1, ElementKind::Tri, {a, b, d});
            mesh.add_element(base + 2, ElementKind::Tri, {a, d, c});
        }
    }
    return mesh;
}

PanelBoundary reference_lower_loop()
{
    return PanelBoundary{{1, 2, 3, 4, 5, 10, 9, 8, 7, 6}};
}

PanelBoundary reference_upper_loop()
{
    return PanelBoundary{{6, 7, 8, 9, 10, 15, 14, 13, 12, 11}};
}

DividingCurve reference_mid_curve()
{
    return DividingCurve{{6, 7, 8, 9, 10}};
}

Mesh stiffened_reference_mesh()
{
    Mesh mesh = reference_mesh();
    // Blade cap nodes sit 0.05 above the skin node they mirror.
    auto cap = [&](NodeId skin, NodeId top) {
        const auto& c = *mesh.nodes.at(skin).coords;
        add_grid_node(mesh, top, c[0], c[1], 0.05, true);
    };
    // Chain on the bottom panel interior.
    cap(1, 101);
    cap(2, 102);
    cap(3, 103);
    cap(4, 104);
    mesh.add_element(201, ElementKind::Quad, {1, 2, 102, 101});
    mesh.add_element(202, ElementKind::Quad, {2, 3, 103, 102});
    mesh.add_element(203, ElementKind::Quad, {3, 4, 104, 103});
    // Chain on the top panel interior.
    cap(11, 111);
    cap(12, 112);
    cap(13, 113);
    mesh.add_element(211, ElementKind::Quad, {11, 12, 112, 111});
    mesh.add_element(212, ElementKind::Quad, {12, 13, 113, 112});
    // Chain riding the shared mid row: each quad touches both panels.
    cap(6, 121);
    cap(7, 122);
    cap(8, 123);
    mesh.add_element(221, ElementKind::Quad, {6, 7, 122, 121});
    mesh.add_element(222, ElementKind::Quad, {7, 8, 123, 122});
    return mesh;
}

NodeId grid_node(const GridSpec& spec, int row, int col)
{
    return row * (spec.cell_cols + 1) + col + 1;
}

Mesh grid_mesh(const GridSpec& spec)
{
    Mesh mesh;
    for (int row = 0; row <= spec.cell_rows; ++row)
        for (int col = 0; col <= spec.cell_cols; ++col)
            add_grid_node(mesh, grid_node(spec, row, col), col, row, 0.0, spec.with_coords);
    ElementId next = 1;
    for (int row = 0; row < spec.cell_rows; ++row) {
        for (int col = 0; col < spec.cell_cols; ++col) {
            const NodeId a = grid_node(spec, row, col);
            const NodeId b = grid_node(spec, row, col + 1);
            const NodeId c = grid_node(spec, row + 1, col);
            const NodeId d = grid_node(spec, row + 1, col + 1);
            const std::uint64_t cell = static_cast<std::uint64_t>(row) * spec.cell_cols + col;
            const bool split_ad = mix_seed(spec.diagonal_seed, cell) & 1;
            std::vector<NodeId> first, second;
            if (split_ad) {
                first = {a, b, d};
                second = {a, d, c};
            } else {
                first = {a, b, c};
                second = {b, d, c};
            }
            if (spec.reverse_winding) {
                std::reverse(first.begin(), first.end());
                std::reverse(second.begin(), second.end());
            }
            mesh.add_element(next++, ElementKind::Tri, first);
            mesh.add_element(next++, ElementKind::Tri, second);
        }
    }
    return mesh;
}

namespace {

std::string deck_text_for(const Mesh& mesh)
{
    BulkDeck deck;
    deck.mesh = mesh;
    for (const auto& entry : mesh.elements)
        deck.property_ids[entry.first] = 1;
    return write_bdf(deck);
}

} // namespace

std::string reference_deck_text()
{
    return deck_text_for(reference_mesh());
}

std::string stiffened_deck_text()
{
    return deck_text_for(stiffened_reference_mesh());
}

} // namespace panelize::fixtures
