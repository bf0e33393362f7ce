#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "panelize/mesh.hpp"

namespace panelize {

// Mesh plus the deck-level data extraction does not need but round-trips.
struct BulkDeck {
    Mesh mesh;
    std::map<ElementId, int> property_ids;  // PSHELL reference per element
    std::map<ElementId, int> source_lines;  // line each element came from
    std::vector<std::string> warnings;      // skipped cards, odd fields
};

// Reads the supported card subset: GRID, CTRIA3, CQUAD4, in small-field
// (8-character columns) or free-field (comma-separated) form. Lines starting
// with $ are comments. Anything else is skipped with a warning. Throws
// ParseError with a line number on malformed fields, duplicate ids, and
// references to GRIDs the deck never defines.
BulkDeck parse_bdf(std::istream& in);
BulkDeck parse_bdf_file(const std::string& path);

// Writes small-field cards sorted by id: the selected elements and exactly
// the GRID cards their nodes need. selection = nullopt writes everything.
// Output is byte-deterministic and a fixed point of parse/write.
std::string write_bdf(const BulkDeck& deck,
                      const std::optional<std::set<ElementId>>& selection = std::nullopt);

} // namespace panelize
