#include "panelize/bdf.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "panelize/errors.hpp"

namespace panelize {

namespace {

std::string trim(const std::string& s)
{
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos)
        return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::string upper(std::string s)
{
    for (char& c : s)
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

// Splits one card into fields: field 0 is the keyword. Small-field cards use
// fixed 8-character columns; free-field cards split on commas.
std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> fields;
    if (line.find(',') != std::string::npos) {
        std::string cur;
        std::istringstream ss(line);
        while (std::getline(ss, cur, ','))
            fields.push_back(trim(cur));
        return fields;
    }
    for (std::size_t pos = 0; pos < line.size() && fields.size() < 10; pos += 8)
        fields.push_back(trim(line.substr(pos, 8)));
    return fields;
}

std::string field_at(const std::vector<std::string>& fields, std::size_t i)
{
    return i < fields.size() ? fields[i] : "";
}

int parse_int(const std::string& raw, const std::string& what, int line)
{
    const std::string s = trim(raw);
    if (s.empty())
        throw ParseError("missing " + what + " field", line);
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size())
        throw ParseError("malformed " + what + " field '" + s + "'", line);
    return static_cast<int>(v);
}

// NASTRAN reals with E exponents only. The legacy short exponent form
// ("1.0+3" meaning 1.0e+3) is rejected rather than misread as arithmetic.
double parse_real(const std::string& raw, const std::string& what, int line)
{
    const std::string s = trim(raw);
    for (std::size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E')
            throw ParseError("legacy short-exponent real '" + s + "' in " + what +
                             " field (write 1.0E+3, not 1.0+3)", line);
    }
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
        throw ParseError("malformed " + what + " field '" + s + "'", line);
    return v;
}

std::string format_field_int(int v)
{
    char buf[16];
    std::snprintf(buf, sizeof buf, "%8d", v);
    return buf;
}

// Shortest %g form that fits the 8-character field.
std::string format_field_real(double v)
{
    char buf[32];
    for (int prec = 6; prec >= 1; --prec) {
        std::snprintf(buf, sizeof buf, "%.*G", prec, v);
        if (std::string(buf).size() <= 8)
            break;
    }
    char out[16];
    std::snprintf(out, sizeof out, "%8s", buf);
    return out;
}

} // namespace

BulkDeck parse_bdf(std::istream& in)
{
    BulkDeck deck;
    struct PendingElement {
        ElementId id;
        ElementKind kind;
        std::vector<NodeId> nodes;
        int pid;
        int line;
    };
    std::vector<PendingElement> pending;

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (trim(line).empty())
            continue;
        if (line[0] == '$')
            continue;

        const auto fields = split_fields(line);
        const std::string keyword = upper(field_at(fields, 0));
        if (keyword.empty())
            continue;

        if (keyword == "GRID") {
            const int id = parse_int(field_at(fields, 1), "GRID id", lineno);
            if (deck.mesh.nodes.count(id))
                throw ParseError("duplicate GRID " + std::to_string(id), lineno);
            // Field 2 is CP; ignored but must be an integer when present.
            if (!field_at(fields, 2).empty())
                parse_int(fields[2], "GRID CP", lineno);
            const std::string xs = field_at(fields, 3);
            const std::string ys = field_at(fields, 4);
            const std::string zs = field_at(fields, 5);
            std::optional<std::array<double, 3>> coords;
            if (!(xs.empty() && ys.empty() && zs.empty())) {
                coords = std::array<double, 3>{
                    xs.empty() ? 0.0 : parse_real(xs, "GRID X1", lineno),
                    ys.empty() ? 0.0 : parse_real(ys, "GRID X2", lineno),
                    zs.empty() ? 0.0 : parse_real(zs, "GRID X3", lineno)};
            }
            try {
                deck.mesh.add_node(id, coords);
            } catch (const TopologyError& err) {
                throw ParseError(err.what(), lineno);
            }
        } else if (keyword == "CTRIA3" || keyword == "CQUAD4") {
            const bool tri = keyword == "CTRIA3";
            const int id = parse_int(field_at(fields, 1), keyword + " id", lineno);
            const int pid = parse_int(field_at(fields, 2), keyword + " PID", lineno);
            if (pid <= 0)
                throw ParseError(keyword + " " + std::to_string(id) +
                                 " has non-positive PID " + std::to_string(pid), lineno);
            std::vector<NodeId> conn;
            const std::size_t n = tri ? 3 : 4;
            for (std::size_t g = 0; g < n; ++g)
                conn.push_back(parse_int(field_at(fields, 3 + g),
                                         keyword + " G" + std::to_string(g + 1), lineno));
            if (deck.source_lines.count(id))
                throw ParseError("duplicate element " + std::to_string(id), lineno);
            pending.push_back({id, tri ? ElementKind::Tri : ElementKind::Quad,
                               std::move(conn), pid, lineno});
            deck.source_lines[id] = lineno;
        } else {
            deck.warnings.push_back("line " + std::to_string(lineno) + ": skipped " + keyword +
                                    " card");
        }
    }

    // GRID references are resolved only after the whole deck is read; cards
    // may arrive in any order.
    for (const auto& p : pending) {
        for (NodeId n : p.nodes)
            if (!deck.mesh.nodes.count(n))
                throw ParseError("element " + std::to_string(p.id) +
                                 " references undefined GRID " + std::to_string(n), p.line);
        try {
            deck.mesh.add_element(p.id, p.kind, p.nodes);
        } catch (const TopologyError& err) {
            throw ParseError(err.what(), p.line);
        }
        deck.property_ids[p.id] = p.pid;
    }
    return deck;
}

BulkDeck parse_bdf_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    return parse_bdf(in);
}

std::string write_bdf(const BulkDeck& deck, const std::optional<std::set<ElementId>>& selection)
{
    std::set<ElementId> chosen;
    if (selection) {
        if (selection->empty())
            throw Error("a panel deck must contain at least one element");
        for (ElementId e : *selection)
            if (!deck.mesh.elements.count(e))
                throw Error("selection references unknown element " + std::to_string(e));
        chosen = *selection;
    } else {
        for (const auto& [eid, element] : deck.mesh.elements)
            chosen.insert(eid);
    }

    std::set<NodeId> needed;
    for (ElementId e : chosen) {
        const auto& conn = deck.mesh.elements.at(e).nodes;
        needed.insert(conn.begin(), conn.end());
    }

    std::ostringstream out;
    for (NodeId n : needed) {
        const auto& node = deck.mesh.nodes.at(n);
        out << "GRID    " << format_field_int(n) << std::string(8, ' ');
        if (node.coords) {
            out << format_field_real((*node.coords)[0]) << format_field_real((*node.coords)[1])
                << format_field_real((*node.coords)[2]);
        }
        out << "\n";
    }
    for (ElementId e : chosen) {
        const auto& element = deck.mesh.elements.at(e);
        const auto pid_it = deck.property_ids.find(e);
        const int pid = pid_it == deck.property_ids.end() ? 1 : pid_it->second;
        out << (element.kind == ElementKind::Tri ? "CTRIA3  " : "CQUAD4  ");
        out << format_field_int(e) << format_field_int(pid);
        for (NodeId n : element.nodes)
            out << format_field_int(n);
        out << "\n";
    }
    return out.str();
}

} // namespace panelize
