#pragma once

#include <optional>
#include <string>
#include <vector>

#include "panelize/extract.hpp"

namespace panelize {

// One stiffener chain as stored per panel. note carries association
// diagnostics ("ambiguous: also shares 2 nodes with panel 2"), empty if none.
struct StiffenerRecord {
    std::vector<ElementId> elements; // chain order, end to end
    std::string note;
};

struct DesignRecord {
    double t = 0;
    double t_stiff = 0;
    double h_stiff = 0;
    double weight = 0;
    double sigma_vm_max = 0;
    std::optional<double> lambda_p; // absent = buckling non-critical
    std::string status;             // FEASIBLE or INFEASIBLE
};

struct ManifestPanel {
    int id = 0;
    std::vector<ElementId> elements;
    std::vector<NodeId> nodes;
    std::vector<NodeId> boundary;
    std::vector<std::vector<NodeId>> inner_boundaries;
    std::vector<StiffenerRecord> stiffeners;
    std::optional<DesignRecord> design;
};

struct HistoryRecord {
    int iteration = 0;
    double total_weight = 0;
    std::optional<double> delta_pct; // defined from the second iteration on
    int infeasible_panels = 0;
    std::string global_constraints; // provider flag: "unverified", "ok", "violated"
};

// The decomposition document the CLI passes between stages. format_version
// gates schema evolution; readers reject versions they do not know.
struct Manifest {
    int format_version = 1;
    std::vector<ManifestPanel> panels;
    std::vector<HistoryRecord> history; // filled by optimize
    std::string status;                 // loop exit status, empty before optimize

    static Manifest from_panels(const std::vector<Panel>& panels);
};

Manifest read_manifest(const std::string& path);
Manifest parse_manifest(const std::string& text);
std::string manifest_to_string(const Manifest& m);
void write_manifest(const Manifest& m, const std::string& path);

} // namespace panelize
