#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "panelize/errors.hpp"

namespace panelize {

struct Material {
    double E = 0;       // Pa
    double nu = 0;      // -
    double rho = 0;     // kg/m^3
    double sigma_y = 0; // Pa

    void validate() const;
};

struct PanelDesign {
    double t = 0;       // skin thickness, m
    double t_stiff = 0; // stiffener thickness, m
    double h_stiff = 0; // stiffener height, m
};

struct DesignBounds {
    double t_min = 0, t_max = 0;
    double t_stiff_min = 0, t_stiff_max = 0;
    double h_stiff_min = 0, h_stiff_max = 0;

    void validate() const;
};

// In-plane running loads on the panel boundary, N/m. Positive nx/ny compress.
// The isolated panel is treated as simply supported on all edges.
struct PanelLoads {
    double nx = 0;
    double ny = 0;
    double nxy = 0;
};

// Planform of the idealized rectangular panel: a along the stiffeners, b
// across them. Connectivity gives no dimensions, so these come from config.
struct PanelGeometry {
    double a = 0;
    double b = 0;
    int n_stiff = 0;
    double stiffener_length = 0; // usually = a

    double area() const { return a * b; }
    void validate() const;
};

struct AnalysisResult {
    double weight = 0;       // kg
    double sigma_vm_max = 0; // Pa
    double lambda_p = 0;     // first buckling load factor, valid when critical
    bool buckling_critical = false; // false = no compressive/shear demand
};

// Smeared-stiffener simply-supported plate surrogate. Membrane stress works
// on the effective thickness t_eff = t + n*t_stiff*h_stiff/b; buckling uses
// orthotropic bending stiffness from the skin plus stiffener area moments,
// minimized over mode numbers m,n in 1..20, shear via the classical k_s
// coefficient, combined through the R_c + R_s^2 = 1 interaction.
AnalysisResult analyze_panel(const PanelDesign& design, const Material& material,
                             const PanelLoads& loads, const PanelGeometry& geom);

struct AnalysisGradients {
    std::array<double, 3> d_weight{};   // d/d(t, t_stiff, h_stiff)
    std::array<double, 3> d_lambda_p{}; // valid when buckling_critical
    bool buckling_critical = false;
};

// Analytic sensitivities: weight terms are exact; lambda_p differentiates the
// active buckling mode and the shear interaction implicitly.
AnalysisGradients analyze_panel_gradients(const PanelDesign& design, const Material& material,
                                          const PanelLoads& loads, const PanelGeometry& geom);

struct GradientCheckEntry {
    std::string quantity; // "weight" or "lambda_p"
    std::string variable; // "t", "t_stiff", "h_stiff"
    double analytic = 0;
    double finite_difference = 0;
    double rel_error = 0;
    bool pass = false;
};

struct GradientReport {
    std::vector<GradientCheckEntry> entries;
    bool all_pass = false;
};

// Central finite differences with relative step 1e-6 against the analytic
// gradients; lambda entries must agree within 1e-4 relative, weight entries
// to machine precision.
GradientReport gradient_check(const PanelDesign& design, const Material& material,
                              const PanelLoads& loads, const PanelGeometry& geom);

enum class OptStatus { Feasible, Infeasible };

struct OptResult {
    PanelDesign design;
    AnalysisResult analysis;
    OptStatus status = OptStatus::Infeasible;
    double max_violation = 0; // relative, 0 when feasible
};

// Sizing constraints: lambda_p >= 1.05 when buckling is critical, and
// sigma_vm_max <= sigma_y, both with 1e-6 relative tolerance.
inline constexpr double kLambdaRequired = 1.05;
inline constexpr double kConstraintTol = 1e-6;

// Box-constrained coordinate pattern search with shrinking step and an
// 8-point seeded multistart. Feasibility-first comparison: any feasible point
// beats any infeasible one; among infeasible, smaller worst violation wins.
// Deterministic for a fixed seed.
OptResult optimize_panel(const Material& material, const PanelLoads& loads,
                         const PanelGeometry& geom, const DesignBounds& bounds,
                         std::uint64_t seed);

// Total sizing variables for a wing box layout: three per skin panel bay of
// the (n_spars+1) x (n_ribs+1) grid the spars and ribs cut the skin into.
long long count_design_variables(int n_spars, int n_ribs);

// Deterministic stream-splitting mix so per-panel optimizer seeds do not
// depend on worker scheduling or std::hash.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

} // namespace panelize
