#include <doctest.h>

#include <cmath>
#include <set>

#include "panelize/panel_opt.hpp"

using namespace panelize;
using doctest::Approx;

namespace {

// 2024-class aluminum, half-meter square bay with three blades.
Material aluminum()
{
    Material m;
    m.E = 71e9;
    m.nu = 0.33;
    m.rho = 2800.0;
    m.sigma_y = 345e6;
    return m;
}

PanelGeometry bay()
{
    PanelGeometry g;
    g.a = 0.5;
    g.b = 0.5;
    g.n_stiff = 3;
    g.stiffener_length = 0.5;
    return g;
}

DesignBounds bay_bounds()
{
    DesignBounds b;
    b.t_min = 0.001;
    b.t_max = 0.012;
    b.t_stiff_min = 0.001;
    b.t_stiff_max = 0.010;
    b.h_stiff_min = 0.005;
    b.h_stiff_max = 0.080;
    return b;
}

const double kPi = std::acos(-1.0);

} // namespace

TEST_SUITE("panel_opt") {

TEST_CASE("weight and membrane stress follow the smeared section")
{
    const PanelDesign d{0.002, 0.0015, 0.04};
    const PanelGeometry g = bay();
    const Material mat = aluminum();

    const AnalysisResult r = analyze_panel(d, mat, {2e5, 0, 0}, g);
    const double expected_weight =
        mat.rho * (d.t * g.a * g.b + g.n_stiff * d.t_stiff * d.h_stiff * g.stiffener_length);
    CHECK(r.weight == Approx(expected_weight).epsilon(1e-12));

    const double t_eff = d.t + g.n_stiff * d.t_stiff * d.h_stiff / g.b;
    CHECK(t_eff == Approx(0.00236).epsilon(1e-12));
    CHECK(r.sigma_vm_max == Approx(2e5 / t_eff).epsilon(1e-12));

    // Biaxial plus shear von Mises, still on the effective thickness.
    const AnalysisResult r2 = analyze_panel(d, mat, {2e5, 1e5, 5e4}, g);
    const double sx = 2e5 / t_eff, sy = 1e5 / t_eff, txy = 5e4 / t_eff;
    CHECK(r2.sigma_vm_max ==
          Approx(std::sqrt(sx * sx - sx * sy + sy * sy + 3 * txy * txy)).epsilon(1e-12));
}

TEST_CASE("pure tension is never buckling critical")
{
    const AnalysisResult r = analyze_panel({0.002, 0.0015, 0.04}, aluminum(), {-2e5, -1e5, 0}, bay());
    CHECK(!r.buckling_critical);
    CHECK(r.lambda_p == 0.0);
    CHECK(r.sigma_vm_max > 0.0);

    const AnalysisResult r0 = analyze_panel({0.002, 0.0015, 0.04}, aluminum(), {}, bay());
    CHECK(!r0.buckling_critical);
    CHECK(r0.sigma_vm_max == 0.0);
}

TEST_CASE("unstiffened square plate recovers the classical coefficient")
{
    // Simply supported isotropic plate under uniaxial compression: the
    // critical running load is 4 pi^2 D / b^2.
    const Material mat = aluminum();
    PanelGeometry g;
    g.a = 0.5;
    g.b = 0.5;
    g.n_stiff = 0;
    const PanelDesign d{0.002, 0.0, 0.0};
    const double nx = 1e4;

    const AnalysisResult r = analyze_panel(d, mat, {nx, 0, 0}, g);
    REQUIRE(r.buckling_critical);
    const double D = mat.E * d.t * d.t * d.t / (12.0 * (1.0 - mat.nu * mat.nu));
    CHECK(r.lambda_p * nx == Approx(4.0 * kPi * kPi * D / (g.b * g.b)).epsilon(1e-9));

    // Aspect ratio 3 buckles into three half-waves at the same coefficient.
    g.a = 1.5;
    const AnalysisResult r3 = analyze_panel(d, mat, {nx, 0, 0}, g);
    CHECK(r3.lambda_p * nx == Approx(4.0 * kPi * kPi * D / (g.b * g.b)).epsilon(1e-9));
}

TEST_CASE("pure shear uses the classical shear coefficient")
{
    const Material mat = aluminum();
    PanelGeometry g;
    g.a = 0.5;
    g.b = 0.5;
    g.n_stiff = 0;
    const PanelDesign d{0.002, 0.0, 0.0};
    const double nxy = 5e4;

    const AnalysisResult r = analyze_panel(d, mat, {0, 0, nxy}, g);
    REQUIRE(r.buckling_critical);
    const double D = mat.E * d.t * d.t * d.t / (12.0 * (1.0 - mat.nu * mat.nu));
    const double ks = 5.34 + 4.0; // square panel
    CHECK(r.lambda_p * nxy == Approx(ks * kPi * kPi * D / (g.b * g.b)).epsilon(1e-9));

    // Sign of the shear flow is irrelevant.
    const AnalysisResult rn = analyze_panel(d, mat, {0, 0, -nxy}, g);
    CHECK(rn.lambda_p == r.lambda_p);
}

TEST_CASE("combined load factor satisfies the interaction equation")
{
    const PanelDesign d{0.004, 0.002, 0.03};
    const Material mat = aluminum();
    const PanelGeometry g = bay();

    const double lc = analyze_panel(d, mat, {2e5, 5e4, 0}, g).lambda_p;
    const double ls = analyze_panel(d, mat, {0, 0, 8e4}, g).lambda_p;
    const double l = analyze_panel(d, mat, {2e5, 5e4, 8e4}, g).lambda_p;
    CHECK(l < lc);
    CHECK(l < ls);
    CHECK(l / lc + (l / ls) * (l / ls) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("doubling the loads exactly halves the load factor")
{
    const PanelDesign d{0.004, 0.002, 0.03};
    const AnalysisResult one = analyze_panel(d, aluminum(), {2e5, 5e4, 8e4}, bay());
    const AnalysisResult two = analyze_panel(d, aluminum(), {4e5, 1e5, 1.6e5}, bay());
    CHECK(two.lambda_p == one.lambda_p / 2.0);
    CHECK(two.sigma_vm_max == Approx(2.0 * one.sigma_vm_max).epsilon(1e-14));
}

TEST_CASE("input validation")
{
    const PanelDesign d{0.002, 0.0015, 0.04};
    const PanelLoads loads{2e5, 0, 0};

    Material bad = aluminum();
    bad.E = 0;
    CHECK_THROWS_AS(analyze_panel(d, bad, loads, bay()), AnalysisError);
    bad = aluminum();
    bad.nu = 0.5;
    CHECK_THROWS_AS(analyze_panel(d, bad, loads, bay()), AnalysisError);

    PanelGeometry g = bay();
    g.b = 0;
    CHECK_THROWS_WITH_AS(analyze_panel(d, aluminum(), loads, g),
                         "panel planform must have positive a and b", AnalysisError);
    g = bay();
    g.n_stiff = -1;
    CHECK_THROWS_AS(analyze_panel(d, aluminum(), loads, g), AnalysisError);

    CHECK_THROWS_AS(analyze_panel({0.0, 0.001, 0.01}, aluminum(), loads, bay()), AnalysisError);
    CHECK_THROWS_AS(analyze_panel({0.002, -0.001, 0.01}, aluminum(), loads, bay()), AnalysisError);

    DesignBounds b = bay_bounds();
    b.t_min = 0;
    CHECK_THROWS_WITH_AS(optimize_panel(aluminum(), loads, bay(), b, 0),
                         "design bounds must be positive", AnalysisError);
    b = bay_bounds();
    b.h_stiff_min = 0.1;
    CHECK_THROWS_WITH_AS(optimize_panel(aluminum(), loads, bay(), b, 0),
                         "design bounds must satisfy min <= max", AnalysisError);
}

TEST_CASE("analytic gradients agree with finite differences")
{
    const Material mat = aluminum();
    const PanelGeometry g = bay();

    SUBCASE("compression only")
    {
        const GradientReport rep = gradient_check({0.004, 0.002, 0.03}, mat, {2e5, 5e4, 0}, g);
        CHECK(rep.all_pass);
        CHECK(rep.entries.size() == 6);
    }
    SUBCASE("shear only")
    {
        const GradientReport rep = gradient_check({0.004, 0.002, 0.03}, mat, {0, 0, 8e4}, g);
        CHECK(rep.all_pass);
    }
    SUBCASE("combined interaction")
    {
        const GradientReport rep = gradient_check({0.004, 0.002, 0.03}, mat, {2e5, 5e4, 8e4}, g);
        CHECK(rep.all_pass);
        for (const auto& e : rep.entries) {
            INFO(e.quantity, "/", e.variable, " rel_error ", e.rel_error);
            CHECK(e.pass);
        }
    }
    SUBCASE("zero stiffener thickness takes the one-sided path")
    {
        const GradientReport rep = gradient_check({0.003, 0.0, 0.02}, mat, {2e5, 0, 0}, g);
        CHECK(rep.all_pass);
    }
    SUBCASE("tension panel reports weight entries only")
    {
        const GradientReport rep = gradient_check({0.004, 0.002, 0.03}, mat, {-2e5, 0, 0}, g);
        CHECK(rep.all_pass);
        CHECK(rep.entries.size() == 3);
        for (const auto& e : rep.entries)
            CHECK(e.quantity == "weight");
    }
}

TEST_CASE("weight gradients are the exact section derivatives")
{
    const PanelDesign d{0.004, 0.002, 0.03};
    const Material mat = aluminum();
    const PanelGeometry g = bay();
    const AnalysisGradients grads = analyze_panel_gradients(d, mat, {2e5, 0, 0}, g);
    CHECK(grads.d_weight[0] == Approx(mat.rho * g.a * g.b).epsilon(1e-14));
    CHECK(grads.d_weight[1] ==
          Approx(mat.rho * g.n_stiff * d.h_stiff * g.stiffener_length).epsilon(1e-14));
    CHECK(grads.d_weight[2] ==
          Approx(mat.rho * g.n_stiff * d.t_stiff * g.stiffener_length).epsilon(1e-14));
}

TEST_CASE("design variable counting")
{
    CHECK(count_design_variables(0, 0) == 3);
    CHECK(count_design_variables(1, 37) == 228);
    CHECK(count_design_variables(8, 7) == 216);
    CHECK_THROWS_AS(count_design_variables(-1, 3), AnalysisError);
    CHECK_THROWS_AS(count_design_variables(3, -1), AnalysisError);
}

TEST_CASE("seed mixing is a deterministic injection per stream")
{
    CHECK(mix_seed(7, 3) == mix_seed(7, 3));
    CHECK(mix_seed(7, 3) != mix_seed(7, 4));
    CHECK(mix_seed(7, 3) != mix_seed(8, 3));
    std::set<std::uint64_t> seen;
    for (std::uint64_t stream = 0; stream < 1000; ++stream)
        seen.insert(mix_seed(42, stream));
    CHECK(seen.size() == 1000);
}

TEST_CASE("optimizer is deterministic for a fixed seed")
{
    const PanelLoads loads{2e5, 0, 0};
    const OptResult a = optimize_panel(aluminum(), loads, bay(), bay_bounds(), 17);
    const OptResult b = optimize_panel(aluminum(), loads, bay(), bay_bounds(), 17);
    CHECK(a.design.t == b.design.t);
    CHECK(a.design.t_stiff == b.design.t_stiff);
    CHECK(a.design.h_stiff == b.design.h_stiff);
    CHECK(a.analysis.weight == b.analysis.weight);
}

TEST_CASE("reference compression bay sizes against the buckling constraint")
{
    const PanelLoads loads{2e5, 0, 0};
    const OptResult r = optimize_panel(aluminum(), loads, bay(), bay_bounds(), 0);
    REQUIRE(r.status == OptStatus::Feasible);
    CHECK(r.max_violation == 0.0);
    REQUIRE(r.analysis.buckling_critical);
    // Minimum weight pushes the skin to the gauge floor and rides the
    // stability boundary within the constraint tolerance.
    CHECK(r.design.t == bay_bounds().t_min);
    CHECK(r.analysis.lambda_p >= kLambdaRequired * (1.0 - kConstraintTol));
    CHECK(r.analysis.lambda_p <= kLambdaRequired * 1.02);
    CHECK(r.analysis.sigma_vm_max <= aluminum().sigma_y);

    // A different seed lands on the same optimum within a hair.
    const OptResult r1 = optimize_panel(aluminum(), loads, bay(), bay_bounds(), 1);
    REQUIRE(r1.status == OptStatus::Feasible);
    CHECK(r1.analysis.weight == Approx(r.analysis.weight).epsilon(0.01));
}

TEST_CASE("a tension-only panel sits exactly on the gauge floor")
{
    const PanelLoads loads{-1e5, 0, 0};
    const DesignBounds b = bay_bounds();
    const OptResult r = optimize_panel(aluminum(), loads, bay(), b, 5);
    REQUIRE(r.status == OptStatus::Feasible);
    CHECK(!r.analysis.buckling_critical);
    // Every descent path ends on the lower corner of the box, bit for bit.
    CHECK(r.design.t == b.t_min);
    CHECK(r.design.t_stiff == b.t_stiff_min);
    CHECK(r.design.h_stiff == b.h_stiff_min);
}

TEST_CASE("impossible bounds come back infeasible with the violation")
{
    DesignBounds b;
    b.t_min = 0.0005;
    b.t_max = 0.001;
    b.t_stiff_min = 1e-4;
    b.t_stiff_max = 2e-4;
    b.h_stiff_min = 0.001;
    b.h_stiff_max = 0.002;
    PanelGeometry g = bay();
    g.n_stiff = 1;
    const OptResult r = optimize_panel(aluminum(), {5e7, 0, 0}, g, b, 0);
    CHECK(r.status == OptStatus::Infeasible);
    CHECK(r.max_violation > 0.0);
    CHECK(r.analysis.sigma_vm_max > aluminum().sigma_y);
}

} // TEST_SUITE
