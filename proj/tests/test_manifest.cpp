#include <doctest.h>

#include <cstdio>

#include "fixtures.hpp"
#include "panelize/manifest.hpp"

using namespace panelize;

namespace {

Manifest full_manifest()
{
    Manifest m;
    ManifestPanel p;
    p.id = 1;
    p.elements = {1, 2, 3};
    p.nodes = {1, 2, 3, 6, 7};
    p.boundary = {1, 2, 7, 6};
    p.inner_boundaries = {{2, 3, 7}};
    StiffenerRecord chain;
    chain.elements = {201, 202};
    chain.note = "ambiguous: also shares 2 nodes with panel 2";
    p.stiffeners.push_back(chain);
    DesignRecord d;
    d.t = 0.002;
    d.t_stiff = 0.0015;
    d.h_stiff = 0.04;
    d.weight = 1.25;
    d.sigma_vm_max = 1.1e8;
    d.lambda_p = 1.0625;
    d.status = "FEASIBLE";
    p.design = d;
    m.panels.push_back(p);

    HistoryRecord h1{1, 2.5, std::nullopt, 1, "unverified"};
    HistoryRecord h2{2, 2.4, 4.0, 0, "ok"};
    m.history = {h1, h2};
    m.status = "CONVERGED";
    return m;
}

} // namespace

TEST_SUITE("manifest") {

TEST_CASE("empty manifest serializes to a fixed string")
{
    CHECK(manifest_to_string(Manifest{}) == R"({"format_version":1,"panels":[]})");
}

TEST_CASE("round trip preserves every field")
{
    const Manifest m = full_manifest();
    const Manifest back = parse_manifest(manifest_to_string(m));

    REQUIRE(back.panels.size() == 1);
    const ManifestPanel& p = back.panels[0];
    CHECK(p.id == 1);
    CHECK(p.elements == std::vector<ElementId>{1, 2, 3});
    CHECK(p.nodes == std::vector<NodeId>{1, 2, 3, 6, 7});
    CHECK(p.boundary == std::vector<NodeId>{1, 2, 7, 6});
    CHECK(p.inner_boundaries == std::vector<std::vector<NodeId>>{{2, 3, 7}});
    REQUIRE(p.stiffeners.size() == 1);
    CHECK(p.stiffeners[0].elements == std::vector<ElementId>{201, 202});
    CHECK(p.stiffeners[0].note == "ambiguous: also shares 2 nodes with panel 2");
    REQUIRE(p.design.has_value());
    CHECK(p.design->t == 0.002);
    CHECK(p.design->lambda_p == 1.0625);
    CHECK(p.design->status == "FEASIBLE");

    REQUIRE(back.history.size() == 2);
    CHECK(!back.history[0].delta_pct.has_value());
    CHECK(back.history[1].delta_pct == 4.0);
    CHECK(back.history[1].global_constraints == "ok");
    CHECK(back.status == "CONVERGED");

    // Serialization is canonical: a second pass is byte-identical.
    CHECK(manifest_to_string(back) == manifest_to_string(m));
}

TEST_CASE("non-critical buckling round-trips through a sentinel")
{
    Manifest m = full_manifest();
    m.panels[0].design->lambda_p.reset();
    const std::string text = manifest_to_string(m);
    CHECK(text.find(R"("lambda_p":"NON_CRITICAL")") != std::string::npos);
    const Manifest back = parse_manifest(text);
    CHECK(!back.panels[0].design->lambda_p.has_value());
}

TEST_CASE("from_panels copies decomposition output")
{
    const Mesh mesh = fixtures::reference_mesh();
    const auto panels = decompose(mesh, build_adjacency(mesh), {fixtures::reference_mid_curve()});
    const Manifest m = Manifest::from_panels(panels);
    REQUIRE(m.panels.size() == 2);
    CHECK(m.panels[0].id == 1);
    CHECK(m.panels[0].elements == std::vector<ElementId>{1, 2, 3, 4, 5, 6, 7, 8});
    CHECK(m.panels[1].elements == std::vector<ElementId>{9, 10, 11, 12, 13, 14, 15, 16});
    CHECK(!m.panels[0].boundary.empty());
    CHECK(m.history.empty());
    CHECK(m.status.empty());
}

TEST_CASE("rejects what it cannot read")
{
    CHECK_THROWS_WITH_AS(parse_manifest("{"), doctest::Contains("manifest:"), ParseError);
    CHECK_THROWS_WITH_AS(parse_manifest("[1,2]"),
                         "manifest: top level must be an object", ParseError);
    CHECK_THROWS_WITH_AS(parse_manifest(R"({"panels":[]})"),
                         "manifest: missing key 'format_version'", ParseError);
    CHECK_THROWS_WITH_AS(parse_manifest(R"({"format_version":2,"panels":[]})"),
                         "manifest: unknown format_version 2", ParseError);
    CHECK_THROWS_WITH_AS(parse_manifest(R"({"format_version":1})"),
                         "manifest: missing 'panels' array", ParseError);
    CHECK_THROWS_WITH_AS(parse_manifest(R"({"format_version":1,"panels":[{"id":1}]})"),
                         "manifest: missing key 'elements'", ParseError);
    CHECK_THROWS_WITH_AS(
        parse_manifest(R"({"format_version":1,"panels":[{"id":"x","elements":[]}]})"),
        doctest::Contains("manifest: bad value for 'id'"), ParseError);
}

TEST_CASE("file round trip")
{
    const std::string path = "manifest_roundtrip_test.json";
    const Manifest m = full_manifest();
    write_manifest(m, path);
    const Manifest back = read_manifest(path);
    CHECK(manifest_to_string(back) == manifest_to_string(m));
    std::remove(path.c_str());
    CHECK_THROWS_WITH_AS(read_manifest(path),
                         ("cannot open '" + path + "'").c_str(), ParseError);
}

} // TEST_SUITE
