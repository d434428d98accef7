#include <catch2/catch.hpp>

#include "confmodels/catalog.hpp"
#include "confmodels/io.hpp"

using namespace confmodels;

namespace {

std::string data(const std::string& name) { return std::string(CONFMODELS_TEST_DATA) + "/" + name; }

std::string parse_error_path(const std::string& text)
{
    try {
        parse_algebra_json(text);
    } catch (const ParseError& e) {
        return e.path();
    }
    return "";
}

}  // namespace

TEST_CASE("catalog spec syntax")
{
    auto s = parse_catalog_spec("cp2_sum(3)");
    CHECK(s.key == "cp2_sum");
    CHECK(s.params == std::vector<std::string>{"3"});
    auto t = parse_catalog_spec("cp 1");
    CHECK(t.key == "cp");
    CHECK(t.params == std::vector<std::string>{"1"});
    auto p = parse_catalog_spec("product(sphere(1),torus)");
    CHECK(p.key == "product");
    CHECK(p.params == std::vector<std::string>{"sphere(1)", "torus"});
    CHECK(catalog_get("sphere 1")->name() == catalog_get("sphere(1)")->name());
}

TEST_CASE("catalog errors")
{
    CHECK_THROWS_AS(catalog_get("klein(2)"), CatalogError);
    try {
        catalog_get("cp(4)");
        FAIL("cp(4) accepted");
    } catch (const CatalogError& e) {
        CHECK(e.kind() == CatalogError::Kind::BadParams);
    }
    try {
        catalog_get("nothing");
        FAIL("unknown key accepted");
    } catch (const CatalogError& e) {
        CHECK(e.kind() == CatalogError::Kind::UnknownKey);
    }
}

TEST_CASE("catalog shapes")
{
    CHECK(genus(3)->dim() == 8);
    CHECK(cp2_sum(3)->dim() == 5);
    CHECK(complex_projective(3)->formal_dimension() == 6);
    auto s2s2 = catalog_get("product(sphere(1),sphere(1))");
    CHECK(s2s2->algebra().dims_by_degree() == cp2_sum(2)->algebra().dims_by_degree());
    // S^2 x T has Betti numbers 1, 2, 2, 2, 1.
    auto s2t = catalog_get("product(sphere(1),torus)");
    CHECK(s2t->dim() == 8);
    CHECK(s2t->algebra().dims_by_degree() == std::vector<int>{1, 2, 2, 2, 1});
    CHECK(s2t->formal_dimension() == 4);
    for (const auto& e : catalog_entries())
        CHECK_NOTHROW(catalog_get(e.example));
}

TEST_CASE("algebra JSON parsing reports field paths")
{
    CHECK(parse_error_path("[1]") == "$");
    CHECK(parse_error_path("{") == "$");
    CHECK(parse_error_path(R"({"name":"x","formal_dimension":2,"basis":[{"label":"1","degree":0}]})") == "$.orientation");
    CHECK(parse_error_path(R"({"name":"x","formal_dimension":"2","basis":[],"orientation":"w"})") == "$.formal_dimension");
    CHECK(parse_error_path(R"({"name":"x","formal_dimension":2,"basis":[{"label":"1"}],"orientation":"w"})") == "$.basis[0].degree");
    CHECK(parse_error_path(R"({"name":"x","formal_dimension":2,"basis":[],"orientation":"w","products":[{"left":"a","right":"b","value":[["w",true]]}]})") == "$.products[0].value[0][1]");
    CHECK_THROWS_AS(read_algebra_file(data("missing_orientation.json")), ParseError);
    CHECK_THROWS_AS(read_algebra_file(data("does_not_exist.json")), ParseError);
}

TEST_CASE("canonical JSON ignores key order and rational spelling")
{
    PDAlgebra a = validate_algebra(read_algebra_file(data("genus2.json")));
    PDAlgebra b = validate_algebra(read_algebra_file(data("genus2_reordered.json")));
    CHECK(canonical_algebra_json(a) == canonical_algebra_json(b));
    CHECK(canonical_algebra_json(a) != canonical_algebra_json(*genus(2)));  // basis order differs
    PDAlgebra c = validate_algebra(parse_algebra_json(canonical_algebra_json(a)));
    CHECK(canonical_algebra_json(c) == canonical_algebra_json(a));
}
