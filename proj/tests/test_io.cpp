#include <carnot/io.hpp>

#include <doctest.h>

using namespace carnot;

TEST_CASE("algebra JSON round trip")
{
    for (const auto* name : {"heisenberg", "engel", "free:2:3"}) {
        const auto a = *algebra_preset(name);
        const auto j = algebra_to_json(a.def());
        const auto back = StratifiedAlgebra::create(algebra_from_json(j));
        INFO(std::string(name));
        CHECK(back.layer_dims() == a.layer_dims());
        CHECK(back.def().brackets == a.def().brackets);
        CHECK(back.def().witnesses == a.def().witnesses);
        CHECK(back.validate().ok());
    }
}

TEST_CASE("rationals parse in all supported spellings")
{
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("-7") == -7);
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("0.5") == Rational(1, 2));
    CHECK(parse_rational("-1.25") == Rational(-5, 4));
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK(rational_to_string(Rational(3, 4)) == "3/4");
    CHECK(rational_to_string(Rational(-8, 2)) == "-4");
}

TEST_CASE("antisymmetric completion and normalization on read")
{
    // brackets given as j > i are flipped into canonical form
    Json j;
    j["layer_dims"] = {2, 1};
    j["brackets"] = Json::array({Json{{"i", 2}, {"j", 1}, {"out", {{"3", "-1"}}}}});
    const auto def = algebra_from_json(j);
    const auto a = StratifiedAlgebra::create(def);
    CHECK(a.validate().ok());
    CHECK(a.kappa(std::vector<int>{0, 1}, 2) == 1);
}

TEST_CASE("loader rejects invalid definitions with a readable message")
{
    Json j;
    j["layer_dims"] = {2, 1};
    j["brackets"] = Json::array({Json{{"i", 1}, {"j", 2}, {"out", {{"1", "1"}}}}});
    const auto tmp = std::string("/tmp/carnot_bad_algebra.json");
    write_json_file(tmp, j);
    CHECK_THROWS_WITH_AS(load_algebra(tmp), doctest::Contains("grading"),
                         std::invalid_argument);
}

TEST_CASE("family JSON round trip")
{
    const auto f = counterexample_family();
    const auto j = family_to_json(f);
    const auto back = family_from_json(j);
    CHECK(back.dim == f.dim);
    CHECK(back.coordinate_weights == f.coordinate_weights);
    REQUIRE(back.fields.size() == f.fields.size());
    for (size_t i = 0; i < f.fields.size(); ++i) CHECK(back.fields[i] == f.fields[i]);
    CHECK(back.base_point == f.base_point);
}

TEST_CASE("quadrature JSON rejects unknown keys")
{
    Json j;
    j["method"] = "gauss";
    j["points_per_axis"] = 24;
    j["box_halfwidths"] = {1.0, 2.0};
    const auto spec = quadrature_from_json(j);
    CHECK(spec.points_per_axis == 24);
    j["surprise"] = 1;
    CHECK_THROWS_AS(quadrature_from_json(j), std::invalid_argument);
}

TEST_CASE("polynomial JSON round trip")
{
    Polynomial p(3);
    p.add_term({1, 0, 2}, Rational(-7, 3));
    p.add_term({0, 0, 0}, Rational(5));
    const auto back = polynomial_from_json(polynomial_to_json(p), 3);
    CHECK(back == p);
}

TEST_CASE("report serialization carries the headline fields")
{
    ValidationReport vr;
    vr.violations.push_back({"grading", {0, 1, 0}, "detail"});
    const auto j = validation_to_json(vr);
    CHECK(j["valid"] == false);
    CHECK(j["axiom_violations"].size() == 1);
    CHECK(j["axiom_violations"][0]["indices"] == Json::array({1, 2, 1}));

    HardyReport hr;
    hr.s = 1;
    hr.lhs = 2.5;
    CHECK(hardy_report_to_json(hr)["lhs"] == 2.5);
}

TEST_CASE("load_algebra resolves presets and load_family resolves the counterexample")
{
    CHECK(load_algebra("heisenberg2").dim() == 5);
    CHECK(load_algebra("free:2:3").dim() == 5);
    CHECK(load_family("counterexample").dim == 5);
    CHECK(load_family("engel").fields.size() == 2);
    CHECK_THROWS(load_algebra("/nonexistent/path.json"));
}
