#include <carnot/algebra.hpp>

#include <doctest.h>

using namespace carnot;

TEST_CASE("presets validate cleanly")
{
    for (const auto* name : {"heisenberg", "heisenberg2", "engel", "abelian3"}) {
        const auto a = *algebra_preset(name);
        const auto report = a.validate();
        INFO(name);
        CHECK(report.ok());
    }
}

TEST_CASE("abelian R^n is valid with zero structure constants")
{
    const auto a = abelian(4);
    CHECK(a.validate().ok());
    CHECK(a.homogeneous_dimension() == 4);
    CHECK(a.step() == 1);
}

TEST_CASE("grading violation is detected with witnessing indices")
{
    auto def = heisenberg(1).def();
    def.brackets[{0, 1}][0] = Rational(1); // extra c_{12}^1
    const auto report = StratifiedAlgebra::validate_def(def);
    CHECK_FALSE(report.ok());
    REQUIRE_FALSE(report.violations.empty());
    bool found = false;
    for (const auto& v : report.violations)
        if (v.axiom == "grading" && v.indices == std::vector<int>{0, 1, 0}) found = true;
    CHECK(found);
}

TEST_CASE("malformed definitions are structural errors, not axiom failures")
{
    AlgebraDef def;
    def.layer_dims = {2, -1};
    const auto report = StratifiedAlgebra::validate_def(def);
    CHECK_FALSE(report.structural.empty());
    CHECK(report.violations.empty());
    CHECK_THROWS_AS(StratifiedAlgebra::create(def), std::invalid_argument);
}

TEST_CASE("jacobi violation is detected")
{
    // dims (2,1,1) with [Y1,Y2]=Y3, [Y1,Y3]=Y4, [Y2,Y3]=Y4 satisfies grading
    // but [Y2,[Y1,Y2]] - type cyclic sums need Jacobi; build a broken variant
    // by wiring inconsistent double brackets at step 4.
    AlgebraDef def;
    def.layer_dims = {2, 1, 2};
    def.brackets[{0, 1}] = {{2, Rational(1)}};
    def.brackets[{0, 2}] = {{3, Rational(1)}};
    def.brackets[{1, 2}] = {{4, Rational(1)}};
    auto ok = StratifiedAlgebra::validate_def(def);
    CHECK(ok.ok()); // this is free(2,3), consistent

    def.brackets[{1, 2}] = {{3, Rational(1)}}; // [Y2,[Y1,Y2]] aliased to Y4-slot of [Y1,.]
    // still graded; Jacobi on (0,1,2) now fails to cancel generation or jacobi
    const auto report = StratifiedAlgebra::validate_def(def);
    CHECK_FALSE(report.ok());
}

TEST_CASE("bracket of coordinate vectors")
{
    const auto h = heisenberg(1);
    std::vector<Rational> e1{1, 0, 0}, e2{0, 1, 0};
    const auto b = h.bracket(e1, e2);
    CHECK(b == std::vector<Rational>{0, 0, 1});
    // antisymmetry: [u,u] = 0
    std::vector<Rational> u{Rational(2), Rational(-3, 7), Rational(5)};
    for (const auto& c : h.bracket(u, u)) CHECK(c == 0);

    const auto e = engel();
    std::vector<Rational> f1{1, 0, 0, 0}, f3{0, 0, 1, 0};
    CHECK(e.bracket(f1, f3) == std::vector<Rational>{0, 0, 0, 1});
}

TEST_CASE("kappa coefficients")
{
    const auto h = heisenberg(1);
    CHECK(h.kappa(std::vector<int>{0, 1}, 2) == 1);
    CHECK(h.kappa(std::vector<int>{1, 0}, 2) == -1);
    // weight mismatch short-circuit
    CHECK(h.kappa(std::vector<int>{0, 1}, 0) == 0);

    const auto e = engel();
    CHECK(e.kappa(std::vector<int>{0, 0, 1}, 3) == 1);
    CHECK(e.kappa(std::vector<int>{0, 1, 0}, 3) == -1);
}

TEST_CASE("homogeneous dimension")
{
    CHECK(heisenberg(1).homogeneous_dimension() == 4);
    CHECK(heisenberg(2).homogeneous_dimension() == 6);
    CHECK(engel().homogeneous_dimension() == 7);
    CHECK(abelian(5).homogeneous_dimension() == 5);
}

TEST_CASE("free nilpotent layer dimensions match the Witt formula")
{
    CHECK(free_nilpotent(2, 2).layer_dims() == std::vector<int>{2, 1});
    CHECK(free_nilpotent(2, 3).layer_dims() == std::vector<int>{2, 1, 2});
    CHECK(free_nilpotent(2, 4).layer_dims() == std::vector<int>{2, 1, 2, 3});
    CHECK(free_nilpotent(3, 3).layer_dims() == std::vector<int>{3, 3, 8});
    CHECK(free_nilpotent(1, 1).layer_dims() == std::vector<int>{1});
    CHECK(free_nilpotent(2, 3).homogeneous_dimension() == 10);
}

TEST_CASE("free nilpotent algebras validate for g <= 3, m <= 4")
{
    for (int g = 1; g <= 3; ++g)
        for (int m = 1; m <= 4; ++m) {
            if (g == 1 && m > 1) continue; // abelian line only
            INFO("free(" << g << "," << m << ")");
            const auto a = free_nilpotent(g, m, 64);
            CHECK(a.validate().ok());
        }
}

TEST_CASE("free(2,2) matches the Heisenberg structure constants")
{
    const auto f = free_nilpotent(2, 2);
    const auto h = heisenberg(1);
    CHECK(f.layer_dims() == h.layer_dims());
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(f.basis_bracket(i, j) == h.basis_bracket(i, j));
}

TEST_CASE("dimension cap guards the free construction")
{
    CHECK_THROWS_AS(free_nilpotent(3, 4, 10), std::length_error);
}

TEST_CASE("witness search")
{
    const auto found = find_bracket_witnesses(engel());
    REQUIRE(found.complete());
    CHECK(found.found.at(2) == std::vector<int>{0, 1});
    CHECK(found.found.at(3) == std::vector<int>{0, 0, 1});
    CHECK(found.found.at(0) == std::vector<int>{0});

    const auto h2 = find_bracket_witnesses(heisenberg(2));
    REQUIRE(h2.complete());
    CHECK(h2.found.at(4).size() == 2);
}

TEST_CASE("witness consistency is validated")
{
    auto def = engel().def();
    def.witnesses[3] = {1, 0, 1}; // wrong word: [Y2,[Y1,Y2]] = 0 != Y4
    const auto report = StratifiedAlgebra::validate_def(def);
    bool found = false;
    for (const auto& v : report.violations)
        if (v.axiom == "witness") found = true;
    CHECK(found);
}

TEST_CASE("free nilpotent witnesses evaluate through the brackets")
{
    for (const auto& a : {free_nilpotent(2, 4), free_nilpotent(3, 3)}) {
        CHECK(a.validate().ok()); // includes stored-witness consistency
        CHECK(static_cast<int>(a.witnesses().size()) == a.dim());
    }
}
