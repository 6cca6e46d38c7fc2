#include <carnot/hypo.hpp>
#include <carnot/rng.hpp>

#include <doctest.h>

using namespace carnot;

namespace {

Polynomial var(int n, int i) { return Polynomial::variable(n, i); }

ShellSpec quick_shells()
{
    ShellSpec s;
    s.k_max = 8;
    s.samples_per_shell = 128;
    s.seed = 77;
    return s;
}

/// Z1 = d1, Z2 = d2 + x1 d3 on R^3: a regular step-2 family without a group
/// structure behind it.
FieldFamily step2_family()
{
    FieldFamily f;
    f.dim = 3;
    f.name = "step2";
    f.base_point.assign(3, Rational(0));
    PolyVectorField z1(3), z2(3);
    z1.coeff[0] = Polynomial::constant(3, 1);
    z2.coeff[1] = Polynomial::constant(3, 1);
    z2.coeff[2] = var(3, 0);
    f.fields = {z1, z2};
    return f;
}

} // namespace

TEST_CASE("flag of the rank-3 step-3 family")
{
    const auto f = counterexample_family();
    const auto flag = bracket_flag(f, 4);
    CHECK(flag.dims == std::vector<int>{3, 4, 5});
    REQUIRE(flag.step.has_value());
    CHECK(*flag.step == 3);
    CHECK(flag.hoermander);
    CHECK(flag.regular);
    CHECK(flag.coordinate_weights == std::vector<int>{1, 1, 3, 2, 1});
}

TEST_CASE("group frames reduce to their stratification")
{
    const auto frame = left_invariant_fields(heisenberg(1));
    const auto fam = family_from_frame(frame);
    const auto flag = bracket_flag(fam, 3);
    CHECK(flag.dims == std::vector<int>{2, 3});
    CHECK(*flag.step == 2);
    CHECK(flag.regular);
    CHECK(flag.coordinate_weights == std::vector<int>{1, 1, 2});
    // the greedy basis rediscovers the frame fields themselves
    CHECK(flag.adapted_basis[0].field == frame.fields[0]);
    CHECK(flag.adapted_basis[1].field == frame.fields[1]);
    CHECK(flag.adapted_basis[2].field == frame.fields[2]);
}

TEST_CASE("an irregular family is reported as such")
{
    // (d1, x1 d2): rank 1 on {x1 = 0}, rank 2 elsewhere
    FieldFamily f;
    f.dim = 2;
    f.base_point.assign(2, Rational(0));
    PolyVectorField z1(2), z2(2);
    z1.coeff[0] = Polynomial::constant(2, 1);
    z2.coeff[1] = var(2, 0);
    f.fields = {z1, z2};
    const auto flag = bracket_flag(f, 3);
    CHECK_FALSE(flag.regular);
}

TEST_CASE("a family that never fills the space is flagged")
{
    FieldFamily f;
    f.dim = 2;
    f.base_point.assign(2, Rational(0));
    PolyVectorField z1(2);
    z1.coeff[0] = Polynomial::constant(2, 1);
    f.fields = {z1};
    const auto flag = bracket_flag(f, 4);
    CHECK_FALSE(flag.hoermander);
    CHECK_FALSE(flag.step.has_value());
}

TEST_CASE("flag dimensions are invariant under linear coordinate changes")
{
    Rng rng(13);
    const auto f = counterexample_family();
    const auto base_dims = bracket_flag(f, 3).dims;
    for (int trial = 0; trial < 3; ++trial) {
        // random invertible rational matrix: identity plus a few off-diagonal
        RationalMatrix m = RationalMatrix::identity(5);
        for (int k = 0; k < 6; ++k) {
            const int i = static_cast<int>(rng.below(5));
            const int j = static_cast<int>(rng.below(5));
            if (i == j) continue;
            m(i, j) = Rational(static_cast<long>(rng.below(5)) - 2, 2);
        }
        REQUIRE(m.inverse().has_value());
        const auto minv = *m.inverse();
        // x = m y: transform fields like adapted_coordinates does
        std::vector<Polynomial> subst(5, Polynomial(5));
        for (int r = 0; r < 5; ++r) {
            Polynomial p(5);
            for (int c = 0; c < 5; ++c)
                if (m(r, c) != 0) p += var(5, c) * m(r, c);
            subst[r] = p;
        }
        FieldFamily g;
        g.dim = 5;
        g.base_point.assign(5, Rational(0));
        for (const auto& field : f.fields) {
            PolyVectorField t(5);
            for (int r = 0; r < 5; ++r) {
                Polynomial acc(5);
                for (int k = 0; k < 5; ++k)
                    if (minv(r, k) != 0) acc += field.coeff[k].substitute(subst) * minv(r, k);
                t.coeff[r] = acc;
            }
            g.fields.push_back(t);
        }
        CHECK(bracket_flag(g, 3).dims == base_dims);
    }
}

TEST_CASE("zeta table of the counterexample in its original coordinates")
{
    const auto f = counterexample_family();
    const auto flag = bracket_flag(f, 3);
    const auto z = zeta_table(f, flag);
    CHECK(z.weights == std::vector<int>{1, 1, 3, 2, 1});
    // Z1 = d1 + x1 d3: zeta[0][2] = x1
    CHECK(z.zeta[0][2] == var(5, 0));
    CHECK(z.zeta[1][2] == var(5, 3));
    CHECK(z.zeta[1][3] == var(5, 4));
    CHECK(z.zeta[4][4].is_zero());
    // horizontal fields are the three generators
    CHECK(z.horizontal_coords == std::vector<int>{0, 1, 4});
}

TEST_CASE("well-adaptedness: the counterexample fails exactly at zeta_{1,3}")
{
    const auto f = counterexample_family();
    const auto z = zeta_table(f, bracket_flag(f, 3));
    const auto report = well_adapted_check(z);
    CHECK_FALSE(report.well_adapted);
    REQUIRE(report.violations.size() == 1);
    const auto& v = report.violations.front();
    CHECK(v.field_coord == 0);
    CHECK(v.target_coord == 2);
    CHECK(v.value == 1);
    Polynomial::Exponents e(5, 0);
    e[0] = 1;
    CHECK(v.alpha == e);
}

TEST_CASE("step-2 families are vacuously well-adapted")
{
    const auto f = step2_family();
    const auto flag = bracket_flag(f, 3);
    CHECK(flag.dims == std::vector<int>{2, 3});
    const auto z = zeta_table(f, flag);
    CHECK(well_adapted_check(z).well_adapted);
}

TEST_CASE("quadratic repair recovers the textbook change of variables")
{
    const auto f = counterexample_family();
    const auto z = zeta_table(f, bracket_flag(f, 3));
    const auto rep = step3_repair(f, z);
    CHECK_FALSE(rep.identity);
    CHECK(rep.symmetry_ok);
    // y3 = x3 - x1^2/2, all other coordinates fixed
    CHECK(rep.forward[2] == var(5, 2) - var(5, 0).pow(2) * Rational(1, 2));
    for (int c : {0, 1, 3, 4}) CHECK(rep.forward[c] == var(5, c));
    CHECK(rep.inverse[2] == var(5, 2) + var(5, 0).pow(2) * Rational(1, 2));

    // the integrated dual frame commutes exactly
    for (size_t i = 0; i < rep.dual_frame.size(); ++i)
        for (size_t j = 0; j < rep.dual_frame.size(); ++j)
            CHECK(PolyVectorField::bracket(rep.dual_frame[i], rep.dual_frame[j]).is_zero());

    // the repaired family is Z1' = d1, Z2' unchanged, Z3' = d5
    CHECK(rep.repaired.fields[0] == PolyVectorField::coordinate(5, 0));
    CHECK(rep.repaired.fields[1] == f.fields[1]);
    CHECK(rep.repaired.fields[2] == PolyVectorField::coordinate(5, 4));

    // and it is well-adapted
    const auto z2 = zeta_table(rep.repaired, bracket_flag(rep.repaired, 3));
    CHECK(well_adapted_check(z2).well_adapted);

    // repairing an already well-adapted family is the identity
    const auto rep2 = step3_repair(rep.repaired, z2);
    CHECK(rep2.identity);
    for (int c = 0; c < 5; ++c) CHECK(rep2.forward[c] == var(5, c));
}

TEST_CASE("the group frame as a family repairs to the identity")
{
    const auto frame = left_invariant_fields(engel());
    const auto fam = family_from_frame(frame);
    const auto flag = bracket_flag(fam, 3);
    const auto z = zeta_table(fam, flag);
    CHECK(well_adapted_check(z).well_adapted);
    const auto rep = step3_repair(fam, z);
    CHECK(rep.identity);
    for (size_t i = 0; i < fam.fields.size(); ++i)
        CHECK(rep.repaired.fields[i] == fam.fields[i]);
}

TEST_CASE("adapted coordinates for a translated base point")
{
    auto f = counterexample_family();
    f.base_point = {Rational(1, 2), Rational(0), Rational(1, 4), Rational(-1, 3),
                    Rational(0)};
    f.coordinate_weights.reset(); // weights must come from the new flag
    const auto flag = bracket_flag(f, 3);
    CHECK(flag.dims == std::vector<int>{3, 4, 5});
    const auto adapted = adapted_coordinates(f, flag);
    const auto flag2 = bracket_flag(adapted.transformed, 3);
    CHECK(flag2.dims == std::vector<int>{3, 4, 5});
    const auto z = zeta_table(adapted.transformed, flag2);
    // zeta vanishes at the (new) origin
    std::vector<Rational> origin(5, Rational(0));
    for (int l = 0; l < 5; ++l)
        for (int c = 0; c < 5; ++c) CHECK(z.zeta[l][c].evaluate(origin) == 0);
}

TEST_CASE("general radial field: group case is exact and matches the group route")
{
    for (const auto* name : {"heisenberg", "engel", "free:2:3"}) {
        const auto a = *algebra_preset(name);
        const auto frame = left_invariant_fields(a);
        const auto rad = radial_field(a, frame);
        const auto fam = family_from_frame(frame);
        const auto z = zeta_table(fam, bracket_flag(fam, a.step()));
        const auto gen = general_radial(z);
        INFO(name);
        CHECK(gen.exact);
        for (int c = 0; c < a.dim(); ++c) {
            CHECK(gen.sigma[c] == rad.sigma[c]);
            CHECK(gen.sigma_tilde[c].is_zero());
        }
        CHECK(gen.field == rad.coordinate_form);
    }
}

TEST_CASE("general radial field on the unrepaired and repaired counterexample")
{
    const auto f = counterexample_family();
    const auto z = zeta_table(f, bracket_flag(f, 3));
    const auto gen = general_radial(z);
    // the nilpotent zeta makes the Neumann inversion exact here as well
    CHECK(gen.exact);
    CHECK(gen.sigma[2] ==
          var(5, 2) * Rational(3) - var(5, 0).pow(2) - var(5, 1) * var(5, 3));

    const auto quality = radial_quality_checks(z, gen, quick_shells());
    CHECK(quality.div_exact);
    CHECK(quality.lambda_exact);
    // negative control: sigma for the weight-3 coordinate is NOT of order 3
    // in the unrepaired coordinates (the x1^2 term only vanishes like rho^2)
    bool sigma2_unbounded = false;
    for (const auto& [c, v] : quality.sigma_orders)
        if (c == 2 && v == ScanVerdict::Unbounded) sigma2_unbounded = true;
    CHECK(sigma2_unbounded);
    CHECK(quality.overall == ScanVerdict::Unbounded);

    // after the repair everything is bounded
    const auto rep = step3_repair(f, z);
    const auto z2 = zeta_table(rep.repaired, bracket_flag(rep.repaired, 3));
    const auto gen2 = general_radial(z2);
    CHECK(gen2.exact);
    CHECK(gen2.sigma[2] == var(5, 2) * Rational(3) - var(5, 1) * var(5, 3));
    const auto quality2 = radial_quality_checks(z2, gen2, quick_shells());
    CHECK(quality2.overall == ScanVerdict::Bounded);
    CHECK(quality2.div_exact);
    CHECK(quality2.lambda_exact);
}

TEST_CASE("abelian family: sigma is the Euler field, residuals vanish")
{
    const auto frame = left_invariant_fields(abelian(3));
    const auto fam = family_from_frame(frame);
    const auto z = zeta_table(fam, bracket_flag(fam, 1));
    const auto gen = general_radial(z);
    CHECK(gen.exact);
    for (int c = 0; c < 3; ++c) CHECK(gen.sigma[c] == var(3, c));
}
