#include <carnot/algebra.hpp>
#include <carnot/gauge.hpp>
#include <carnot/group.hpp>
#include <carnot/rng.hpp>

#include <doctest.h>

#include <cmath>

using namespace carnot;

namespace {
Polynomial var(int n, int i) { return Polynomial::variable(n, i); }
}

TEST_CASE("gauge exponents")
{
    const Gauge h({1, 1, 2});
    CHECK(h.exponent() == 4);
    CHECK(h.rho_pow_w() == var(3, 0).pow(4) + var(3, 1).pow(4) + var(3, 2).pow(2));

    const Gauge e({1, 1, 2, 3});
    CHECK(e.exponent() == 12);

    const Gauge ab({1, 1});
    CHECK(ab.exponent() == 2);

    // the rank-3 step-3 family's coordinate weights
    const Gauge cx({1, 1, 3, 2, 1});
    CHECK(cx.exponent() == 12);
    std::vector<int> expo(5, 0);
    for (const auto& [e2, c] : cx.rho_pow_w().terms()) {
        int nz = 0;
        for (int i = 0; i < 5; ++i)
            if (e2[i]) {
                ++nz;
                expo[i] = e2[i];
                CHECK(e2[i] % 2 == 0);
            }
        CHECK(nz == 1);
    }
    CHECK(expo == std::vector<int>{12, 12, 4, 6, 12});
}

TEST_CASE("gauge homogeneity is exact on rho^w")
{
    for (const auto& weights : {std::vector<int>{1, 1, 2}, std::vector<int>{1, 1, 2, 3}}) {
        const Gauge g(weights);
        const Rational r(7, 3);
        CHECK(g.rho_pow_w().dilate(weights, r) ==
              g.rho_pow_w() * rational_pow(r, g.exponent()));
    }
}

TEST_CASE("rho vanishes only at the origin")
{
    const Gauge g({1, 1, 2});
    Rng rng(4);
    for (int t = 0; t < 32; ++t) {
        std::vector<double> x(3);
        for (auto& c : x) c = rng.uniform(-2.0, 2.0);
        if (std::abs(x[0]) + std::abs(x[1]) + std::abs(x[2]) < 1e-12) continue;
        CHECK(g.rho(x) > 0.0);
    }
    std::vector<double> zero(3, 0.0);
    CHECK(g.rho(zero) == 0.0);
}

TEST_CASE("first horizontal derivative of rho on the Heisenberg model")
{
    const auto a = heisenberg(1);
    const auto frame = left_invariant_fields(a);
    auto gauge = make_gauge(a);
    const auto e = GaugeExpr::rho(gauge).apply_field(frame.fields[0]);
    // (x1^3 - x2 x3 / 4) rho^{-3}
    REQUIRE(e.terms().size() == 1);
    const auto& [a0, p0] = *e.terms().begin();
    CHECK(a0 == -3);
    CHECK(p0 == var(3, 0).pow(3) - var(3, 1) * var(3, 2) * Rational(1, 4));

    // times w rho^{w-1} it recovers the derivative of rho^w exactly
    const auto recovered = e.shifted(gauge->exponent() - 1).scaled(gauge->exponent());
    CHECK(recovered ==
          GaugeExpr::from_polynomial(gauge, frame.fields[0].apply(gauge->rho_pow_w())));
}

TEST_CASE("gradient of rho is dilation-invariant (order zero), exactly")
{
    const auto a = engel();
    const auto frame = left_invariant_fields(a);
    auto gauge = make_gauge(a);
    for (int l = 0; l < a.first_layer_dim(); ++l) {
        const auto e = GaugeExpr::rho(gauge).apply_field(frame.fields[l]);
        CHECK(e.dilate(Rational(5, 2)) == e);
    }
}

TEST_CASE("abelian gradient has unit length")
{
    const auto a = abelian(3);
    const auto frame = left_invariant_fields(a);
    auto gauge = make_gauge(a);
    GaugeExpr sum(gauge);
    for (int l = 0; l < 3; ++l) {
        const auto e = GaugeExpr::rho(gauge).apply_field(frame.fields[l]);
        sum += e * e;
    }
    // sum = (x1^2+x2^2+x3^2) rho^{-2} = rho^w rho^{-2} with w = 2
    REQUIRE(sum.terms().size() == 1);
    CHECK(sum.terms().begin()->first == -2);
    CHECK(sum.terms().begin()->second == gauge->rho_pow_w());
}

TEST_CASE("gauge expressions: Leibniz and commutator identities hold exactly")
{
    const auto a = heisenberg(1);
    auto gauge = make_gauge(a);
    Rng rng(9);
    auto random_poly = [&](int max_deg) {
        Polynomial p(3);
        for (int t = 0; t < 3; ++t) {
            Polynomial::Exponents e(3);
            for (int i = 0; i < 3; ++i) e[i] = static_cast<int>(rng.below(max_deg + 1));
            p.add_term(std::move(e), Rational(static_cast<long>(rng.below(9)) - 4, 2));
        }
        return p;
    };
    for (int trial = 0; trial < 20; ++trial) {
        GaugeExpr E = GaugeExpr::from_polynomial(gauge, random_poly(2), -2) +
                      GaugeExpr::from_polynomial(gauge, random_poly(2), 1);
        GaugeExpr F = GaugeExpr::from_polynomial(gauge, random_poly(2), 0) +
                      GaugeExpr::from_polynomial(gauge, random_poly(2), -1);
        PolyVectorField V(3), W(3);
        for (int k = 0; k < 3; ++k) {
            V.coeff[k] = random_poly(2);
            W.coeff[k] = random_poly(2);
        }
        CHECK((E * F).apply_field(V) == E.apply_field(V) * F + E * F.apply_field(V));
        const auto bracket = PolyVectorField::bracket(V, W);
        CHECK(E.apply_field(bracket) ==
              E.apply_field(W).apply_field(V) - E.apply_field(V).apply_field(W));
    }
}

TEST_CASE("symbolic field application matches a finite difference")
{
    const auto a = engel();
    const auto frame = left_invariant_fields(a);
    auto gauge = make_gauge(a);
    Rng rng(31);
    const GaugeExpr E =
        GaugeExpr::rho(gauge) +
        GaugeExpr::from_polynomial(gauge, Polynomial::variable(4, 0), -1);
    for (int l = 0; l < 4; ++l) {
        const auto dE = E.apply_field(frame.fields[l]);
        for (int t = 0; t < 8; ++t) {
            std::vector<double> x(4);
            for (auto& c : x) c = rng.uniform(0.3, 1.5);
            const auto dir = frame.fields[l].evaluate(std::span<const double>(x));
            const double h = 1e-5;
            std::vector<double> xp = x, xm = x;
            for (int i = 0; i < 4; ++i) {
                xp[i] += h * dir[i];
                xm[i] -= h * dir[i];
            }
            const double fd = (E.evaluate(xp) - E.evaluate(xm)) / (2 * h);
            CHECK(dE.evaluate(x) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("gauge mismatch is rejected")
{
    auto g1 = make_gauge(std::vector<int>{1, 1, 2});
    auto g2 = make_gauge(std::vector<int>{1, 1, 3});
    auto e1 = GaugeExpr::rho(g1);
    auto e2 = GaugeExpr::rho(g2);
    CHECK_THROWS_AS(e1 += e2, std::invalid_argument);
    // field dimension mismatch against the gauge
    CHECK_THROWS_AS(e1.apply_field(PolyVectorField(4)), std::invalid_argument);
}

TEST_CASE("two-level and one-level gauges are uniformly equivalent on shells")
{
    const auto a = engel();
    auto gauge = make_gauge(a);
    const int w = gauge->exponent();
    auto rho_two_level = [&](std::span<const double> x) {
        double acc = 0.0;
        const auto& cum = a.cumulative_dims();
        for (int j = 1; j <= a.step(); ++j) {
            double layer = 0.0;
            for (int l = cum[j - 1]; l < cum[j]; ++l) layer += x[l] * x[l];
            acc += std::pow(layer, static_cast<double>(w) / j);
        }
        return std::pow(acc, 1.0 / (2.0 * w));
    };
    Rng rng(17);
    double lo = 1e300, hi = 0.0;
    for (int t = 0; t < 512; ++t) {
        std::vector<double> y(4);
        for (auto& c : y) c = rng.uniform(-1.0, 1.0);
        const double r = gauge->rho(y);
        if (r < 1e-9) continue;
        const auto x = gauge->dilate(std::pow(2.0, -(double)(t % 8)) / r, y);
        const double ratio = gauge->rho(x) / rho_two_level(x);
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    CHECK(hi / lo < 10.0);
}
