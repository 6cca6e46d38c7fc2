#include <carnot/parallel.hpp>
#include <carnot/quadrature.hpp>

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace carnot;

TEST_CASE("Gauss-Legendre nodes integrate high-degree monomials exactly")
{
    std::vector<double> x, w;
    gauss_legendre(5, x, w);
    double sum8 = 0, sum0 = 0;
    for (int i = 0; i < 5; ++i) {
        sum8 += w[i] * std::pow(x[i], 8);
        sum0 += w[i];
    }
    CHECK(sum0 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(sum8 == doctest::Approx(2.0 / 9.0).epsilon(1e-13)); // degree 8 <= 2n-1
}

TEST_CASE("odd-power mapped axis integrates exactly")
{
    std::vector<double> x, w;
    mapped_axis(16, 8.0, 3, x, w);
    double mass = 0, second = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        mass += w[i];
        second += w[i] * x[i] * x[i];
    }
    CHECK(mass == doctest::Approx(16.0).epsilon(1e-13));
    CHECK(second == doctest::Approx(2.0 * std::pow(8.0, 3) / 3.0).epsilon(1e-12));
    CHECK_THROWS_AS(mapped_axis(8, 1.0, 2, x, w), std::invalid_argument);
}

TEST_CASE("tensor integration of a separable Gaussian")
{
    QuadratureSpec spec;
    spec.points_per_axis = 32;
    spec.box_halfwidths = {6.0, 6.0};
    const auto r = integrate(
        [](std::span<const double> x) { return std::exp(-x[0] * x[0] - x[1] * x[1]); },
        spec);
    CHECK(r.value == doctest::Approx(std::numbers::pi).epsilon(1e-10));
    // the estimate compares against a half-resolution pass, so it is a
    // conservative bound dominated by the coarse error
    CHECK(std::abs(r.value - std::numbers::pi) < r.error_estimate);
    CHECK(r.error_estimate < 0.05);
    CHECK(r.evaluations == 32 * 32);
}

TEST_CASE("support-derived spec uses weight boxes and odd maps")
{
    const std::vector<int> weights{1, 1, 2, 3};
    const auto spec = QuadratureSpec::for_support(weights, 2.0, 48);
    CHECK(spec.box_halfwidths == std::vector<double>{2.0, 2.0, 4.0, 8.0});
    CHECK(spec.axis_powers == std::vector<int>{1, 1, 3, 3});
}

TEST_CASE("deterministic across thread counts")
{
    QuadratureSpec spec;
    spec.points_per_axis = 24;
    spec.box_halfwidths = {2.0, 2.0, 2.0};
    auto f = [](std::span<const double> x) {
        return std::cos(x[0]) * std::exp(x[1] * 0.5) + x[2] * x[2];
    };
    set_thread_cap(1);
    const double serial = integrate_value(f, spec);
    set_thread_cap(8);
    const double parallel = integrate_value(f, spec);
    set_thread_cap(0);
    CHECK(serial == parallel); // bit-identical
}

TEST_CASE("Monte-Carlo estimates come with a usable standard error")
{
    QuadratureSpec spec;
    spec.method = QuadratureMethod::MonteCarlo;
    spec.mc_samples = 200000;
    spec.seed = 12;
    spec.box_halfwidths = {1.0, 1.0};
    // area of the unit disk
    const auto r = integrate(
        [](std::span<const double> x) {
            return x[0] * x[0] + x[1] * x[1] < 1.0 ? 1.0 : 0.0;
        },
        spec);
    CHECK(std::abs(r.value - std::numbers::pi) < 4.0 * r.error_estimate);
    CHECK(r.error_estimate < 0.01);

    // determinism: same seed, any thread count
    set_thread_cap(1);
    const auto r1 = integrate(
        [](std::span<const double> x) {
            return x[0] * x[0] + x[1] * x[1] < 1.0 ? 1.0 : 0.0;
        },
        spec);
    set_thread_cap(0);
    CHECK(r1.value == r.value);
}

TEST_CASE("1-D composite panels")
{
    const double v = integrate_1d([](double t) { return std::exp(t); }, 0.0, 1.0, 8, 12);
    CHECK(v == doctest::Approx(std::numbers::e - 1.0).epsilon(1e-13));
}

TEST_CASE("non-finite evaluations are counted with a deterministic location")
{
    QuadratureSpec spec;
    spec.points_per_axis = 8;
    spec.box_halfwidths = {1.0, 1.0};
    const auto r = integrate(
        [](std::span<const double> x) {
            if (x[0] > 0.5 && x[1] > 0.5) return std::numeric_limits<double>::quiet_NaN();
            return 1.0;
        },
        spec);
    CHECK(r.nonfinite_count > 0);
    REQUIRE(r.first_nonfinite_point.size() == 2);
    CHECK(r.first_nonfinite_point[0] > 0.5);
    CHECK(r.first_nonfinite_point[1] > 0.5);
    CHECK(std::isfinite(r.value));

    set_thread_cap(1);
    const auto r2 = integrate(
        [](std::span<const double> x) {
            if (x[0] > 0.5 && x[1] > 0.5) return std::numeric_limits<double>::quiet_NaN();
            return 1.0;
        },
        spec);
    set_thread_cap(0);
    CHECK(r2.nonfinite_count == r.nonfinite_count);
    CHECK(r2.first_nonfinite_point == r.first_nonfinite_point);
}
