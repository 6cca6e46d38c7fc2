#include <carnot/rng.hpp>
#include <carnot/group.hpp>
#include <carnot/hardy.hpp>
#include <carnot/hypo.hpp>
#include <carnot/scan.hpp>

#include <benchmark/benchmark.h>

using namespace carnot;

namespace {

Polynomial random_poly(int nvars, int terms, int deg, uint64_t seed)
{
    Rng rng(seed);
    Polynomial p(nvars);
    for (int t = 0; t < terms; ++t) {
        Polynomial::Exponents e(nvars);
        for (int i = 0; i < nvars; ++i) e[i] = static_cast<int>(rng.below(deg + 1));
        p.add_term(std::move(e), Rational(static_cast<long>(rng.below(19)) - 9, 4));
    }
    return p;
}

void BM_PolynomialMultiply(benchmark::State& state)
{
    const auto a = random_poly(5, static_cast<int>(state.range(0)), 6, 1);
    const auto b = random_poly(5, static_cast<int>(state.range(0)), 6, 2);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_PolynomialMultiply)->Arg(8)->Arg(32)->Arg(128);

void BM_GroupLaw(benchmark::State& state)
{
    const auto a = free_nilpotent(2, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(bch_symbolic(a));
}
BENCHMARK(BM_GroupLaw)->Arg(2)->Arg(3)->Arg(4);

void BM_FrameConstruction(benchmark::State& state)
{
    const auto a = free_nilpotent(2, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(left_invariant_fields(a));
}
BENCHMARK(BM_FrameConstruction)->Arg(3)->Arg(4);

void BM_CompiledPolynomialEval(benchmark::State& state)
{
    const Gauge gauge({1, 1, 2, 3});
    const CompiledPolynomial rho_w(gauge.rho_pow_w());
    std::vector<double> x{0.5, -0.25, 0.75, 1.25};
    for (auto _ : state) benchmark::DoNotOptimize(rho_w(x));
}
BENCHMARK(BM_CompiledPolynomialEval);

void BM_IbpQuadrature(benchmark::State& state)
{
    const auto a = heisenberg(1);
    const auto frame = left_invariant_fields(a);
    const auto rad = radial_field(a, frame);
    auto gauge = make_gauge(a);
    const auto phi = TestFunction::annular_bump(gauge, Polynomial::constant(3, 1),
                                                Rational(1, 2), Rational(2));
    const auto spec = default_quadrature(phi, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(ibp_residual(phi, frame, rad, 1, spec));
}
BENCHMARK(BM_IbpQuadrature)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_SymbolScanShell(benchmark::State& state)
{
    const auto a = engel();
    const auto frame = left_invariant_fields(a);
    auto gauge = make_gauge(a);
    const GaugeExprScanFunction fn(GaugeExpr::rho(gauge), frame.horizontal(), 2);
    ShellSpec shells;
    shells.samples_per_shell = static_cast<int>(state.range(0));
    shells.k_max = 8;
    shells.seed = 3;
    for (auto _ : state)
        benchmark::DoNotOptimize(symbol_scan(fn, *gauge, 1.0, 2, shells,
                                             SamplerSpec::random_shell(),
                                             ScanNormalization::GaugeBound));
    state.SetItemsProcessed(state.iterations() * shells.samples_per_shell * 9);
}
BENCHMARK(BM_SymbolScanShell)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_BracketFlag(benchmark::State& state)
{
    const auto fam = counterexample_family();
    for (auto _ : state) benchmark::DoNotOptimize(bracket_flag(fam, 3, 16, 1));
}
BENCHMARK(BM_BracketFlag)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
