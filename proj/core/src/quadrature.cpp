#include <carnot/quadrature.hpp>
#include <carnot/rng.hpp>

#include <cmath>
#include <numbers>
#include <algorithm>
#include <atomic>
#include <limits>
#include <stdexcept>

namespace carnot {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights)
{
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    // Newton iteration from the Chebyshev initial guess.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

void mapped_axis(int n, double halfwidth, int power, std::vector<double>& x,
                 std::vector<double>& w)
{
    if (power < 1 || power % 2 == 0)
        throw std::invalid_argument("axis map power must be odd and positive");
    std::vector<double> t, wt;
    gauss_legendre(n, t, wt);
    const double a = std::pow(halfwidth, 1.0 / power);
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double ti = t[i] * a;
        x[i] = std::pow(ti, power);
        w[i] = wt[i] * a * power * std::pow(ti, power - 1);
    }
}

QuadratureSpec QuadratureSpec::for_support(std::span<const int> weights, double radius,
                                           int points)
{
    QuadratureSpec s;
    s.points_per_axis = points;
    for (int wl : weights) {
        s.box_halfwidths.push_back(std::pow(radius, wl));
        s.axis_powers.push_back(wl % 2 == 1 ? wl : wl + 1);
    }
    return s;
}

namespace {

struct NonFiniteTracker {
    std::atomic<long> count{0};
    std::atomic<std::size_t> first_index{std::numeric_limits<std::size_t>::max()};

    void record(std::size_t idx)
    {
        count.fetch_add(1, std::memory_order_relaxed);
        std::size_t seen = first_index.load(std::memory_order_relaxed);
        while (idx < seen &&
               !first_index.compare_exchange_weak(seen, idx, std::memory_order_relaxed)) {
        }
    }
};

double tensor_gauss(const Integrand& f, const QuadratureSpec& spec, int n,
                    NonFiniteTracker* tracker = nullptr)
{
    const int q = spec.dim();
    std::vector<std::vector<double>> xs(q), ws(q);
    for (int a = 0; a < q; ++a) {
        const int p = spec.axis_powers.empty() ? 1 : spec.axis_powers[a];
        mapped_axis(n, spec.box_halfwidths[a], p, xs[a], ws[a]);
    }
    std::size_t total = 1;
    for (int a = 0; a < q; ++a) total *= static_cast<std::size_t>(n);

    return parallel_reduce(total, 8192, [&](std::size_t begin, std::size_t end) {
        CompensatedSum acc;
        std::vector<double> pt(q);
        for (std::size_t idx = begin; idx < end; ++idx) {
            std::size_t rem = idx;
            double weight = 1.0;
            for (int a = q - 1; a >= 0; --a) {
                const std::size_t i = rem % n;
                rem /= n;
                pt[a] = xs[a][i];
                weight *= ws[a][i];
            }
            const double v = f(pt);
            if (!std::isfinite(v)) {
                if (tracker) tracker->record(idx);
                continue;
            }
            if (v != 0.0) acc.add(weight * v);
        }
        return acc.value();
    });
}

std::vector<double> decode_point(const QuadratureSpec& spec, int n, std::size_t idx)
{
    const int q = spec.dim();
    std::vector<double> pt(q);
    std::vector<double> xs, ws;
    for (int a = q - 1; a >= 0; --a) {
        const int p = spec.axis_powers.empty() ? 1 : spec.axis_powers[a];
        mapped_axis(n, spec.box_halfwidths[a], p, xs, ws);
        pt[a] = xs[idx % n];
        idx /= n;
    }
    return pt;
}

struct McAccum {
    double sum = 0.0;
    double sumsq = 0.0;
    long count = 0;
};

IntegralResult monte_carlo(const Integrand& f, const QuadratureSpec& spec)
{
    const int q = spec.dim();
    const long n = spec.mc_samples;
    constexpr long kChunk = 65536;
    const std::size_t chunks = static_cast<std::size_t>((n + kChunk - 1) / kChunk);

    double volume = 1.0;
    for (double h : spec.box_halfwidths) volume *= 2.0 * h;

    std::vector<McAccum> partial(chunks);
    // Same deterministic chunk pattern as parallel_reduce, but with a
    // two-component payload; substream c is tied to the chunk index.
    parallel_reduce(chunks, 1, [&](std::size_t begin, std::size_t end) {
        for (std::size_t c = begin; c < end; ++c) {
            Rng rng(spec.seed, c);
            const long lo = static_cast<long>(c) * kChunk;
            const long hi = std::min(n, lo + kChunk);
            McAccum acc;
            std::vector<double> pt(q);
            for (long i = lo; i < hi; ++i) {
                for (int a = 0; a < q; ++a)
                    pt[a] = rng.uniform(-spec.box_halfwidths[a], spec.box_halfwidths[a]);
                const double v = f(pt);
                acc.sum += v;
                acc.sumsq += v * v;
                ++acc.count;
            }
            partial[c] = acc;
        }
        return 0.0;
    });

    CompensatedSum s, s2;
    long count = 0;
    for (const auto& p : partial) {
        s.add(p.sum);
        s2.add(p.sumsq);
        count += p.count;
    }
    const double mean = s.value() / count;
    const double var = std::max(0.0, s2.value() / count - mean * mean);
    IntegralResult r;
    r.value = volume * mean;
    r.error_estimate = volume * std::sqrt(var / count);
    r.evaluations = count;
    return r;
}

} // namespace

double integrate_value(const Integrand& f, const QuadratureSpec& spec)
{
    if (spec.method == QuadratureMethod::MonteCarlo) return monte_carlo(f, spec).value;
    return tensor_gauss(f, spec, spec.points_per_axis);
}

IntegralResult integrate(const Integrand& f, const QuadratureSpec& spec)
{
    if (spec.dim() == 0) throw std::invalid_argument("empty quadrature box");
    if (spec.method == QuadratureMethod::MonteCarlo) return monte_carlo(f, spec);

    IntegralResult r;
    NonFiniteTracker tracker;
    r.value = tensor_gauss(f, spec, spec.points_per_axis, &tracker);
    const int half = std::max(2, spec.points_per_axis / 2);
    const double coarse = tensor_gauss(f, spec, half);
    r.error_estimate = std::abs(r.value - coarse);
    std::size_t total = 1;
    for (int a = 0; a < spec.dim(); ++a) total *= static_cast<std::size_t>(spec.points_per_axis);
    r.evaluations = static_cast<long>(total);
    r.nonfinite_count = tracker.count.load();
    if (r.nonfinite_count > 0)
        r.first_nonfinite_point =
            decode_point(spec, spec.points_per_axis, tracker.first_index.load());
    return r;
}

double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    int panels, int nodes_per_panel)
{
    std::vector<double> t, w;
    gauss_legendre(nodes_per_panel, t, w);
    CompensatedSum acc;
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * h;
        for (int i = 0; i < nodes_per_panel; ++i)
            acc.add(0.5 * h * w[i] * f(mid + 0.5 * h * t[i]));
    }
    return acc.value();
}

} // namespace carnot
