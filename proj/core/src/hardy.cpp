#include <carnot/hardy.hpp>

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace carnot {

namespace {

int gauge_homogeneous_dim(const Gauge& g)
{
    return std::accumulate(g.weights().begin(), g.weights().end(), 0);
}

/// Weighted-homogeneous components of P^2 together with their angular
/// moments A_d, measured against the smooth probe exp(-rho^w).
struct AngularMoments {
    std::vector<long> degrees;
    std::vector<double> a; // A_d
    std::vector<double> a_err;
    int w = 0;
    int Q = 0;
};

AngularMoments angular_moments(const TestFunction& f, const QuadratureSpec& spec)
{
    const auto& gauge = *f.gauge();
    const auto& weights = gauge.weights();
    const int w = gauge.exponent();

    const Polynomial g2 = f.exponential_poly() * f.exponential_poly();
    auto [dmin, dmax] = g2.weighted_degree_range(weights);
    if (g2.is_zero()) return {{}, {}, {}, w, gauge_homogeneous_dim(gauge)};

    // Probe box: rho <= (60)^{1/w} makes the tail of P^2 e^{-rho^w} negligible.
    const double probe_radius = std::pow(60.0, 1.0 / w);
    QuadratureSpec probe =
        QuadratureSpec::for_support(weights, probe_radius, spec.points_per_axis);

    const CompiledPolynomial rho_w(gauge.rho_pow_w());
    AngularMoments m;
    m.w = w;
    m.Q = gauge_homogeneous_dim(gauge);
    for (long d = dmin; d <= dmax; ++d) {
        const Polynomial comp = g2.weighted_component(weights, d);
        if (comp.is_zero()) continue;
        const CompiledPolynomial cp(comp);
        const auto I = integrate(
            [&](std::span<const double> x) { return cp(x) * std::exp(-rho_w(x)); }, probe);
        // integral G_d e^{-rho^w} = A_d Gamma((d+Q)/w) / w
        const double gamma_factor = std::exp(std::lgamma((d + m.Q) / double(w))) / w;
        m.degrees.push_back(d);
        m.a.push_back(I.value / gamma_factor);
        m.a_err.push_back(I.error_estimate / gamma_factor);
    }
    return m;
}

double radial_tail_integral(double a, double mw, int w)
{
    // integral_0^inf e^{-a r^w} r^{m-1} dr = Gamma(m/w) a^{-m/w} / w
    return std::exp(std::lgamma(mw / w)) * std::pow(a, -mw / w) / w;
}

} // namespace

QuadratureSpec default_quadrature(const TestFunction& f, int points)
{
    return QuadratureSpec::for_support(f.gauge()->weights(), f.support_radius() * 1.0001,
                                       points);
}

double SobolevBreakdown::total() const
{
    double t = 0;
    for (double b : block) t += b;
    return t;
}

SobolevBreakdown sobolev_blocks(const TestFunction& f, const LeftInvariantFrame& frame,
                                int s, const QuadratureSpec& spec)
{
    if (s < 0) throw std::domain_error("Sobolev order must be >= 0");
    const auto horizontal = frame.horizontal();
    SobolevBreakdown out;
    out.block.assign(s + 1, 0.0);

    std::vector<TestFunction> level{f};
    for (int j = 0; j <= s; ++j) {
        double block = 0.0;
        for (const auto& g : level) {
            const auto r = integrate(
                [&](std::span<const double> x) {
                    const double v = g(x);
                    return v * v;
                },
                spec);
            block += r.value;
        }
        out.block[j] = block;
        if (j == s) break;
        std::vector<TestFunction> next;
        next.reserve(level.size() * horizontal.size());
        for (const auto& g : level)
            for (const auto& field : horizontal) next.push_back(g.apply_field(field));
        level = std::move(next);
    }
    return out;
}

double sobolev_sq_norm(const TestFunction& f, const LeftInvariantFrame& frame, int s,
                       const QuadratureSpec& spec)
{
    return sobolev_blocks(f, frame, s, spec).total();
}

WeightedL2 weighted_l2(const TestFunction& f, int s, const QuadratureSpec& spec)
{
    const auto& gauge = *f.gauge();
    const int w = gauge.exponent();

    if (f.annular()) {
        const CompiledPolynomial rho_w(gauge.rho_pow_w());
        const auto r = integrate(
            [&](std::span<const double> x) {
                const double v = f(x);
                if (v == 0.0) return 0.0;
                return v * v * std::pow(rho_w(x), -2.0 * s / w);
            },
            spec);
        return {r.value, r.error_estimate};
    }

    const int Q = gauge_homogeneous_dim(gauge);
    if (2 * s >= Q)
        throw std::domain_error("weighted mass of a non-vanishing function diverges for 2s >= Q");

    const auto m = angular_moments(f, spec);
    const double a = 2.0 * to_double(f.exponential_decay());
    WeightedL2 out;
    for (size_t i = 0; i < m.degrees.size(); ++i) {
        const double tail = radial_tail_integral(a, double(m.degrees[i] + Q - 2 * s), w);
        out.value += m.a[i] * tail;
        out.error_estimate += std::abs(m.a_err[i]) * tail;
    }
    return out;
}

double weighted_l2_excluded(const TestFunction& f, int s, const QuadratureSpec& spec,
                            double exclusion_radius)
{
    const auto& gauge = *f.gauge();
    const int w = gauge.exponent();
    const CompiledPolynomial rho_w(gauge.rho_pow_w());
    const double cut = std::pow(exclusion_radius, w);
    return integrate_value(
        [&](std::span<const double> x) {
            const double rw = rho_w(x);
            if (rw < cut) return 0.0;
            const double v = f(x);
            if (v == 0.0) return 0.0;
            return v * v * std::pow(rw, -2.0 * s / w);
        },
        spec);
}

HardyReport hardy_report(const TestFunction& f, const LeftInvariantFrame& frame, int s,
                         const QuadratureSpec& spec)
{
    const int Q = frame.algebra.homogeneous_dimension();
    if (s < 0 || 2 * s >= Q)
        throw std::domain_error("hardy_report requires an integer 0 <= s < Q/2");

    HardyReport r;
    r.s = s;
    const auto lhs = weighted_l2(f, s, spec);
    r.lhs = lhs.value;
    r.lhs_error = lhs.error_estimate;
    const auto blocks = sobolev_blocks(f, frame, s, spec);
    r.rhs_full = blocks.total();
    r.rhs_homogeneous = blocks.block[s];
    r.ratio_full = r.rhs_full > 0 ? r.lhs / r.rhs_full : 0.0;
    r.ratio_homogeneous = r.rhs_homogeneous > 0 ? r.lhs / r.rhs_homogeneous : 0.0;
    return r;
}

IbpCheck ibp_residual(const TestFunction& phi, const LeftInvariantFrame& frame,
                      const RadialField& radial, int s, const QuadratureSpec& spec)
{
    if (!phi.annular())
        throw std::domain_error("the identity needs an annular test function "
                                "(no boundary terms at the origin)");
    if (s < 1) throw std::domain_error("the identity check needs s >= 1");

    const auto& gauge = *phi.gauge();
    const int q = frame.dim();
    const int w = gauge.exponent();
    const int Q = frame.algebra.homogeneous_dimension();
    const CompiledPolynomial rho_w(gauge.rho_pow_w());

    std::vector<TestFunction> dphi;
    dphi.reserve(q);
    for (int l = 0; l < q; ++l) dphi.push_back(phi.apply_field(frame.fields[l]));
    std::vector<CompiledPolynomial> sigma;
    sigma.reserve(q);
    for (int l = 0; l < q; ++l) sigma.emplace_back(radial.sigma[l]);

    const double lhs_weight = 0.5 * Q - s;
    const double lhs = lhs_weight * integrate_value(
                                        [&](std::span<const double> x) {
                                            const double v = phi(x);
                                            if (v == 0.0) return 0.0;
                                            return v * v * std::pow(rho_w(x), -2.0 * s / w);
                                        },
                                        spec);
    const double rhs = -integrate_value(
        [&](std::span<const double> x) {
            const double v = phi(x);
            if (v == 0.0) return 0.0;
            double acc = 0.0;
            for (int l = 0; l < q; ++l) acc += sigma[l](x) * dphi[l](x);
            return v * acc * std::pow(rho_w(x), -2.0 * s / w);
        },
        spec);

    IbpCheck out;
    out.lhs = lhs;
    out.rhs = rhs;
    out.relative_residual = std::abs(lhs - rhs) / std::abs(lhs);
    return out;
}

ScalingCheck homogeneity_check(const TestFunction& f, const LeftInvariantFrame& frame,
                               int s, const Rational& r, int points)
{
    if (r <= 0) throw std::domain_error("dilation requires r > 0");
    const int Q = frame.algebra.homogeneous_dimension();
    const double rd = to_double(r);
    const TestFunction fr = f.dilate(r);

    const auto spec_f = default_quadrature(f, points);
    const auto spec_fr = default_quadrature(fr, points);

    ScalingCheck check;
    check.r = r;
    auto push = [&](std::string name, double observed, double expected) {
        const double rel = std::abs(observed - expected) / std::abs(expected);
        check.rows.push_back({std::move(name), observed, expected, rel});
        check.max_relative_error = std::max(check.max_relative_error, rel);
    };

    // Haar: integral f(delta_r x) dx = r^{-Q} integral f.
    const double mass_f = integrate_value([&](std::span<const double> x) { return f(x); }, spec_f);
    const double mass_fr =
        integrate_value([&](std::span<const double> x) { return fr(x); }, spec_fr);
    push("haar_mass", mass_fr / mass_f, std::pow(rd, -Q));

    if (s >= 0 && 2 * s < Q) {
        const double lhs_f = weighted_l2(f, s, spec_f).value;
        const double lhs_fr = weighted_l2(fr, s, spec_fr).value;
        push("weighted_l2", lhs_fr / lhs_f, std::pow(rd, 2.0 * s - Q));
    }

    const auto blocks_f = sobolev_blocks(f, frame, s, spec_f);
    const auto blocks_fr = sobolev_blocks(fr, frame, s, spec_fr);
    for (int j = 0; j <= s; ++j)
        push("sobolev_block_" + std::to_string(j), blocks_fr.block[j] / blocks_f.block[j],
             std::pow(rd, 2.0 * j - Q));
    return check;
}

namespace {

/// Smoothstep S: 0 below 0, 1 above 1, C^{p-1} ramp in between.
struct SmoothStep {
    int p;
    double norm;
    explicit SmoothStep(int p_) : p(p_)
    {
        norm = integrate_1d([&](double u) { return std::pow(4.0 * u * (1.0 - u), p); }, 0.0,
                            1.0, 32, 16);
    }
    double density(double u) const
    {
        if (u <= 0.0 || u >= 1.0) return 0.0;
        return std::pow(4.0 * u * (1.0 - u), p) / norm;
    }
    double value(double u) const
    {
        if (u <= 0.0) return 0.0;
        if (u >= 1.0) return 1.0;
        return integrate_1d([&](double v) { return density(v); }, 0.0, u, 16, 16);
    }
};

} // namespace

double radial_profile_ratio(double log_range, int ramp_p, double ramp_width)
{
    // Work in t = log r: profile F(r) = r^{-1/2} psi(log r) with psi a smooth
    // plateau of log-length `log_range` and ramps of width `ramp_width`.
    // Then integral F^2 dr = integral psi^2 dt and
    // integral F'^2 r^2 dr = integral (psi' - psi/2)^2 dt.
    const SmoothStep step(ramp_p);
    const double half = 0.5 * log_range;
    auto psi = [&](double t) {
        return step.value((t + half + ramp_width) / ramp_width) *
               step.value((half + ramp_width - t) / ramp_width);
    };
    auto dpsi = [&](double t) {
        return step.density((t + half + ramp_width) / ramp_width) / ramp_width *
                   step.value((half + ramp_width - t) / ramp_width) -
               step.value((t + half + ramp_width) / ramp_width) *
                   step.density((half + ramp_width - t) / ramp_width) / ramp_width;
    };
    const double lo = -half - ramp_width - 0.5;
    const double hi = half + ramp_width + 0.5;
    const int panels = std::max(96, static_cast<int>(hi - lo) * 4);
    const double num = integrate_1d([&](double t) { double v = psi(t); return v * v; }, lo,
                                    hi, panels, 16);
    const double den = integrate_1d(
        [&](double t) {
            const double v = dpsi(t) - 0.5 * psi(t);
            return v * v;
        },
        lo, hi, panels, 16);
    return num / den;
}

EuclidReport euclid_constant_check(int n, const std::vector<TestFunction>& family,
                                   const std::vector<double>& radial_log_ranges,
                                   const QuadratureSpec& spec)
{
    if (n < 3) throw std::domain_error("the Euclidean anchor needs dimension n >= 3");
    const auto algebra = abelian(n);
    const auto frame = left_invariant_fields(algebra);

    EuclidReport report;
    report.bound = 4.0 / ((n - 2.0) * (n - 2.0));

    int idx = 0;
    for (const auto& f : family) {
        // Per-member boxes: a far-out annulus and a tight Gaussian need very
        // different domains at the same node count.
        const auto member_spec = default_quadrature(f, spec.points_per_axis);
        EuclidMember m;
        m.label = "member" + std::to_string(idx++);
        m.lhs = weighted_l2(f, 1, member_spec).value;
        m.grad_sq = sobolev_blocks(f, frame, 1, member_spec).block[1];
        m.ratio = m.lhs / m.grad_sq;
        report.max_ratio = std::max(report.max_ratio, m.ratio);
        report.members.push_back(std::move(m));
    }
    for (double L : radial_log_ranges) {
        if (n != 3)
            throw std::domain_error("radial near-optimizers are implemented for n = 3");
        EuclidMember m;
        m.label = "radial_log_range_" + std::to_string(L);
        m.ratio = radial_profile_ratio(L);
        m.lhs = m.ratio;
        m.grad_sq = 1.0;
        report.max_ratio = std::max(report.max_ratio, m.ratio);
        report.members.push_back(std::move(m));
    }
    return report;
}

std::vector<double> lhs_shell_contributions(const TestFunction& f, int s, int k_min,
                                            int k_max, const QuadratureSpec& spec)
{
    if (!f.is_gauge_exponential())
        throw std::domain_error("shell breakdown is defined for gauge-exponentials");
    const auto m = angular_moments(f, spec);
    const double a = 2.0 * to_double(f.exponential_decay());

    std::vector<double> shells;
    for (int k = k_min; k <= k_max; ++k) {
        const double hi = std::pow(2.0, -k);
        const double lo = 0.5 * hi;
        double total = 0.0;
        for (size_t i = 0; i < m.degrees.size(); ++i) {
            const double mexp = double(m.degrees[i] + m.Q - 2 * s);
            total += m.a[i] * integrate_1d(
                                  [&](double r) {
                                      return std::exp(-a * std::pow(r, m.w)) *
                                             std::pow(r, mexp - 1.0);
                                  },
                                  lo, hi, 8, 16);
        }
        shells.push_back(total);
    }
    return shells;
}

} // namespace carnot
