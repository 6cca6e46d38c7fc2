#include <carnot/quadrature.hpp>
#include <carnot/rng.hpp>
#include <carnot/scan.hpp>

#include <cmath>
#include <stdexcept>

namespace carnot {

std::string to_string(ScanVerdict v)
{
    switch (v) {
    case ScanVerdict::Bounded: return "bounded";
    case ScanVerdict::Unbounded: return "unbounded";
    default: return "inconclusive";
    }
}

const WordScan* SymbolReport::find(const std::vector<int>& word) const
{
    for (const auto& w : words)
        if (w.word == word) return &w;
    return nullptr;
}

GaugeExprScanFunction::GaugeExprScanFunction(GaugeExpr base,
                                             std::vector<PolyVectorField> fields,
                                             int max_order)
    : max_order_(max_order), n_fields_(static_cast<int>(fields.size())), gauge_(base.gauge())
{
    if (!gauge_) throw std::invalid_argument("scan function needs an attached gauge");
    rho_w_ = CompiledPolynomial(gauge_->rho_pow_w());
    w_ = gauge_->exponent();

    symbolic_[{}] = std::move(base);
    std::vector<std::vector<int>> frontier{{}};
    for (int len = 1; len <= max_order_; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& suffix : frontier) {
            for (int l = 0; l < static_cast<int>(fields.size()); ++l) {
                std::vector<int> word;
                word.reserve(suffix.size() + 1);
                word.push_back(l);
                word.insert(word.end(), suffix.begin(), suffix.end());
                symbolic_[word] = symbolic_[suffix].apply_field(fields[l]);
                next.push_back(std::move(word));
            }
        }
        frontier = std::move(next);
    }
    for (const auto& [word, expr] : symbolic_) {
        Compiled c;
        for (const auto& [a, p] : expr.terms()) c.parts.emplace_back(a, CompiledPolynomial(p));
        compiled_[word] = std::move(c);
    }
}

const GaugeExpr& GaugeExprScanFunction::derivative(std::span<const int> word) const
{
    const auto it = symbolic_.find(std::vector<int>(word.begin(), word.end()));
    if (it == symbolic_.end()) throw std::out_of_range("derivative word not precomputed");
    return it->second;
}

double GaugeExprScanFunction::eval_word(std::span<const int> word,
                                        std::span<const double> x) const
{
    const auto it = compiled_.find(std::vector<int>(word.begin(), word.end()));
    if (it == compiled_.end()) throw std::out_of_range("derivative word not precomputed");
    const double rw = rho_w_(x);
    double acc = 0.0;
    for (const auto& [a, p] : it->second.parts) {
        const double factor = a == 0 ? 1.0 : std::pow(rw, static_cast<double>(a) / w_);
        acc += p(x) * factor;
    }
    return acc;
}

FiniteDifferenceScanFunction::FiniteDifferenceScanFunction(
    std::function<double(std::span<const double>)> f, std::vector<PolyVectorField> fields,
    double step)
    : f_(std::move(f)), fields_(std::move(fields)), step_(step)
{
}

double FiniteDifferenceScanFunction::eval_word(std::span<const int> word,
                                               std::span<const double> x) const
{
    if (word.empty()) return f_(x);
    if (word.size() > 1) return std::numeric_limits<double>::quiet_NaN();
    const auto dir = fields_.at(word[0]).evaluate(x);
    std::vector<double> plus(x.begin(), x.end()), minus(x.begin(), x.end());
    for (size_t i = 0; i < plus.size(); ++i) {
        plus[i] += step_ * dir[i];
        minus[i] -= step_ * dir[i];
    }
    return (f_(plus) - f_(minus)) / (2.0 * step_);
}

namespace {

/// Least-squares slope of log2(sup) against log2(r) over the tail half of
/// the shells, where the asymptotic regime lives.
double tail_slope(const std::vector<double>& radii, const std::vector<double>& sups)
{
    const size_t n = radii.size();
    const size_t start = n / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (size_t i = start; i < n; ++i) {
        if (!(sups[i] > 0)) continue;
        const double x = std::log2(radii[i]);
        const double y = std::log2(sups[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt < 2) return 0.0;
    const double denom = cnt * sxx - sx * sx;
    if (denom == 0) return 0.0;
    return (cnt * sxy - sx * sy) / denom;
}

ScanVerdict classify(const std::vector<double>& sups, double slope,
                     const ScanThresholds& th)
{
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double s : sups) {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    if (hi < 1e-300) return ScanVerdict::Bounded; // identically zero samples
    if (lo > 0 && hi / lo <= th.bounded_ratio) return ScanVerdict::Bounded;
    // Monotone growth toward the origin over the tail half, plus a steep fit.
    const size_t start = sups.size() / 2;
    bool monotone = true;
    for (size_t i = start + 1; i < sups.size(); ++i)
        if (sups[i] < sups[i - 1] * 0.99) monotone = false;
    if (monotone && slope <= th.unbounded_slope) return ScanVerdict::Unbounded;
    return ScanVerdict::Inconclusive;
}

} // namespace

SymbolReport symbol_scan(const ScanFunction& f, const Gauge& gauge, double alpha, int n_max,
                         const ShellSpec& shells, const SamplerSpec& sampler,
                         ScanNormalization normalization, const ScanThresholds& thresholds)
{
    if (n_max > f.max_order())
        throw std::invalid_argument("scan order exceeds the function's derivative order");
    const int q = gauge.dim();

    // One fixed sample on the unit shell; shells only dilate it.
    std::vector<std::vector<double>> unit_points;
    if (sampler.kind == SamplerSpec::Kind::RandomShell) {
        Rng rng(shells.seed);
        unit_points.reserve(shells.samples_per_shell);
        while (static_cast<int>(unit_points.size()) < shells.samples_per_shell) {
            std::vector<double> y(q);
            for (int i = 0; i < q; ++i) y[i] = rng.uniform(-1.0, 1.0);
            const double t = gauge.rho(y);
            if (!(t > 1e-6)) continue;
            unit_points.push_back(gauge.dilate(1.0 / t, y));
        }
    }

    auto curve_point = [&](double radius) {
        // rho along the curve is increasing in t; bisect to land on the shell.
        auto rho_at = [&](double t) {
            std::vector<double> x(q);
            for (int i = 0; i < q; ++i)
                x[i] = sampler.curve.coeff[i] * std::pow(t, sampler.curve.power[i]);
            return std::make_pair(gauge.rho(x), x);
        };
        double lo = 0.0, hi = 1.0;
        while (rho_at(hi).first < radius) hi *= 2.0;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (rho_at(mid).first < radius) lo = mid;
            else hi = mid;
        }
        return rho_at(0.5 * (lo + hi)).second;
    };

    SymbolReport report;
    report.target_order = alpha;
    report.max_word_length = n_max;

    // All words over the frame indices, shortest first.
    std::vector<std::vector<int>> words{{}};
    {
        const int n_fields = f.field_count();
        std::vector<std::vector<int>> frontier{{}};
        for (int len = 1; len <= n_max; ++len) {
            std::vector<std::vector<int>> next;
            for (const auto& base : frontier)
                for (int l = 0; l < n_fields; ++l) {
                    auto word = base;
                    word.push_back(l);
                    words.push_back(word);
                    next.push_back(std::move(word));
                }
            frontier = std::move(next);
        }
    }

    for (const auto& word : words) {
        WordScan ws;
        ws.word = word;
        const double raw = alpha - static_cast<double>(word.size());
        const double weight_exp =
            normalization == ScanNormalization::ClassBound ? std::max(0.0, raw) : raw;
        ws.normalization_exponent = weight_exp;
        for (int k = shells.k_min; k <= shells.k_max; ++k) {
            const double r = std::pow(2.0, -k);
            double sup = 0.0;
            if (sampler.kind == SamplerSpec::Kind::Curve) {
                const auto x = curve_point(r);
                const double v = f.eval_word(word, x);
                if (std::isfinite(v)) sup = std::abs(v);
                else ++report.skipped_points;
            } else {
                for (const auto& u : unit_points) {
                    const auto x = gauge.dilate(r, u);
                    const double v = f.eval_word(word, x);
                    if (!std::isfinite(v)) {
                        ++report.skipped_points;
                        continue;
                    }
                    sup = std::max(sup, std::abs(v));
                }
            }
            ws.shell_radii.push_back(r);
            ws.shell_sups.push_back(sup / std::pow(r, weight_exp));
        }
        ws.slope = tail_slope(ws.shell_radii, ws.shell_sups);
        ws.verdict = classify(ws.shell_sups, ws.slope, thresholds);
        report.words.push_back(std::move(ws));
    }

    bool any_unbounded = false, all_bounded = true;
    for (const auto& w : report.words) {
        if (w.verdict == ScanVerdict::Unbounded) any_unbounded = true;
        if (w.verdict != ScanVerdict::Bounded) all_bounded = false;
    }
    report.verdict = any_unbounded  ? ScanVerdict::Unbounded
                     : all_bounded ? ScanVerdict::Bounded
                                   : ScanVerdict::Inconclusive;
    return report;
}

BallVolumeEstimate ball_volume_mc(const Gauge& gauge, double radius, long samples,
                                  uint64_t seed)
{
    if (!(radius > 0)) throw std::domain_error("ball volume requires radius > 0");
    QuadratureSpec spec;
    spec.method = QuadratureMethod::MonteCarlo;
    spec.mc_samples = samples;
    spec.seed = seed;
    for (int wl : gauge.weights()) spec.box_halfwidths.push_back(std::pow(radius, wl));

    const CompiledPolynomial rho_w(gauge.rho_pow_w());
    const double rw = std::pow(radius, gauge.exponent());
    const auto result = integrate(
        [&](std::span<const double> x) { return rho_w(x) < rw ? 1.0 : 0.0; }, spec);

    BallVolumeEstimate est;
    est.radius = radius;
    est.volume = result.value;
    est.std_error = result.error_estimate;
    est.samples = result.evaluations;
    return est;
}

} // namespace carnot
