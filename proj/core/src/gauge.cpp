#include <carnot/gauge.hpp>

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace carnot {

Gauge::Gauge(std::vector<int> weights) : weights_(std::move(weights))
{
    if (weights_.empty()) throw std::invalid_argument("gauge needs at least one weight");
    int lcm = 1;
    for (int w : weights_) {
        if (w < 1) throw std::invalid_argument("weights must be positive");
        lcm = std::lcm(lcm, w);
    }
    w_ = 2 * lcm;
    const int q = dim();
    rho_w_ = Polynomial(q);
    for (int l = 0; l < q; ++l) {
        Polynomial::Exponents e(q, 0);
        e[l] = w_ / weights_[l];
        rho_w_.add_term(std::move(e), Rational(1));
    }
}

double Gauge::rho(std::span<const double> x) const
{
    return std::pow(rho_w_.evaluate(x), 1.0 / w_);
}

std::vector<double> Gauge::dilate(double r, std::span<const double> x) const
{
    std::vector<double> out(x.begin(), x.end());
    for (int l = 0; l < dim(); ++l) out[l] *= std::pow(r, weights_[l]);
    return out;
}

std::vector<Rational> Gauge::dilate(const Rational& r, std::span<const Rational> x) const
{
    std::vector<Rational> out(x.begin(), x.end());
    for (int l = 0; l < dim(); ++l) out[l] *= rational_pow(r, weights_[l]);
    return out;
}

GaugeExpr GaugeExpr::from_polynomial(GaugePtr gauge, Polynomial p, int exponent)
{
    GaugeExpr e(std::move(gauge));
    e.add_term(exponent, p);
    return e;
}

GaugeExpr GaugeExpr::rho(GaugePtr gauge)
{
    const int q = gauge->dim();
    return from_polynomial(std::move(gauge), Polynomial::constant(q, 1), 1);
}

bool GaugeExpr::is_polynomial() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

const Polynomial* GaugeExpr::polynomial_part(int exponent) const
{
    auto it = terms_.find(exponent);
    return it == terms_.end() ? nullptr : &it->second;
}

void GaugeExpr::add_term(int exponent, const Polynomial& p)
{
    if (p.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(exponent, p);
    if (!inserted) {
        it->second += p;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void GaugeExpr::check_compatible(const GaugeExpr& o) const
{
    if (!gauge_ || !o.gauge_ || !(*gauge_ == *o.gauge_))
        throw std::invalid_argument("gauge mismatch between expressions");
}

GaugeExpr& GaugeExpr::operator+=(const GaugeExpr& o)
{
    if (!gauge_) gauge_ = o.gauge_;
    else if (!o.terms_.empty()) check_compatible(o);
    for (const auto& [a, p] : o.terms_) add_term(a, p);
    return *this;
}

GaugeExpr& GaugeExpr::operator-=(const GaugeExpr& o)
{
    if (!gauge_) gauge_ = o.gauge_;
    else if (!o.terms_.empty()) check_compatible(o);
    for (const auto& [a, p] : o.terms_) add_term(a, -p);
    return *this;
}

GaugeExpr GaugeExpr::operator*(const GaugeExpr& o) const
{
    check_compatible(o);
    GaugeExpr r(gauge_);
    for (const auto& [a, p] : terms_)
        for (const auto& [b, q] : o.terms_) r.add_term(a + b, p * q);
    return r;
}

GaugeExpr GaugeExpr::scaled(const Rational& c) const
{
    GaugeExpr r(gauge_);
    for (const auto& [a, p] : terms_) r.add_term(a, p * c);
    return r;
}

GaugeExpr GaugeExpr::shifted(int exponent_delta) const
{
    GaugeExpr r(gauge_);
    for (const auto& [a, p] : terms_) r.add_term(a + exponent_delta, p);
    return r;
}

GaugeExpr GaugeExpr::times_poly(const Polynomial& p) const
{
    GaugeExpr r(gauge_);
    for (const auto& [a, q] : terms_) r.add_term(a, p * q);
    return r;
}

GaugeExpr GaugeExpr::apply_field(const PolyVectorField& v) const
{
    if (!gauge_) throw std::invalid_argument("cannot differentiate an unattached expression");
    if (v.dim() != gauge_->dim())
        throw std::invalid_argument("field dimension does not match the gauge");
    const int w = gauge_->exponent();
    const Polynomial v_rho_w = v.apply(gauge_->rho_pow_w());
    GaugeExpr r(gauge_);
    for (const auto& [a, p] : terms_) {
        r.add_term(a, v.apply(p));
        if (a != 0) {
            // P * (a/w) * rho^{a-w} * V(rho^w)
            r.add_term(a - w, (p * v_rho_w) * Rational(a, w));
        }
    }
    return r;
}

GaugeExpr GaugeExpr::dilate(const Rational& r) const
{
    if (!gauge_) return *this;
    GaugeExpr out(gauge_);
    for (const auto& [a, p] : terms_) {
        // (P o delta_r) * (r rho)^a
        out.add_term(a, p.dilate(gauge_->weights(), r) * rational_pow(r, a));
    }
    return out;
}

double GaugeExpr::evaluate(std::span<const double> x) const
{
    if (terms_.empty()) return 0.0;
    const double rw = gauge_->rho_pow_w().evaluate(x);
    const int w = gauge_->exponent();
    double acc = 0;
    for (const auto& [a, p] : terms_) {
        double factor = a == 0 ? 1.0 : std::pow(rw, static_cast<double>(a) / w);
        acc += p.evaluate(x) * factor;
    }
    return acc;
}

} // namespace carnot
