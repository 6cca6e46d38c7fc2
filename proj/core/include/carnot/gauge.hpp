#pragma once

#include <carnot/algebra.hpp>
#include <carnot/polynomial.hpp>
#include <carnot/vector_field.hpp>

#include <map>
#include <memory>

namespace carnot {

/// The weight-homogeneous gauge rho = (sum x_l^{w/omega_l})^{1/w} with
/// w = 2*LCM(1..m), so every exponent w/omega_l is even and rho^w is a
/// polynomial. rho(delta_r x) = r * rho(x) holds exactly at the level of
/// rho^w, and rho vanishes only at the origin.
class Gauge {
public:
    explicit Gauge(std::vector<int> weights);

    const std::vector<int>& weights() const { return weights_; }
    int dim() const { return static_cast<int>(weights_.size()); }
    int exponent() const { return w_; }
    const Polynomial& rho_pow_w() const { return rho_w_; }

    double rho(std::span<const double> x) const;
    Rational rho_w_value(std::span<const Rational> x) const { return rho_w_.evaluate(x); }

    /// delta_r in coordinates: x_l -> r^{omega_l} x_l.
    std::vector<double> dilate(double r, std::span<const double> x) const;
    std::vector<Rational> dilate(const Rational& r, std::span<const Rational> x) const;

    bool operator==(const Gauge& o) const { return weights_ == o.weights_; }

private:
    std::vector<int> weights_;
    int w_;
    Polynomial rho_w_;
};

using GaugePtr = std::shared_ptr<const Gauge>;

inline GaugePtr make_gauge(std::vector<int> weights)
{
    return std::make_shared<Gauge>(std::move(weights));
}

inline GaugePtr make_gauge(const StratifiedAlgebra& a) { return make_gauge(a.weights()); }

/// Finite sum  sum_a P_a * rho^a  with integer exponents a (possibly
/// negative) and polynomial parts P_a. Closed under differentiation by
/// polynomial vector fields via V(rho^a) = (a/w) rho^{a-w} V(rho^w).
/// Canonical form: distinct exponents, no zero polynomials.
class GaugeExpr {
public:
    GaugeExpr() = default;
    explicit GaugeExpr(GaugePtr gauge) : gauge_(std::move(gauge)) {}

    static GaugeExpr from_polynomial(GaugePtr gauge, Polynomial p, int exponent = 0);
    /// rho itself, as the pair (P=1, a=1).
    static GaugeExpr rho(GaugePtr gauge);

    const GaugePtr& gauge() const { return gauge_; }
    const std::map<int, Polynomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// True when the expression is a plain polynomial (single exponent 0).
    bool is_polynomial() const;
    const Polynomial* polynomial_part(int exponent) const;

    GaugeExpr& operator+=(const GaugeExpr& o);
    GaugeExpr& operator-=(const GaugeExpr& o);
    friend GaugeExpr operator+(GaugeExpr a, const GaugeExpr& b) { return a += b; }
    friend GaugeExpr operator-(GaugeExpr a, const GaugeExpr& b) { return a -= b; }
    GaugeExpr operator*(const GaugeExpr& o) const;
    GaugeExpr scaled(const Rational& c) const;
    GaugeExpr shifted(int exponent_delta) const; // multiply by rho^delta
    GaugeExpr times_poly(const Polynomial& p) const;

    /// Leibniz differentiation by a polynomial vector field.
    GaugeExpr apply_field(const PolyVectorField& v) const;

    /// Exact composition with the dilation delta_r.
    GaugeExpr dilate(const Rational& r) const;

    double evaluate(std::span<const double> x) const;

    bool operator==(const GaugeExpr& o) const
    {
        return terms_ == o.terms_ && gauge_ && o.gauge_ && *gauge_ == *o.gauge_;
    }

private:
    void add_term(int exponent, const Polynomial& p);
    void check_compatible(const GaugeExpr& o) const;

    GaugePtr gauge_;
    std::map<int, Polynomial> terms_;
};

} // namespace carnot
