#pragma once

#include <carnot/polynomial.hpp>

#include <vector>

namespace carnot {

/// First-order differential operator with polynomial coefficients in the
/// coordinate frame: V = sum coeff[k] * d/dx_k.
struct PolyVectorField {
    std::vector<Polynomial> coeff;

    PolyVectorField() = default;
    explicit PolyVectorField(int dim) : coeff(dim, Polynomial(dim)) {}
    explicit PolyVectorField(std::vector<Polynomial> c) : coeff(std::move(c)) {}

    int dim() const { return static_cast<int>(coeff.size()); }

    static PolyVectorField coordinate(int dim, int k)
    {
        PolyVectorField v(dim);
        v.coeff[k] = Polynomial::constant(dim, 1);
        return v;
    }

    Polynomial apply(const Polynomial& f) const
    {
        Polynomial r(f.nvars());
        for (int k = 0; k < dim(); ++k) {
            if (coeff[k].is_zero()) continue;
            r += coeff[k] * f.partial(k);
        }
        return r;
    }

    /// [V, W] = V o W - W o V, computed coefficientwise.
    static PolyVectorField bracket(const PolyVectorField& v, const PolyVectorField& w)
    {
        PolyVectorField r(v.dim());
        for (int k = 0; k < v.dim(); ++k) r.coeff[k] = v.apply(w.coeff[k]) - w.apply(v.coeff[k]);
        return r;
    }

    Polynomial divergence() const
    {
        Polynomial r(dim());
        for (int k = 0; k < dim(); ++k) r += coeff[k].partial(k);
        return r;
    }

    /// Value of the coefficient vector at a rational point.
    std::vector<Rational> evaluate(std::span<const Rational> x) const
    {
        std::vector<Rational> out(dim());
        for (int k = 0; k < dim(); ++k) out[k] = coeff[k].evaluate(x);
        return out;
    }
    std::vector<double> evaluate(std::span<const double> x) const
    {
        std::vector<double> out(dim());
        for (int k = 0; k < dim(); ++k) out[k] = coeff[k].evaluate(x);
        return out;
    }

    bool is_zero() const
    {
        for (const auto& c : coeff)
            if (!c.is_zero()) return false;
        return true;
    }

    PolyVectorField& operator+=(const PolyVectorField& o)
    {
        for (int k = 0; k < dim(); ++k) coeff[k] += o.coeff[k];
        return *this;
    }
    PolyVectorField& operator-=(const PolyVectorField& o)
    {
        for (int k = 0; k < dim(); ++k) coeff[k] -= o.coeff[k];
        return *this;
    }
    friend PolyVectorField operator+(PolyVectorField a, const PolyVectorField& b) { return a += b; }
    friend PolyVectorField operator-(PolyVectorField a, const PolyVectorField& b) { return a -= b; }

    /// Scalar-function multiple g * V.
    PolyVectorField scaled(const Polynomial& g) const
    {
        PolyVectorField r(dim());
        for (int k = 0; k < dim(); ++k) r.coeff[k] = g * coeff[k];
        return r;
    }

    bool operator==(const PolyVectorField&) const = default;
};

} // namespace carnot
