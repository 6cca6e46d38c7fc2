#pragma once

#include <carnot/algebra.hpp>
#include <carnot/gauge.hpp>
#include <carnot/polynomial.hpp>
#include <carnot/vector_field.hpp>

#include <vector>

namespace carnot {

/// B_0..B_n with B_1 = -1/2 (the x/(e^x-1) convention).
std::vector<Rational> bernoulli_numbers(int n_max);

/// The group law in exponential coordinates: q polynomials in the 2q
/// variables (u_1..u_q, v_1..v_q). Exact, truncation-free by nilpotency.
struct GroupLaw {
    StratifiedAlgebra algebra;
    std::vector<Polynomial> mu;

    /// mu(mu(u,v),w) - mu(u,mu(v,w)) as polynomials in 3q variables.
    std::vector<Polynomial> associativity_residual() const;
    /// mu with one argument frozen to a rational point: left translation
    /// L_g(x) = mu(g, x) (or the right version) as q polynomials in q vars.
    std::vector<Polynomial> translation(std::span<const Rational> g, bool left = true) const;
};

/// Commutator series for the product of exponentials, evaluated through the
/// structure constants. Exact on exact input.
GroupLaw bch_symbolic(const StratifiedAlgebra& a);
std::vector<Rational> bch(const StratifiedAlgebra& a, std::span<const Rational> u,
                          std::span<const Rational> v);
std::vector<double> bch(const StratifiedAlgebra& a, std::span<const double> u,
                        std::span<const double> v);

/// Coefficients of d exp|_v(w) in the left-invariant frame:
/// sum_{n<m} (-1)^n/(n+1)! ad(v)^n w.
std::vector<Rational> dexp_frame_coefficients(const StratifiedAlgebra& a,
                                              std::span<const Rational> v,
                                              std::span<const Rational> w);

std::vector<Rational> dilate(const StratifiedAlgebra& a, const Rational& r,
                             std::span<const Rational> x);
std::vector<double> dilate(const StratifiedAlgebra& a, double r, std::span<const double> x);

/// The left-invariant frame in exponential coordinates. Each field is
/// Y_l = d_l + sum_{l'} zeta[l][l'] d_{l'}; the correction matrix zeta is
/// strictly weight-triangular and vanishes at the origin.
struct LeftInvariantFrame {
    StratifiedAlgebra algebra;
    std::vector<PolyVectorField> fields;
    std::vector<std::vector<Polynomial>> zeta;

    int dim() const { return algebra.dim(); }
    /// Horizontal sub-frame Y_1..Y_{n_1}.
    std::vector<PolyVectorField> horizontal() const
    {
        return {fields.begin(), fields.begin() + algebra.first_layer_dim()};
    }
};

/// Frame from the Bernoulli-weighted commutator series.
LeftInvariantFrame left_invariant_fields(const StratifiedAlgebra& a);

/// Independent derivation: Jacobian of mu(x, v) in v at v = 0, minus the
/// identity. Must coincide with the series route; kept as a permanent
/// cross-check against transcription errors.
std::vector<std::vector<Polynomial>> frame_from_group_law(const GroupLaw& law);

/// Generator of dilations. sigma holds the coefficients over the
/// left-invariant frame; the coordinate form is sum omega_l x_l d_l.
struct RadialField {
    std::vector<Polynomial> sigma;
    PolyVectorField coordinate_form;
    PolyVectorField frame_form; // sum sigma_l Y_l, expanded in coordinates
};

RadialField radial_field(const StratifiedAlgebra& a, const LeftInvariantFrame& frame);

/// LHS minus RHS of the commutator-structure identity tying sigma to zeta;
/// the zero polynomial for every l' on a valid algebra.
Polynomial remarkable_identity_residual(const StratifiedAlgebra& a,
                                        const LeftInvariantFrame& frame,
                                        int lprime);

/// Residuals of R(rho^w) - w rho^w in coordinate and frame forms.
struct EulerIdentityResiduals {
    Polynomial coordinate_form;
    Polynomial frame_form;
};
EulerIdentityResiduals euler_gauge_identity(const StratifiedAlgebra& a,
                                            const LeftInvariantFrame& frame,
                                            const Gauge& gauge);

/// sum_{l <= n_1} Y_l(Y_l f).
Polynomial sublaplacian_apply(const LeftInvariantFrame& frame, const Polynomial& f);
GaugeExpr sublaplacian_apply(const LeftInvariantFrame& frame, const GaugeExpr& f);

} // namespace carnot
