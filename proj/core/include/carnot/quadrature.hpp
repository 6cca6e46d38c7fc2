#pragma once

#include <carnot/parallel.hpp>

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace carnot {

enum class QuadratureMethod { GaussLegendre, MonteCarlo };

/// Integration domain and resolution. The domain is the box
/// [-h_1,h_1] x ... x [-h_q,h_q]. Gauss-Legendre axes may carry an odd
/// power map x = t^p (node t uniform-ish in [-h^{1/p}, h^{1/p}]), which
/// concentrates nodes near the hyperplane x_l = 0 at the rate the
/// anisotropic dilations demand; p = 1 is the identity map.
struct QuadratureSpec {
    QuadratureMethod method = QuadratureMethod::GaussLegendre;
    int points_per_axis = 48;
    std::vector<double> box_halfwidths;
    std::vector<int> axis_powers; // empty = all 1
    long mc_samples = 1000000;
    uint64_t seed = 1;

    int dim() const { return static_cast<int>(box_halfwidths.size()); }

    QuadratureSpec refined(int factor = 2) const
    {
        QuadratureSpec s = *this;
        if (method == QuadratureMethod::GaussLegendre)
            s.points_per_axis *= factor;
        else
            s.mc_samples *= factor * factor;
        return s;
    }

    /// Box and axis maps covering {rho <= radius} for the given weights:
    /// h_l = radius^{w_l}, p_l = smallest odd integer >= w_l.
    static QuadratureSpec for_support(std::span<const int> weights, double radius,
                                      int points = 48);
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    /// Non-finite integrand values are treated as 0, counted, and the
    /// first offending point (smallest flat index, deterministic) recorded.
    long nonfinite_count = 0;
    std::vector<double> first_nonfinite_point;
};

using Integrand = std::function<double(std::span<const double>)>;

/// Deterministic for a fixed spec (and seed, for Monte-Carlo), independent
/// of the worker thread count. The Gauss-Legendre error estimate compares
/// against a half-resolution pass; the Monte-Carlo one is a standard error.
IntegralResult integrate(const Integrand& f, const QuadratureSpec& spec);

/// Plain tensor Gauss-Legendre value without the error-estimate pass.
double integrate_value(const Integrand& f, const QuadratureSpec& spec);

/// Nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Nodes/weights of the mapped axis: x = sign(t)|t|^p realized as t^p for
/// odd p, over x in [-h, h].
void mapped_axis(int n, double halfwidth, int power, std::vector<double>& x,
                 std::vector<double>& w);

/// 1-D integral over [a, b] with composite Gauss-Legendre panels; used by
/// radial profiles and shell decompositions.
double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    int panels = 64, int nodes_per_panel = 16);

} // namespace carnot
