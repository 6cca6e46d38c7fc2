#pragma once

#include <carnot/group.hpp>
#include <carnot/quadrature.hpp>
#include <carnot/test_function.hpp>

#include <string>
#include <vector>

namespace carnot {

/// Quadrature spec derived from the function's support: per-coordinate box
/// h_l = R^{omega_l} and the matching odd-power axis maps.
QuadratureSpec default_quadrature(const TestFunction& f, int points = 48);

/// Per-order blocks of the squared Sobolev norm: block[j] sums the
/// integrals of |D_gamma f|^2 over all n_1^j non-commutative words gamma of
/// length j in the horizontal frame.
struct SobolevBreakdown {
    std::vector<double> block;
    double total() const;
};

SobolevBreakdown sobolev_blocks(const TestFunction& f, const LeftInvariantFrame& frame,
                                int s, const QuadratureSpec& spec);
double sobolev_sq_norm(const TestFunction& f, const LeftInvariantFrame& frame, int s,
                       const QuadratureSpec& spec);

/// integral of |f|^2 / rho^{2s}.
/// Annular functions go through plain quadrature (their support avoids the
/// singularity). Gauge-exponentials use the exact scaling factorization:
/// |f|^2 splits into weighted-homogeneous components G_d, each of which
/// integrates against any radial profile through a single angular moment,
///   integral G_d(x) phi(rho(x)) dx = A_d * integral_0^inf phi(r) r^{d+Q-1} dr,
/// so the full integral reduces to Gamma factors once A_d is measured with
/// the smooth probe phi = exp(-rho^w). No quadrature point ever touches the
/// singularity. Requires 2s < Q.
struct WeightedL2 {
    double value = 0.0;
    double error_estimate = 0.0;
};
WeightedL2 weighted_l2(const TestFunction& f, int s, const QuadratureSpec& spec);

/// Diagnostic variant: plain quadrature with a small excluded gauge ball
/// around the origin. Bias is O(eps^{Q-2s}) for bounded f; kept as a
/// cross-check of the factorized route.
double weighted_l2_excluded(const TestFunction& f, int s, const QuadratureSpec& spec,
                            double exclusion_radius = 1e-3);

struct HardyReport {
    int s = 0;
    double lhs = 0.0;
    double lhs_error = 0.0;
    double rhs_full = 0.0;
    double rhs_homogeneous = 0.0;
    double ratio_full = 0.0;
    double ratio_homogeneous = 0.0;
};

/// LHS, both right-hand sides, ratios. Rejects s outside [0, Q/2).
HardyReport hardy_report(const TestFunction& f, const LeftInvariantFrame& frame, int s,
                         const QuadratureSpec& spec);

/// Integration-by-parts core identity for an annular test function:
///   (Q/2 - s) integral |phi|^2/rho^{2s} = - sum_l integral sigma_l phi Y_l(phi) / rho^{2s}.
/// The identity is exact; the relative residual is pure quadrature error.
/// Rejects non-annular phi (boundary terms would appear) and s < 1.
struct IbpCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double relative_residual = 0.0;
};
IbpCheck ibp_residual(const TestFunction& phi, const LeftInvariantFrame& frame,
                      const RadialField& radial, int s, const QuadratureSpec& spec);

/// Scaling table for f -> f(delta_r .): the weighted L2 mass scales by
/// r^{2s-Q}, plain mass by r^{-Q}, and the order-j Sobolev block by
/// r^{2j-Q}. Boxes follow the dilated support so each side is resolved
/// identically.
struct ScalingRow {
    std::string quantity;
    double observed = 0.0;
    double expected = 0.0;
    double relative_error = 0.0;
};
struct ScalingCheck {
    Rational r;
    std::vector<ScalingRow> rows;
    double max_relative_error = 0.0;
};
ScalingCheck homogeneity_check(const TestFunction& f, const LeftInvariantFrame& frame,
                               int s, const Rational& r, int points = 48);

/// Euclidean anchor on R^n (abelian, n >= 3): every member must satisfy
/// LHS <= 4/(n-2)^2 * grad^2 up to quadrature error; radial members are
/// evaluated by the exact 1-D reduction and can approach the constant.
struct EuclidMember {
    std::string label;
    double lhs = 0.0;
    double grad_sq = 0.0;
    double ratio = 0.0;
};
struct EuclidReport {
    double bound = 0.0; // 4/(n-2)^2
    std::vector<EuclidMember> members;
    double max_ratio = 0.0;
};
EuclidReport euclid_constant_check(int n, const std::vector<TestFunction>& family,
                                   const std::vector<double>& radial_log_ranges,
                                   const QuadratureSpec& spec);

/// Hardy ratio of the radial profile |x|^{-1/2} with smooth log-domain ramps
/// over a window of the given log-length, on R^3. Brute-force 1-D sweep
/// material; approaches 4 as the window grows.
double radial_profile_ratio(double log_range, int ramp_p = 8, double ramp_width = 4.0);

/// Dyadic breakdown of the weighted L2 mass of a gauge-exponential near the
/// origin: contribution of the shell 2^{-k-1} <= rho < 2^{-k}. For
/// 2s > Q the contributions grow by 2^{2s-Q} per shell; at 2s = Q they
/// flatten to a positive constant. The numerical face of the s < Q/2
/// restriction, usable for any s >= 0.
std::vector<double> lhs_shell_contributions(const TestFunction& f, int s, int k_min,
                                            int k_max, const QuadratureSpec& spec);

} // namespace carnot
