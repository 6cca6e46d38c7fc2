#pragma once

#include <carnot/gauge.hpp>
#include <carnot/group.hpp>
#include <carnot/linalg.hpp>
#include <carnot/scan.hpp>
#include <carnot/vector_field.hpp>

#include <optional>
#include <string>
#include <vector>

namespace carnot {

/// A family of polynomial horizontal vector fields on R^q with a marked
/// base point. No group structure is assumed.
struct FieldFamily {
    int dim = 0;
    std::vector<PolyVectorField> fields;
    std::vector<Rational> base_point;
    std::optional<std::vector<int>> coordinate_weights; // per-coordinate override
    std::string name;
};

/// The rank-3 step-3 family on R^5 whose natural gauge fails to be a symbol
/// of order 1 in the given coordinates.
FieldFamily counterexample_family();

/// A group preset's horizontal frame, repackaged as a plain field family
/// (base point at the identity).
FieldFamily family_from_frame(const LeftInvariantFrame& frame);

struct BracketWord {
    std::vector<int> letters; // field indices, outermost first
    PolyVectorField field;
};

struct FlagReport {
    std::vector<int> dims;                // n_1 <= n_2 <= ... at the base point
    std::optional<int> step;              // first depth reaching full rank
    bool hoermander = false;              // step found within the probed depth
    std::vector<BracketWord> adapted_basis; // q words, depth-ascending
    std::vector<int> basis_layer;           // layer of each basis word
    RationalMatrix eval_matrix;             // columns = basis values at the base point
    std::vector<int> coordinate_weights;    // empty when not derivable (see zeta_table)
    bool regular = false;                   // same dims at all probe points
    int probe_points = 0;
};

/// Exact bracket flag at the base point; regularity probed at random
/// rational points in a box around it (exact ranks there as well).
FlagReport bracket_flag(const FieldFamily& f, int max_depth, int probe_points = 64,
                        uint64_t seed = 1, const Rational& probe_halfwidth = Rational(1, 2));

/// The adapted frame written over the coordinate directions:
/// field_for_coordinate[c] has value e_c at the (centered) base point, and
/// zeta[c][c'] are its correction coefficients, zeta(0) = 0.
struct ZetaTable {
    int dim = 0;
    std::vector<int> weights;                      // per coordinate
    std::vector<PolyVectorField> adapted_fields;   // indexed by coordinate
    std::vector<std::vector<Polynomial>> zeta;     // [c][c']
    std::vector<PolyVectorField> horizontal;       // weight-1 adapted fields, coordinate order
    std::vector<int> horizontal_coords;            // their coordinate indices
};

/// Requires the base point at the origin and basis evaluations equal to
/// coordinate directions (a 0/1 permutation matrix) — i.e. the family is
/// already in adapted coordinates up to coordinate order. Use
/// adapted_coordinates() first otherwise.
ZetaTable zeta_table(const FieldFamily& f, const FlagReport& flag);

struct AdaptedCoordinates {
    RationalMatrix change;   // x = xbar + M y
    RationalMatrix inverse;  // M^{-1}
    FieldFamily transformed; // the family in y coordinates, base point 0
};

/// Affine change mapping the base point to 0 and the adapted basis
/// evaluations to the standard frame.
AdaptedCoordinates adapted_coordinates(const FieldFamily& f, const FlagReport& flag);

struct WellAdaptedViolation {
    int field_coord = 0;   // l (a weight-1 coordinate)
    int target_coord = 0;  // l' with weight >= 3
    Polynomial::Exponents alpha;
    Rational value;
};

struct WellAdaptedReport {
    bool well_adapted = false;
    std::vector<WellAdaptedViolation> violations;
};

/// Exact Taylor-coefficient criterion: for every weight-1 field row l and
/// every column l' of weight >= 3, all coefficients of weighted degree
/// <= omega_{l'} - 2 in zeta_{l,l'} must vanish. (For step 3 this is the
/// vanishing of the weight-1 linear part.)
WellAdaptedReport well_adapted_check(const ZetaTable& z);

struct Step3Repair {
    bool identity = false;              // input already well-adapted
    std::vector<Polynomial> forward;    // y_c(x)
    std::vector<Polynomial> inverse;    // x_c(y)
    bool symmetry_ok = false;           // mixed first partials matched exactly
    std::vector<PolyVectorField> dual_frame; // the integrated commuting fields
    FieldFamily repaired;               // family rewritten in y coordinates
};

/// Quadratic change of coordinates removing the weight-1 linear part of the
/// weight-3 zeta columns; valid for regular step-3 flags. Throws when the
/// symmetry of mixed partials fails (would contradict regularity).
Step3Repair step3_repair(const FieldFamily& f, const ZetaTable& z);

struct GeneralRadial {
    std::vector<Polynomial> sigma;       // coefficients over the adapted fields
    std::vector<Polynomial> sigma_tilde; // exact coordinate-form residuals
    PolyVectorField field;               // sum (omega_c x_c + sigma_tilde_c) d_c
    bool exact = false;                  // sigma_tilde identically zero
};

/// sigma solves  sigma (I + zeta) = (omega_c x_c)  by the finite Neumann
/// series, truncated at weighted degree step + truncation_excess; the
/// residual sigma_tilde is then computed exactly from the truncated sigma.
GeneralRadial general_radial(const ZetaTable& z, int truncation_excess = 1);

struct RadialQualityReport {
    bool div_exact = false;    // div R == Q as a polynomial
    bool lambda_exact = false; // sigma_tilde == 0, so R rho == rho exactly
    ScanVerdict div_verdict = ScanVerdict::Inconclusive;      // |div R - Q| / rho
    ScanVerdict lambda_verdict = ScanVerdict::Inconclusive;   // |lambda - 1| / rho
    ScanVerdict r_lambda_verdict = ScanVerdict::Inconclusive; // |R lambda| / rho
    std::vector<std::pair<int, ScanVerdict>> sigma_orders;       // order omega_c
    std::vector<std::pair<int, ScanVerdict>> sigma_tilde_orders; // order omega_c + 1
    ScanVerdict overall = ScanVerdict::Inconclusive;
};

RadialQualityReport radial_quality_checks(const ZetaTable& z, const GeneralRadial& r,
                                          const ShellSpec& shells);

} // namespace carnot
