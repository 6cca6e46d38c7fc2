#pragma once

#include <carnot/rational.hpp>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace carnot {

/// Sparse vector over basis indices (0-based), exact coefficients.
using SparseVec = std::map<int, Rational>;

/// Raw algebra definition as read from JSON or built by a preset.
/// Bracket entries are stored for i<j only; antisymmetry is implied.
struct AlgebraDef {
    std::vector<int> layer_dims;
    std::map<std::pair<int, int>, SparseVec> brackets;
    std::map<int, std::vector<int>> witnesses; // basis index -> first-layer word
    std::string name;
};

struct ValidationIssue {
    std::string axiom;        // "antisymmetry", "grading", "jacobi", "generation", ...
    std::vector<int> indices; // witnessing indices (0-based)
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> structural; // malformed input, not axiom failures
    std::vector<ValidationIssue> violations;
    bool ok() const { return structural.empty() && violations.empty(); }
};

/// A stratified nilpotent Lie algebra presented by an adapted basis:
/// layer dimensions, the induced weights, and exact structure constants.
/// Immutable after construction; shareable across threads.
class StratifiedAlgebra {
public:
    /// Throws std::invalid_argument when the definition is structurally
    /// malformed (bad dimensions or indices). Axiom violations do not throw;
    /// they are reported by validate().
    static StratifiedAlgebra create(AlgebraDef def);

    /// Structural checks plus all stratification axioms.
    static ValidationReport validate_def(const AlgebraDef& def);
    ValidationReport validate() const { return validate_def(def_); }

    const std::string& name() const { return def_.name; }
    int dim() const { return q_; }
    int step() const { return static_cast<int>(def_.layer_dims.size()); }
    const std::vector<int>& layer_dims() const { return def_.layer_dims; }
    const std::vector<int>& weights() const { return weights_; }
    int weight(int l) const { return weights_.at(l); }
    /// Cumulative dimensions n_0..n_m (n_0 = 0, n_m = q).
    const std::vector<int>& cumulative_dims() const { return cum_; }
    int first_layer_dim() const { return def_.layer_dims[0]; }
    int homogeneous_dimension() const;

    const AlgebraDef& def() const { return def_; }
    const std::map<int, std::vector<int>>& witnesses() const { return def_.witnesses; }

    /// [Y_i, Y_j] as a sparse vector; handles any index order and i == j.
    SparseVec basis_bracket(int i, int j) const;

    /// Bilinear bracket of coordinate vectors. Exact on exact input.
    std::vector<Rational> bracket(std::span<const Rational> u,
                                  std::span<const Rational> v) const;
    std::vector<double> bracket(std::span<const double> u,
                                std::span<const double> v) const;

    /// Coefficient of Y_target in [Y_{w0}, [..., [Y_{w_{n-1}}, Y_{w_n}]]].
    Rational kappa(std::span<const int> word, int target) const;

    /// Right-nested bracket of basis vectors indexed by `word`.
    std::vector<Rational> word_bracket(std::span<const int> word) const;

    /// Slice of coordinates belonging to layer j (1-based layer index).
    std::pair<int, int> layer_range(int j) const { return {cum_[j - 1], cum_[j]}; }

    /// Flat view of the stored constants: tuples (i, j, k, c) with i < j.
    struct Entry {
        int i, j, k;
        Rational c;
    };
    const std::vector<Entry>& entries() const { return entries_; }

private:
    StratifiedAlgebra() = default;

    AlgebraDef def_;
    int q_ = 0;
    std::vector<int> weights_;
    std::vector<int> cum_;
    std::vector<Entry> entries_;
};

/// Result of the exact witness search (breadth-first over first-layer
/// words, checked through kappa).
struct WitnessSearch {
    std::map<int, std::vector<int>> found;
    std::vector<int> missing; // basis indices with no exact witness word
    bool complete() const { return missing.empty(); }
};

WitnessSearch find_bracket_witnesses(const StratifiedAlgebra& a);

// Presets.
StratifiedAlgebra heisenberg(int n = 1);
StratifiedAlgebra engel();
StratifiedAlgebra abelian(int n);

/// Free nilpotent Lie algebra on `generators` generators of step `step`,
/// presented on the classical Hall basis (degree-then-creation order).
/// Throws std::length_error when the Witt dimension exceeds `dim_cap`.
StratifiedAlgebra free_nilpotent(int generators, int step, int dim_cap = 64);

/// Resolve "heisenberg", "heisenberg2", "engel", "abelian3", "free:2:3", ...
std::optional<StratifiedAlgebra> algebra_preset(const std::string& name);

} // namespace carnot
