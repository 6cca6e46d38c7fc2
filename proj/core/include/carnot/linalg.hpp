#pragma once

#include <carnot/rational.hpp>

#include <optional>
#include <vector>

namespace carnot {

/// Dense matrix over Q, row-major. Sizes here are tiny (q <= ~16), so plain
/// fraction-pivot Gaussian elimination is exact and fast enough.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RationalMatrix identity(int n)
    {
        RationalMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& operator()(int r, int c) { return data_[r * cols_ + c]; }
    const Rational& operator()(int r, int c) const { return data_[r * cols_ + c]; }

    int rank() const;
    std::optional<RationalMatrix> inverse() const;
    RationalMatrix multiply(const RationalMatrix& o) const;
    std::vector<Rational> apply(const std::vector<Rational>& v) const;

    bool operator==(const RationalMatrix&) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rational> data_;
};

/// Incremental exact rank tracker: feed row vectors, query the dimension of
/// their span. Backs flag computations and the layer-generation axiom.
class RankAccumulator {
public:
    explicit RankAccumulator(int dim) : dim_(dim) {}

    /// Returns true if the vector increased the rank (was independent).
    bool insert(std::vector<Rational> v);
    int rank() const { return static_cast<int>(basis_.size()); }

private:
    int dim_;
    std::vector<std::vector<Rational>> basis_; // row-echelon, leading col recorded
    std::vector<int> lead_;
};

} // namespace carnot
