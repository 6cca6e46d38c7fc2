#include <carnot/linalg.hpp>

#include <stdexcept>

namespace carnot {

int RationalMatrix::rank() const
{
    RankAccumulator acc(cols_);
    for (int r = 0; r < rows_; ++r) {
        std::vector<Rational> row(cols_);
        for (int c = 0; c < cols_; ++c) row[c] = (*this)(r, c);
        acc.insert(std::move(row));
    }
    return acc.rank();
}

std::optional<RationalMatrix> RationalMatrix::inverse() const
{
    if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
    const int n = rows_;
    RationalMatrix a = *this;
    RationalMatrix inv = RationalMatrix::identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (a(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return std::nullopt;
        if (pivot != col) {
            for (int c = 0; c < n; ++c) {
                std::swap(a(pivot, c), a(col, c));
                std::swap(inv(pivot, c), inv(col, c));
            }
        }
        const Rational p = a(col, col);
        for (int c = 0; c < n; ++c) {
            a(col, c) /= p;
            inv(col, c) /= p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || a(r, col) == 0) continue;
            const Rational f = a(r, col);
            for (int c = 0; c < n; ++c) {
                a(r, c) -= f * a(col, c);
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

RationalMatrix RationalMatrix::multiply(const RationalMatrix& o) const
{
    if (cols_ != o.rows_) throw std::invalid_argument("matrix size mismatch");
    RationalMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
        }
    return r;
}

std::vector<Rational> RationalMatrix::apply(const std::vector<Rational>& v) const
{
    if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("vector size mismatch");
    std::vector<Rational> out(rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0) out[i] += (*this)(i, j) * v[j];
    return out;
}

bool RankAccumulator::insert(std::vector<Rational> v)
{
    if (static_cast<int>(v.size()) != dim_) throw std::invalid_argument("vector size mismatch");
    for (size_t b = 0; b < basis_.size(); ++b) {
        const int lead = lead_[b];
        if (v[lead] == 0) continue;
        const Rational f = v[lead]; // basis rows are normalized to lead 1
        for (int c = 0; c < dim_; ++c) v[c] -= f * basis_[b][c];
    }
    int lead = -1;
    for (int c = 0; c < dim_; ++c)
        if (v[c] != 0) {
            lead = c;
            break;
        }
    if (lead < 0) return false;
    const Rational p = v[lead];
    for (int c = 0; c < dim_; ++c) v[c] /= p;
    basis_.push_back(std::move(v));
    lead_.push_back(lead);
    return true;
}

} // namespace carnot
