#ifndef HBB_LINALG_HPP
#define HBB_LINALG_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hbb/error.hpp"
#include "hbb/fields.hpp"

namespace hbb {

/// Dense row-major matrix over an exact field.
template <ExactField F>
class Matrix
{
public:
    using value_type = value_t<F>;

    Matrix(F field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero())
    {
    }

    static Matrix identity(const F& field, std::size_t n)
    {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = field.one();
        return m;
    }

    /// Build from rows of values; all rows must have the same length.
    static Matrix from_rows(const F& field, const std::vector<std::vector<value_type>>& rows)
    {
        const std::size_t c = rows.empty() ? 0 : rows.front().size();
        Matrix m(field, rows.size(), c);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != c)
                throw Error(ErrorKind::InvalidInput, "ragged matrix rows");
            for (std::size_t j = 0; j < c; ++j)
                m(i, j) = rows[i][j];
        }
        return m;
    }

    const F& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transpose() const
    {
        Matrix t(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    std::vector<value_type> column(std::size_t j) const
    {
        std::vector<value_type> out;
        out.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            out.push_back((*this)(i, j));
        return out;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_)
            throw Error(ErrorKind::InvalidInput, "matrix dimensions do not match");
        Matrix out(a.field_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const value_type& aik = a(i, k);
                if (aik.is_zero())
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    out(i, j) += aik * b(k, j);
            }
        return out;
    }

    std::vector<value_type> apply(const std::vector<value_type>& v) const
    {
        std::vector<value_type> out(rows_, field_.zero());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out[i] += (*this)(i, j) * v[j];
        return out;
    }

    friend Matrix operator+(Matrix a, const Matrix& b)
    {
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            a.data_[i] += b.data_[i];
        return a;
    }
    friend Matrix operator-(Matrix a, const Matrix& b)
    {
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            a.data_[i] -= b.data_[i];
        return a;
    }
    friend Matrix operator*(const value_type& s, Matrix a)
    {
        for (auto& v : a.data_)
            v *= s;
        return a;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    F field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<value_type> data_;
};

/// Reduced row echelon form in place; returns the pivot columns.
template <ExactField F>
std::vector<std::size_t> row_reduce(Matrix<F>& m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && m(sel, col).is_zero())
            ++sel;
        if (sel == m.rows())
            continue;
        if (sel != row)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(sel, j), m(row, j));
        const auto inv = m(row, col).inverse();
        for (std::size_t j = col; j < m.cols(); ++j)
            m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero())
                continue;
            const auto factor = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m(i, j) -= factor * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <ExactField F>
std::size_t rank(Matrix<F> m)
{
    return row_reduce(m).size();
}

/// Basis of {v : m v = 0}.
template <ExactField F>
std::vector<std::vector<value_t<F>>> nullspace(Matrix<F> m)
{
    const F field = m.field();
    const auto pivots = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots)
        is_pivot[c] = true;
    std::vector<std::vector<value_t<F>>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        std::vector<value_t<F>> v(m.cols(), field.zero());
        v[free] = field.one();
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -m(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Exact solution of a x = rhs for a full-column-rank, possibly overdetermined
/// system. SingularSystem when the columns are dependent, InconsistentSystem
/// when no solution exists.
template <ExactField F>
std::vector<value_t<F>> solve(const Matrix<F>& a, const std::vector<value_t<F>>& rhs)
{
    if (rhs.size() != a.rows())
        throw Error(ErrorKind::InvalidInput, "right-hand side has wrong length");
    Matrix<F> aug(a.field(), a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            aug(i, j) = a(i, j);
        aug(i, a.cols()) = rhs[i];
    }
    const auto pivots = row_reduce(aug);
    const bool inconsistent = !pivots.empty() && pivots.back() == a.cols();
    const std::size_t rank = pivots.size() - (inconsistent ? 1 : 0);
    if (rank < a.cols())
        throw Error(ErrorKind::SingularSystem, "linear system is singular (rank " + std::to_string(rank) + " < " +
                                                   std::to_string(a.cols()) + ")");
    if (inconsistent)
        throw Error(ErrorKind::InconsistentSystem, "linear system has no solution");
    std::vector<value_t<F>> x;
    x.reserve(a.cols());
    for (std::size_t i = 0; i < a.cols(); ++i)
        x.push_back(aug(i, a.cols()));
    return x;
}

// ---------------------------------------------------------------------------
// Univariate polynomials as coefficient vectors, lowest degree first
// ---------------------------------------------------------------------------

template <ExactField F>
value_t<F> horner(const F& field, const std::vector<value_t<F>>& coeffs, const value_t<F>& x)
{
    value_t<F> acc = field.zero();
    for (std::size_t i = coeffs.size(); i-- > 0;)
        acc = acc * x + coeffs[i];
    return acc;
}

/// Quotient of coeffs by (x - root); the remainder is discarded.
template <ExactField F>
std::vector<value_t<F>> deflate(const F& field, const std::vector<value_t<F>>& coeffs, const value_t<F>& root)
{
    if (coeffs.size() <= 1)
        return {field.zero()};
    std::vector<value_t<F>> q(coeffs.size() - 1, field.zero());
    value_t<F> carry = field.zero();
    for (std::size_t i = coeffs.size(); i-- > 1;) {
        carry = carry * root + coeffs[i];
        q[i - 1] = carry;
    }
    return q;
}

/// Multiplicity of `root` as a root of coeffs (coeffs not identically zero).
template <ExactField F>
std::size_t root_multiplicity(const F& field, std::vector<value_t<F>> coeffs, const value_t<F>& root)
{
    std::size_t mult = 0;
    while (coeffs.size() > 1 && horner(field, coeffs, root).is_zero()) {
        coeffs = deflate(field, coeffs, root);
        ++mult;
    }
    return mult;
}

/// Characteristic polynomial det(x I - m), monic, by similarity reduction to
/// upper Hessenberg form followed by the Hessenberg determinant recurrence.
template <ExactField F>
std::vector<value_t<F>> charpoly(Matrix<F> h)
{
    if (!h.is_square())
        throw Error(ErrorKind::InvalidInput, "characteristic polynomial of a non-square matrix");
    const F field = h.field();
    const std::size_t n = h.rows();
    using V = value_t<F>;

    for (std::size_t m = 1; m + 1 < n; ++m) {
        std::size_t i = m;
        while (i < n && h(i, m - 1).is_zero())
            ++i;
        if (i == n)
            continue;
        if (i != m) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(h(i, j), h(m, j));
            for (std::size_t j = 0; j < n; ++j)
                std::swap(h(j, i), h(j, m));
        }
        const V pivot_inv = h(m, m - 1).inverse();
        for (std::size_t r = m + 1; r < n; ++r) {
            if (h(r, m - 1).is_zero())
                continue;
            const V u = h(r, m - 1) * pivot_inv;
            for (std::size_t j = 0; j < n; ++j)
                h(r, j) -= u * h(m, j);
            for (std::size_t j = 0; j < n; ++j)
                h(j, m) += u * h(j, r);
        }
    }

    // p[k] is the characteristic polynomial of the leading k x k block
    std::vector<std::vector<V>> p(n + 1);
    p[0] = {field.one()};
    for (std::size_t m = 1; m <= n; ++m) {
        std::vector<V> next(m + 1, field.zero());
        for (std::size_t k = 0; k < p[m - 1].size(); ++k) {
            next[k + 1] += p[m - 1][k];
            next[k] -= h(m - 1, m - 1) * p[m - 1][k];
        }
        V t = field.one();
        for (std::size_t i = 1; i < m; ++i) {
            t *= h(m - i, m - i - 1);
            const V f = t * h(m - i - 1, m - 1);
            if (f.is_zero())
                continue;
            for (std::size_t k = 0; k < p[m - i - 1].size(); ++k)
                next[k] -= f * p[m - i - 1][k];
        }
        p[m] = std::move(next);
    }
    return p[n];
}

} // namespace hbb

#endif
