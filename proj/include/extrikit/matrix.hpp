#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "field.hpp"

namespace extrikit {

template <class F>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows_(r), cols_(c), a_(r * c) {}
    Matrix(std::size_t r, std::size_t c, std::vector<F> entries) : rows_(r), cols_(c), a_(std::move(entries))
    {
        if (a_.size() != r * c) throw std::invalid_argument("matrix entry count mismatch");
    }
    Matrix(std::initializer_list<std::initializer_list<long long>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        for (auto& r : rows) {
            if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
            for (auto x : r) a_.push_back(F(x));
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = F::one();
        return m;
    }
    static Matrix column(const std::vector<F>& v) { return Matrix(v.size(), 1, v); }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<F>& entries() const { return a_; }
    std::vector<F>& entries() { return a_; }

    F& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const F& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const
    {
        for (auto& x : a_)
            if (!x.is_zero()) return false;
        return true;
    }
    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator+(const Matrix& o) const
    {
        check_same(o);
        Matrix r(*this);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
        return r;
    }
    Matrix operator-(const Matrix& o) const
    {
        check_same(o);
        Matrix r(*this);
        for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
        return r;
    }
    Matrix operator-() const
    {
        Matrix r(*this);
        for (auto& x : r.a_) x = -x;
        return r;
    }
    Matrix& operator+=(const Matrix& o) { return *this = *this + o; }
    Matrix operator*(F s) const
    {
        Matrix r(*this);
        for (auto& x : r.a_) x *= s;
        return r;
    }
    Matrix operator*(const Matrix& o) const
    {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product dimension mismatch");
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                F x = (*this)(i, k);
                if (x.is_zero()) continue;
                const F* orow = &o.a_[k * o.cols_];
                F* rrow = &r.a_[i * o.cols_];
                for (std::size_t j = 0; j < o.cols_; ++j) rrow[j] += x * orow[j];
            }
        return r;
    }
    std::vector<F> operator*(const std::vector<F>& v) const
    {
        if (cols_ != v.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
        std::vector<F> r(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    std::vector<F> col(std::size_t j) const
    {
        std::vector<F> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void set_col(std::size_t j, const std::vector<F>& v)
    {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
    {
        Matrix b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }
    void set_block(std::size_t r0, std::size_t c0, const Matrix& b)
    {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }
    Matrix select_cols(const std::vector<std::size_t>& idx) const
    {
        Matrix r(rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) r(i, j) = (*this)(i, idx[j]);
        return r;
    }
    Matrix select_rows(const std::vector<std::size_t>& idx) const
    {
        Matrix r(idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = (*this)(idx[i], j);
        return r;
    }

private:
    void check_same(const Matrix& o) const
    {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<F> a_;
};

using Mat = Matrix<Fp>;
using Vec = std::vector<Fp>;

template <class F>
std::ostream& operator<<(std::ostream& os, const Matrix<F>& m)
{
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    }
    return os << "]";
}

template <class F>
Matrix<F> hstack(const Matrix<F>& a, const Matrix<F>& b)
{
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
    Matrix<F> r(a.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(0, a.cols(), b);
    return r;
}

template <class F>
Matrix<F> vstack(const Matrix<F>& a, const Matrix<F>& b)
{
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
    Matrix<F> r(a.rows() + b.rows(), a.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), 0, b);
    return r;
}

template <class F>
Matrix<F> block_diag(const Matrix<F>& a, const Matrix<F>& b)
{
    Matrix<F> r(a.rows() + b.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), a.cols(), b);
    return r;
}

// Columns of the matrix built from a list of equal-length vectors.
template <class F>
Matrix<F> from_columns(const std::vector<std::vector<F>>& cols, std::size_t n)
{
    Matrix<F> m(n, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != n) throw std::invalid_argument("column length mismatch");
        m.set_col(j, cols[j]);
    }
    return m;
}

template <class F>
std::pair<Matrix<F>, std::vector<std::size_t>> rref(Matrix<F> m)
{
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m(p, c).is_zero()) ++p;
        if (p == m.rows()) continue;
        if (p != r)
            for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
        F s = m(r, c).inv();
        for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= s;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == r || m(i, c).is_zero()) continue;
            F f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
        }
        piv.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(piv)};
}

template <class F>
std::size_t rank(const Matrix<F>& m)
{
    return rref(m).second.size();
}

// Some x with a x = b, free variables zero; nullopt when inconsistent.
template <class F>
std::optional<Matrix<F>> solve(const Matrix<F>& a, const Matrix<F>& b)
{
    if (a.rows() != b.rows()) throw std::invalid_argument("solve: dimension mismatch");
    auto [r, piv] = rref(hstack(a, b));
    std::size_t n = a.cols();
    if (!piv.empty() && piv.back() >= n) return std::nullopt;
    Matrix<F> x(n, b.cols());
    for (std::size_t i = 0; i < piv.size(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) x(piv[i], j) = r(i, n + j);
    return x;
}

template <class F>
Matrix<F> kernel_basis(const Matrix<F>& m)
{
    auto [r, piv] = rref(m);
    std::vector<bool> is_piv(m.cols(), false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < m.cols(); ++c)
        if (!is_piv[c]) free.push_back(c);
    Matrix<F> k(m.cols(), free.size());
    for (std::size_t j = 0; j < free.size(); ++j) {
        k(free[j], j) = F::one();
        for (std::size_t i = 0; i < piv.size(); ++i) k(piv[i], j) = -r(i, free[j]);
    }
    return k;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m)
{
    if (m.rows() != m.cols()) return std::nullopt;
    auto x = solve(m, Matrix<F>::identity(m.rows()));
    if (!x || rank(m) != m.rows()) return std::nullopt;
    return x;
}

template <class F>
bool invertible(const Matrix<F>& m)
{
    return m.rows() == m.cols() && rank(m) == m.rows();
}

// Indices of a maximal set of independent columns, chosen greedily left to right.
template <class F>
std::vector<std::size_t> independent_columns(const Matrix<F>& m)
{
    return rref(m).second;
}

template <class F>
Matrix<F> column_space(const Matrix<F>& m)
{
    return m.select_cols(independent_columns(m));
}

// Basis of the intersection of the column spaces of a and b (as columns in the ambient).
template <class F>
Matrix<F> intersect_spaces(const Matrix<F>& a, const Matrix<F>& b)
{
    if (a.cols() == 0 || b.cols() == 0) return Matrix<F>(a.rows(), 0);
    auto k = kernel_basis(hstack(a, -b));
    return column_space(a * k.block(0, 0, a.cols(), k.cols()));
}

// Columns of `cand` extending an independent set `base` to a basis of span(base, cand).
template <class F>
std::vector<std::size_t> complement_columns(const Matrix<F>& base, const Matrix<F>& cand)
{
    auto piv = independent_columns(hstack(base, cand));
    std::vector<std::size_t> r;
    for (auto p : piv)
        if (p >= base.cols()) r.push_back(p - base.cols());
    return r;
}

// Solves for coordinates with respect to a fixed set of independent columns.
template <class F>
class Coordinates {
public:
    Coordinates() = default;
    explicit Coordinates(const Matrix<F>& basis) : basis_(basis)
    {
        auto piv = independent_columns(basis.transpose());
        if (piv.size() != basis.cols()) throw std::invalid_argument("coordinate basis is not independent");
        rows_ = piv;
        inv_ = *inverse(basis.select_rows(rows_));
    }
    std::size_t dim() const { return basis_.cols(); }
    std::size_t ambient() const { return basis_.rows(); }
    const Matrix<F>& basis() const { return basis_; }

    // Coordinates assuming membership.
    std::vector<F> operator()(const std::vector<F>& v) const
    {
        std::vector<F> sub(rows_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i) sub[i] = v[rows_[i]];
        return inv_ * sub;
    }
    std::optional<std::vector<F>> checked(const std::vector<F>& v) const
    {
        auto c = (*this)(v);
        if (basis_ * c != v) return std::nullopt;
        return c;
    }
    Matrix<F> of_columns(const Matrix<F>& m) const
    {
        Matrix<F> r(dim(), m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) r.set_col(j, (*this)(m.col(j)));
        return r;
    }

private:
    Matrix<F> basis_;
    std::vector<std::size_t> rows_;
    Matrix<F> inv_;
};

}
