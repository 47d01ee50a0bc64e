#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "scrollcert/fp.hpp"
#include "scrollcert/rat.hpp"

namespace scrollcert {

// Dense rectangular matrix over an exact field scalar (Fp, Fp2 or Rat).
// Entries are value types carrying their own domain; no default construction
// is ever required of the scalar.
template <class T>
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols, const T& fill)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {
        if (rows == 0 || cols == 0)
            throw std::invalid_argument("Matrix: empty shape");
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        if (rows.empty() || rows.front().empty())
            throw std::invalid_argument("Matrix: empty row data");
        Matrix m(rows.size(), rows.front().size(), rows.front().front());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw std::invalid_argument("Matrix: ragged rows");
            for (std::size_t j = 0; j < m.cols_; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& at(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_, data_.front());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("Matrix: product shape mismatch");
        const T zero = zero_like(a.data_.front());
        Matrix c(a.rows_, b.cols_, zero);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a.at(i, k);
                if (is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c.at(i, j) += aik * b.at(k, j);
            }
        return c;
    }

    Matrix stack_below(const Matrix& other) const {
        if (other.cols_ != cols_)
            throw std::invalid_argument("Matrix: stack shape mismatch");
        Matrix s(rows_ + other.rows_, cols_, data_.front());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) s.at(i, j) = at(i, j);
        for (std::size_t i = 0; i < other.rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                s.at(rows_ + i, j) = other.at(i, j);
        return s;
    }

private:
    std::size_t rows_, cols_;
    std::vector<T> data_;
};

template <class T>
struct RrefResult {
    std::size_t rank;
    std::vector<std::size_t> pivot_cols;
    Matrix<T> reduced;
};

// Gauss-Jordan; exact over any field scalar.
template <class T>
RrefResult<T> rref(Matrix<T> m) {
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
    for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
        std::size_t sel = rank;
        while (sel < m.rows() && is_zero(m.at(sel, col))) ++sel;
        if (sel == m.rows()) continue;
        if (sel != rank)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m.at(sel, j), m.at(rank, j));
        const T inv = one_like(m.at(rank, col)) / m.at(rank, col);
        for (std::size_t j = col; j < m.cols(); ++j) m.at(rank, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == rank || is_zero(m.at(i, col))) continue;
            const T f = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                m.at(i, j) -= f * m.at(rank, j);
        }
        pivots.push_back(col);
        ++rank;
    }
    return {rank, std::move(pivots), std::move(m)};
}

template <class T>
std::size_t rank_of(const Matrix<T>& m) {
    return rref(m).rank;
}

// Exact rank plus a basis of the right null space, one kernel vector per
// column. rank + kernel columns == cols always.
template <class T>
std::pair<std::size_t, std::vector<std::vector<T>>> rref_rank(
    const Matrix<T>& m) {
    const T zero = zero_like(m.at(0, 0));
    const T one = one_like(m.at(0, 0));
    RrefResult<T> r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t c : r.pivot_cols) is_pivot[c] = true;

    std::vector<std::vector<T>> kernel;
    for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<T> v(m.cols(), zero);
        v[free_col] = one;
        for (std::size_t i = 0; i < r.rank; ++i)
            v[r.pivot_cols[i]] = -r.reduced.at(i, free_col);
        kernel.push_back(std::move(v));
    }
    return {r.rank, std::move(kernel)};
}

template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("inverse: matrix not square");
    const T zero = zero_like(m.at(0, 0));
    const T one = one_like(m.at(0, 0));
    Matrix<T> aug(m.rows(), 2 * m.cols(), zero);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols() + i) = one;
    }
    RrefResult<T> r = rref(aug);
    if (r.rank < m.rows())
        throw std::domain_error("inverse: matrix is singular");
    for (std::size_t i = 0; i < r.rank; ++i)
        if (r.pivot_cols[i] != i)
            throw std::domain_error("inverse: matrix is singular");
    Matrix<T> inv(m.rows(), m.cols(), zero);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            inv.at(i, j) = r.reduced.at(i, m.cols() + j);
    return inv;
}

template <class T>
T determinant(Matrix<T> m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = m.rows();
    T det = one_like(m.at(0, 0));
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t r = k;
        while (r < n && is_zero(m.at(r, k))) ++r;
        if (r == n) return zero_like(det);
        if (r != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(r, j), m.at(k, j));
            det = -det;
        }
        det *= m.at(k, k);
        const T inv = one_like(det) / m.at(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (is_zero(m.at(i, k))) continue;
            const T f = m.at(i, k) * inv;
            for (std::size_t j = k; j < n; ++j) m.at(i, j) -= f * m.at(k, j);
        }
    }
    return det;
}

template <class T>
bool vec_is_zero(const std::vector<T>& v) {
    for (const auto& x : v)
        if (!is_zero(x)) return false;
    return true;
}

template <class T>
Matrix<T> identity_like(std::size_t n, const T& sample) {
    Matrix<T> id(n, n, zero_like(sample));
    for (std::size_t i = 0; i < n; ++i) id.at(i, i) = one_like(sample);
    return id;
}

} // namespace scrollcert
