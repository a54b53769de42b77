#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace gpsub::linalg {

// Dense matrix over an exact field type F (Rational or Cyclotomic): F needs
// +,-,*,/ and is_zero(). Elimination uses plain first-nonzero pivoting, which
// is deterministic and exact; matrices here are desk-scale.
template <class F>
struct Matrix {
    size_t rows = 0, cols = 0;
    std::vector<F> a;

    Matrix() = default;
    Matrix(size_t r, size_t c, const F& fill) : rows(r), cols(c), a(r * c, fill) {}

    F& at(size_t r, size_t c) { return a[r * cols + c]; }
    const F& at(size_t r, size_t c) const { return a[r * cols + c]; }
};

// In-place reduced row echelon form; returns the pivot column of each
// eliminated row, in order.
template <class F>
std::vector<size_t> rref(Matrix<F>& m) {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
        size_t pr = row;
        while (pr < m.rows && m.at(pr, col).is_zero()) ++pr;
        if (pr == m.rows) continue;
        if (pr != row)
            for (size_t c = 0; c < m.cols; ++c) std::swap(m.at(pr, c), m.at(row, c));
        F inv = m.at(row, col);
        for (size_t c = col; c < m.cols; ++c) m.at(row, c) = m.at(row, c) / inv;
        for (size_t r = 0; r < m.rows; ++r) {
            if (r == row || m.at(r, col).is_zero()) continue;
            F factor = m.at(r, col);
            for (size_t c = col; c < m.cols; ++c)
                m.at(r, c) = m.at(r, c) - factor * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class F>
size_t rank(Matrix<F> m) {
    return rref(m).size();
}

// Basis of the right null space {x : m x = 0}; needs exemplar zero/one
// values because F may carry field context (Cyclotomic).
template <class F>
std::vector<std::vector<F>> kernel_basis(Matrix<F> m, const F& zero, const F& one) {
    std::vector<size_t> pivots = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (size_t p : pivots) is_pivot[p] = true;
    std::vector<std::vector<F>> basis;
    for (size_t free = 0; free < m.cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<F> v(m.cols, zero);
        v[free] = one;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -(m.at(r, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

// Inverse of a square matrix, or nullopt if singular.
template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m, const F& zero, const F& one) {
    Matrix<F> aug(m.rows, 2 * m.cols, zero);
    for (size_t r = 0; r < m.rows; ++r) {
        for (size_t c = 0; c < m.cols; ++c) aug.at(r, c) = m.at(r, c);
        aug.at(r, m.cols + r) = one;
    }
    std::vector<size_t> pivots = rref(aug);
    if (pivots.size() != m.rows || pivots.back() >= m.cols) return std::nullopt;
    for (size_t r = 0; r < m.rows; ++r)
        if (pivots[r] != r) return std::nullopt;
    Matrix<F> inv(m.rows, m.cols, zero);
    for (size_t r = 0; r < m.rows; ++r)
        for (size_t c = 0; c < m.cols; ++c) inv.at(r, c) = aug.at(r, m.cols + c);
    return inv;
}

}  // namespace gpsub::linalg
