#pragma once

#include <cstddef>
#include <vector>

#include "nnspectra/matrix.hpp"
#include "nnspectra/rational.hpp"

namespace nnspectra {

struct RankResult {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_rows;  // in order of selection
    std::vector<std::size_t> pivot_cols;  // strictly increasing
};

namespace detail {

// Row-wise denominator clearing: positive row scalings change neither
// the rank nor which submatrices are invertible.
inline std::vector<std::vector<Integer>> to_integer_rows(const NonnegativeMatrix& a) {
    std::vector<std::vector<Integer>> w(a.rows(), std::vector<Integer>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < a.cols(); ++j) l = boost::multiprecision::lcm(l, a(i, j).denominator());
        for (std::size_t j = 0; j < a.cols(); ++j) {
            w[i][j] = a(i, j).numerator() * (l / a(i, j).denominator());
        }
    }
    return w;
}

inline Integer exact_div(const Integer& num, const Integer& den) {
    Integer q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (r != 0) throw std::logic_error("fraction-free elimination produced a non-exact division");
    return q;
}

}  // namespace detail

/*
 * Exact rank by fraction-free (Bareiss) elimination. Pivots are chosen
 * deterministically: columns left to right, and within a column the
 * first not-yet-pivotal row in original order. The returned pivot
 * rows/cols index an invertible square submatrix of A.
 */
inline RankResult rank(const NonnegativeMatrix& a) {
    RankResult result;
    if (a.empty()) return result;
    auto w = detail::to_integer_rows(a);
    std::vector<char> used(a.rows(), 0);
    Integer prev_pivot = 1;

    for (std::size_t j = 0; j < a.cols(); ++j) {
        std::size_t pivot_row = a.rows();
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (!used[i] && w[i][j] != 0) {
                pivot_row = i;
                break;
            }
        }
        if (pivot_row == a.rows()) continue;

        const Integer pivot = w[pivot_row][j];
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (used[i] || i == pivot_row) continue;
            const Integer factor = w[i][j];
            for (std::size_t l = 0; l < a.cols(); ++l) {
                w[i][l] = detail::exact_div(w[i][l] * pivot - factor * w[pivot_row][l], prev_pivot);
            }
        }
        used[pivot_row] = 1;
        prev_pivot = pivot;
        result.pivot_rows.push_back(pivot_row);
        result.pivot_cols.push_back(j);
        ++result.rank;
    }
    return result;
}

// Exact determinant of a square nonnegative matrix (the value itself may
// be any sign). Fraction-free on a denominator-cleared copy.
inline Rational determinant(const NonnegativeMatrix& a) {
    if (a.rows() != a.cols()) throw DomainError("determinant of a non-square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return Rational(1);

    auto w = detail::to_integer_rows(a);
    Rational row_scale(1);
    for (std::size_t i = 0; i < n; ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < n; ++j) l = boost::multiprecision::lcm(l, a(i, j).denominator());
        row_scale *= Rational(l);
    }

    int sign = 1;
    Integer prev_pivot = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot_row = n;
        for (std::size_t i = k; i < n; ++i) {
            if (w[i][k] != 0) {
                pivot_row = i;
                break;
            }
        }
        if (pivot_row == n) return Rational(0);
        if (pivot_row != k) {
            std::swap(w[pivot_row], w[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                w[i][j] = detail::exact_div(w[i][j] * w[k][k] - w[i][k] * w[k][j], prev_pivot);
            }
            w[i][k] = 0;
        }
        prev_pivot = w[k][k];
    }
    Integer det = w[n - 1][n - 1];
    if (sign < 0) det = -det;
    return Rational(det) / row_scale;
}

}  // namespace nnspectra
