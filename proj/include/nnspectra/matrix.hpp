#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "nnspectra/errors.hpp"
#include "nnspectra/rational.hpp"

namespace nnspectra {

inline constexpr std::uint64_t kDefaultCellBudget = 5'000'000;

/*
 * Dense matrix of exact nonnegative rationals. Dimensions are fixed at
 * construction and entries are validated to be >= 0; all operations on
 * it are pure and exact. The 0x0 matrix is admitted and stands for the
 * class of all zero matrices.
 */
class NonnegativeMatrix {
public:
    NonnegativeMatrix() : rows_(0), cols_(0) {}

    NonnegativeMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_) {
            throw DomainError("entry count does not match dimensions");
        }
        for (const Rational& e : entries_) {
            if (e.is_negative()) throw DomainError("negative entry in nonnegative matrix");
        }
    }

    NonnegativeMatrix(std::initializer_list<std::initializer_list<Rational>> grid)
        : NonnegativeMatrix(from_rows(std::vector<std::vector<Rational>>(grid.begin(), grid.end()))) {}

    static NonnegativeMatrix from_rows(const std::vector<std::vector<Rational>>& grid) {
        std::size_t m = grid.size();
        std::size_t n = m == 0 ? 0 : grid.front().size();
        std::vector<Rational> flat;
        flat.reserve(m * n);
        for (const auto& row : grid) {
            if (row.size() != n) throw DomainError("ragged rows in matrix literal");
            flat.insert(flat.end(), row.begin(), row.end());
        }
        return NonnegativeMatrix(m, n, std::move(flat));
    }

    static NonnegativeMatrix zeros(std::size_t rows, std::size_t cols) {
        return NonnegativeMatrix(rows, cols, std::vector<Rational>(rows * cols));
    }

    static NonnegativeMatrix identity(std::size_t n) {
        NonnegativeMatrix eye = zeros(n, n);
        for (std::size_t i = 0; i < n; ++i) eye.entries_[i * n + i] = Rational(1);
        return eye;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t cell_count() const { return rows_ * cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    const Rational& at(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw DomainError("matrix index out of range");
        return entries_[i * cols_ + j];
    }
    const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    bool is_zero() const {
        return std::all_of(entries_.begin(), entries_.end(),
                           [](const Rational& e) { return e.is_zero(); });
    }

    friend bool operator==(const NonnegativeMatrix& a, const NonnegativeMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }
    friend bool operator!=(const NonnegativeMatrix& a, const NonnegativeMatrix& b) { return !(a == b); }

    NonnegativeMatrix transpose() const {
        NonnegativeMatrix t = zeros(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.entries_[j * rows_ + i] = (*this)(i, j);
        return t;
    }

    NonnegativeMatrix submatrix(const std::vector<std::size_t>& row_idx,
                                const std::vector<std::size_t>& col_idx) const {
        NonnegativeMatrix s = zeros(row_idx.size(), col_idx.size());
        for (std::size_t i = 0; i < row_idx.size(); ++i) {
            for (std::size_t j = 0; j < col_idx.size(); ++j) {
                s.entries_[i * col_idx.size() + j] = at(row_idx[i], col_idx[j]);
            }
        }
        return s;
    }

private:
    friend NonnegativeMatrix multiply(const NonnegativeMatrix&, const NonnegativeMatrix&);
    friend NonnegativeMatrix direct_sum(const NonnegativeMatrix&, const NonnegativeMatrix&);
    friend NonnegativeMatrix kronecker(const NonnegativeMatrix&, const NonnegativeMatrix&);
    friend NonnegativeMatrix scale(const NonnegativeMatrix&, const Rational&);

    std::size_t rows_;
    std::size_t cols_;
    std::vector<Rational> entries_;
};

inline NonnegativeMatrix multiply(const NonnegativeMatrix& a, const NonnegativeMatrix& b) {
    if (a.cols() != b.rows()) throw DomainError("inner dimensions do not match");
    NonnegativeMatrix c = NonnegativeMatrix::zeros(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Rational& aik = a(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c.entries_[i * c.cols_ + j] += aik * b(k, j);
            }
        }
    }
    return c;
}

inline NonnegativeMatrix scale(const NonnegativeMatrix& a, const Rational& s) {
    if (s.is_negative()) throw DomainError("negative scale factor");
    NonnegativeMatrix c = a;
    for (Rational& e : c.entries_) e *= s;
    return c;
}

// Block-diagonal sum: A top-left, B bottom-right, zeros elsewhere.
inline NonnegativeMatrix direct_sum(const NonnegativeMatrix& a, const NonnegativeMatrix& b) {
    NonnegativeMatrix c = NonnegativeMatrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c.entries_[i * c.cols_ + j] = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            c.entries_[(a.rows() + i) * c.cols_ + (a.cols() + j)] = b(i, j);
    return c;
}

inline NonnegativeMatrix direct_sum_all(const std::vector<NonnegativeMatrix>& blocks) {
    NonnegativeMatrix acc;
    for (const auto& b : blocks) acc = direct_sum(acc, b);
    return acc;
}

// Block (i,j) of the result equals A(i,j) * B.
inline NonnegativeMatrix kronecker(const NonnegativeMatrix& a, const NonnegativeMatrix& b) {
    NonnegativeMatrix c = NonnegativeMatrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Rational& aij = a(i, j);
            if (aij.is_zero()) continue;
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    if (b(k, l).is_zero()) continue;
                    c.entries_[(i * b.rows() + k) * c.cols_ + (j * b.cols() + l)] = aij * b(k, l);
                }
            }
        }
    }
    return c;
}

// n-fold Kronecker power. Refuses to materialize more than cell_budget
// entries; the check runs on big integers before any allocation.
inline NonnegativeMatrix kron_power(const NonnegativeMatrix& a, std::size_t n,
                                    std::uint64_t cell_budget = kDefaultCellBudget) {
    if (n < 1) throw DomainError("kron_power requires n >= 1");
    Integer cells = integer_pow(Integer(a.rows()), n) * integer_pow(Integer(a.cols()), n);
    if (cells > Integer(cell_budget)) {
        throw BudgetError("kron_power result exceeds cell budget (" + cells.str() + " cells)");
    }
    NonnegativeMatrix acc = a;
    for (std::size_t k = 1; k < n; ++k) acc = kronecker(acc, a);
    return acc;
}

/*
 * supp(A): the set of positions with strictly positive entries. Doubles
 * as the bipartite graph / binary matrix reading used by the
 * combinatorial parameters.
 */
class SupportPattern {
public:
    SupportPattern() : rows_(0), cols_(0) {}

    SupportPattern(std::size_t rows, std::size_t cols, std::vector<std::pair<std::size_t, std::size_t>> cells)
        : rows_(rows), cols_(cols), grid_(rows * cols, 0) {
        for (const auto& [i, j] : cells) {
            if (i >= rows_ || j >= cols_) throw DomainError("support cell out of range");
            grid_[i * cols_ + j] = 1;
        }
    }

    explicit SupportPattern(const NonnegativeMatrix& a)
        : rows_(a.rows()), cols_(a.cols()), grid_(a.rows() * a.cols(), 0) {
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (a(i, j).is_positive()) grid_[i * cols_ + j] = 1;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool contains(std::size_t i, std::size_t j) const {
        return i < rows_ && j < cols_ && grid_[i * cols_ + j] != 0;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (char bit : grid_) c += static_cast<std::size_t>(bit);
        return c;
    }

    // Row-major sorted list of support cells.
    std::vector<std::pair<std::size_t, std::size_t>> cells() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        out.reserve(count());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (grid_[i * cols_ + j]) out.emplace_back(i, j);
        return out;
    }

    // The binary-matrix reading of the support.
    NonnegativeMatrix to_matrix() const {
        std::vector<Rational> entries(rows_ * cols_);
        for (std::size_t k = 0; k < entries.size(); ++k)
            if (grid_[k]) entries[k] = Rational(1);
        return NonnegativeMatrix(rows_, cols_, std::move(entries));
    }

    friend bool operator==(const SupportPattern& a, const SupportPattern& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.grid_ == b.grid_;
    }
    friend bool operator!=(const SupportPattern& a, const SupportPattern& b) { return !(a == b); }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<char> grid_;
};

inline SupportPattern support(const NonnegativeMatrix& a) { return SupportPattern(a); }

struct StripResult {
    NonnegativeMatrix core;
    std::vector<std::size_t> kept_rows;
    std::vector<std::size_t> kept_cols;
};

// Restriction of A to rows and columns holding at least one positive
// entry. A zero matrix strips to the 0x0 sentinel.
inline StripResult strip_zero_lines(const NonnegativeMatrix& a) {
    StripResult r;
    std::vector<char> row_live(a.rows(), 0), col_live(a.cols(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j).is_positive()) row_live[i] = col_live[j] = 1;
        }
    }
    for (std::size_t i = 0; i < a.rows(); ++i)
        if (row_live[i]) r.kept_rows.push_back(i);
    for (std::size_t j = 0; j < a.cols(); ++j)
        if (col_live[j]) r.kept_cols.push_back(j);
    r.core = a.submatrix(r.kept_rows, r.kept_cols);
    return r;
}

}  // namespace nnspectra
