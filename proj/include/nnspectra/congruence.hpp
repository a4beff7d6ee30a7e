#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "nnspectra/errors.hpp"
#include "nnspectra/matrix.hpp"
#include "nnspectra/monomial.hpp"

namespace nnspectra {

enum class CongruenceStatus { congruent, not_congruent, unknown };

// On success, row_transform * A * col_transform^T = B exactly. For the
// equivalence decider the transforms bind the stripped cores. `unknown`
// means the search budget ran out before either answer was proven.
struct CongruenceResult {
    CongruenceStatus status = CongruenceStatus::not_congruent;
    std::optional<MonomialTransform> row_transform;
    std::optional<MonomialTransform> col_transform;
};

struct CongruenceOptions {
    std::uint64_t node_budget = 1'000'000;
};

namespace detail {

struct CongruenceBudgetExhausted {};

class CongruenceSearch {
public:
    CongruenceSearch(const NonnegativeMatrix& a, const NonnegativeMatrix& b, std::uint64_t budget)
        : a_(a), b_(b), m_(a.rows()), n_(a.cols()), budget_(budget) {}

    CongruenceResult run() {
        CongruenceResult result;
        if (!prepare()) return result;  // not_congruent
        try {
            if (assign_row(0)) {
                result.status = CongruenceStatus::congruent;
                result.row_transform = std::move(row_out_);
                result.col_transform = std::move(col_out_);
            }
        } catch (const CongruenceBudgetExhausted&) {
            result.status = CongruenceStatus::unknown;
        }
        return result;
    }

private:
    using Signature = std::pair<std::size_t, std::vector<std::size_t>>;

    bool prepare() {
        auto degrees = [](const NonnegativeMatrix& x, bool by_row) {
            std::size_t outer = by_row ? x.rows() : x.cols();
            std::size_t inner = by_row ? x.cols() : x.rows();
            std::vector<std::size_t> deg(outer, 0);
            for (std::size_t i = 0; i < outer; ++i)
                for (std::size_t j = 0; j < inner; ++j)
                    deg[i] += (by_row ? x(i, j) : x(j, i)).is_positive() ? 1 : 0;
            return deg;
        };
        auto row_deg_a = degrees(a_, true), col_deg_a = degrees(a_, false);
        auto row_deg_b = degrees(b_, true), col_deg_b = degrees(b_, false);

        auto row_signature = [&](const NonnegativeMatrix& x, const std::vector<std::size_t>& col_deg,
                                 std::size_t i) {
            Signature s;
            s.first = 0;
            for (std::size_t j = 0; j < x.cols(); ++j) {
                if (x(i, j).is_positive()) {
                    ++s.first;
                    s.second.push_back(col_deg[j]);
                }
            }
            std::sort(s.second.begin(), s.second.end());
            return s;
        };
        auto col_signature = [&](const NonnegativeMatrix& x, const std::vector<std::size_t>& row_deg,
                                 std::size_t j) {
            Signature s;
            s.first = 0;
            for (std::size_t i = 0; i < x.rows(); ++i) {
                if (x(i, j).is_positive()) {
                    ++s.first;
                    s.second.push_back(row_deg[i]);
                }
            }
            std::sort(s.second.begin(), s.second.end());
            return s;
        };

        row_domain_.assign(m_, {});
        for (std::size_t i = 0; i < m_; ++i) {
            Signature sa = row_signature(a_, col_deg_a, i);
            for (std::size_t u = 0; u < m_; ++u) {
                if (sa == row_signature(b_, col_deg_b, u)) row_domain_[i].push_back(u);
            }
            if (row_domain_[i].empty()) return false;
        }
        col_mask_.assign(n_, std::vector<char>(n_, 0));
        for (std::size_t j = 0; j < n_; ++j) {
            Signature sa = col_signature(a_, row_deg_a, j);
            bool any = false;
            for (std::size_t v = 0; v < n_; ++v) {
                if (sa == col_signature(b_, row_deg_b, v)) {
                    col_mask_[j][v] = 1;
                    any = true;
                }
            }
            if (!any) return false;
        }

        row_order_.resize(m_);
        for (std::size_t k = 0; k < m_; ++k) row_order_[k] = k;
        std::sort(row_order_.begin(), row_order_.end(), [&](std::size_t x, std::size_t y) {
            if (row_domain_[x].size() != row_domain_[y].size())
                return row_domain_[x].size() < row_domain_[y].size();
            return x < y;
        });
        sigma_.assign(m_, m_);
        pi_.assign(n_, n_);
        row_used_.assign(m_, 0);
        return true;
    }

    void tick() {
        if (++nodes_ > budget_) throw CongruenceBudgetExhausted{};
    }

    bool assign_row(std::size_t k) {
        tick();
        if (k == m_) return assign_cols();
        const std::size_t i = row_order_[k];
        for (std::size_t u : row_domain_[i]) {
            if (row_used_[u]) continue;
            std::vector<std::pair<std::size_t, std::size_t>> removed;
            bool viable = true;
            for (std::size_t j = 0; j < n_ && viable; ++j) {
                bool nonempty = false;
                const bool in_a = a_(i, j).is_positive();
                for (std::size_t v = 0; v < n_; ++v) {
                    if (!col_mask_[j][v]) continue;
                    if (in_a != b_(u, v).is_positive()) {
                        col_mask_[j][v] = 0;
                        removed.emplace_back(j, v);
                    } else {
                        nonempty = true;
                    }
                }
                viable = nonempty;
            }
            if (viable) {
                sigma_[i] = u;
                row_used_[u] = 1;
                if (assign_row(k + 1)) return true;
                sigma_[i] = m_;
                row_used_[u] = 0;
            }
            for (const auto& [j, v] : removed) col_mask_[j][v] = 1;
        }
        return false;
    }

    bool assign_cols() {
        std::vector<std::size_t> order(n_);
        for (std::size_t k = 0; k < n_; ++k) order[k] = k;
        std::vector<std::size_t> domain_size(n_, 0);
        for (std::size_t j = 0; j < n_; ++j)
            for (std::size_t v = 0; v < n_; ++v) domain_size[j] += col_mask_[j][v];
        std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
            if (domain_size[x] != domain_size[y]) return domain_size[x] < domain_size[y];
            return x < y;
        });
        std::vector<char> col_used(n_, 0);
        return assign_col(order, col_used, 0);
    }

    bool assign_col(const std::vector<std::size_t>& order, std::vector<char>& col_used, std::size_t k) {
        tick();
        if (k == n_) return try_scaling();
        const std::size_t j = order[k];
        for (std::size_t v = 0; v < n_; ++v) {
            if (!col_mask_[j][v] || col_used[v]) continue;
            pi_[j] = v;
            col_used[v] = 1;
            if (assign_col(order, col_used, k + 1)) return true;
            pi_[j] = n_;
            col_used[v] = 0;
        }
        return false;
    }

    // Positive scales r_i, c_j with r_i * c_j = B[sigma(i)][pi(j)] / A[i][j]
    // on supp(A), propagated over a spanning forest of the support graph
    // and verified on every remaining support cell.
    bool try_scaling() {
        std::vector<Rational> r(m_, Rational(0)), c(n_, Rational(0));
        std::vector<char> r_set(m_, 0), c_set(n_, 0);
        auto quotient = [&](std::size_t i, std::size_t j) {
            return b_(sigma_[i], pi_[j]) / a_(i, j);
        };
        for (std::size_t start = 0; start < m_; ++start) {
            if (r_set[start]) continue;
            bool has_cell = false;
            for (std::size_t j = 0; j < n_ && !has_cell; ++j) has_cell = a_(start, j).is_positive();
            if (!has_cell) continue;
            r[start] = Rational(1);
            r_set[start] = 1;
            std::vector<std::pair<bool, std::size_t>> queue{{true, start}};
            while (!queue.empty()) {
                auto [is_row, idx] = queue.back();
                queue.pop_back();
                if (is_row) {
                    for (std::size_t j = 0; j < n_; ++j) {
                        if (!a_(idx, j).is_positive() || c_set[j]) continue;
                        c[j] = quotient(idx, j) / r[idx];
                        c_set[j] = 1;
                        queue.emplace_back(false, j);
                    }
                } else {
                    for (std::size_t i = 0; i < m_; ++i) {
                        if (!a_(i, idx).is_positive() || r_set[i]) continue;
                        r[i] = quotient(i, idx) / c[idx];
                        r_set[i] = 1;
                        queue.emplace_back(true, i);
                    }
                }
            }
        }
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) {
                if (!a_(i, j).is_positive()) continue;
                if (r[i] * c[j] != quotient(i, j)) return false;
            }
        }
        for (std::size_t i = 0; i < m_; ++i)
            if (!r_set[i]) r[i] = Rational(1);
        for (std::size_t j = 0; j < n_; ++j)
            if (!c_set[j]) c[j] = Rational(1);

        MonomialTransform row{sigma_, r};
        MonomialTransform col{pi_, c};
        row.validate();
        col.validate();
        if (multiply(multiply(row.to_matrix(), a_), col.to_matrix().transpose()) != b_) {
            return false;
        }
        row_out_ = std::move(row);
        col_out_ = std::move(col);
        return true;
    }

    const NonnegativeMatrix& a_;
    const NonnegativeMatrix& b_;
    std::size_t m_, n_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;

    std::vector<std::vector<std::size_t>> row_domain_;
    std::vector<std::vector<char>> col_mask_;
    std::vector<std::size_t> row_order_;
    std::vector<std::size_t> sigma_, pi_;
    std::vector<char> row_used_;
    MonomialTransform row_out_, col_out_;
};

}  // namespace detail

/*
 * Decides A ~= B (equality up to GL+ row/column transforms, i.e. up to
 * row/column permutations and positive rescalings). Backtracks over
 * support-preserving row and column bijections with degree-profile
 * pruning, then settles the scale factors over a spanning forest of the
 * support graph. Budget exhaustion reports `unknown`, distinct from a
 * proven `not_congruent`.
 */
inline CongruenceResult is_congruent(const NonnegativeMatrix& a, const NonnegativeMatrix& b,
                                     const CongruenceOptions& options = {}) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return {};
    if (support(a).count() != support(b).count()) return {};
    return detail::CongruenceSearch(a, b, options.node_budget).run();
}

/*
 * Decides A ~ B: both matrices are stripped of all-zero rows/columns
 * and the cores are compared with is_congruent (monomial transforms map
 * zero lines to zero lines, so padding by zero blocks adds exactly the
 * stripped lines back). All zero matrices are equivalent. Transforms in
 * the result bind the two cores.
 */
inline CongruenceResult is_equivalent(const NonnegativeMatrix& a, const NonnegativeMatrix& b,
                                      const CongruenceOptions& options = {}) {
    StripResult sa = strip_zero_lines(a);
    StripResult sb = strip_zero_lines(b);
    if (sa.core.empty() && sb.core.empty()) {
        CongruenceResult result;
        result.status = CongruenceStatus::congruent;
        result.row_transform = MonomialTransform::identity(0);
        result.col_transform = MonomialTransform::identity(0);
        return result;
    }
    return is_congruent(sa.core, sb.core, options);
}

}  // namespace nnspectra
