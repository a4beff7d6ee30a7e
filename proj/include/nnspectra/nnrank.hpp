#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "nnspectra/cover.hpp"
#include "nnspectra/errors.hpp"
#include "nnspectra/matrix.hpp"
#include "nnspectra/rank.hpp"

namespace nnspectra {

struct FloatFactorization {
    std::vector<std::vector<double>> w;  // m x r
    std::vector<std::vector<double>> h;  // r x n
    double residual = 0.0;               // max entry error relative to max(A)
};

struct ExactFactorization {
    NonnegativeMatrix w;  // m x r
    NonnegativeMatrix h;  // r x n
};

/*
 * Certified interval for the nonnegative rank. `lower` comes from rank
 * and the 1-fold cover number, summed over the connected components of
 * the support (the nonnegative rank is additive over components).
 * `upper` is certified only when an exact rational factorization of that
 * inner dimension has been verified entrywise.
 */
struct NnrankBounds {
    std::size_t lower = 0;
    std::size_t upper = 0;
    bool upper_certified = true;
    std::vector<std::string> lower_sources;  // subset of {"rank", "integer_cover"}
    std::optional<FloatFactorization> factorization;
    std::optional<ExactFactorization> certified_factors;
};

struct NnrankOptions {
    double tol = 1e-9;
    std::vector<std::uint64_t> seeds = {1, 2, 3};
    std::size_t nmf_iterations = 200;
    Integer max_denominator = Integer(1'000'000);
    std::uint64_t rectangle_budget = kDefaultRectangleBudget;
    TfoldOptions cover_options = {};
    bool try_kronecker_split = true;
    unsigned split_depth = 2;
};

namespace detail {

struct BipartiteComponent {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
};

// Connected components of the bipartite support graph, ordered by their
// smallest row; rows and columns without support cells belong to none.
inline std::vector<BipartiteComponent> support_components(const NonnegativeMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<int> row_comp(m, -1), col_comp(n, -1);
    std::vector<BipartiteComponent> comps;
    for (std::size_t start = 0; start < m; ++start) {
        if (row_comp[start] != -1) continue;
        bool has_cell = false;
        for (std::size_t j = 0; j < n && !has_cell; ++j) has_cell = a(start, j).is_positive();
        if (!has_cell) continue;

        const int id = static_cast<int>(comps.size());
        comps.emplace_back();
        std::vector<std::size_t> row_stack{start};
        row_comp[start] = id;
        while (!row_stack.empty()) {
            std::size_t i = row_stack.back();
            row_stack.pop_back();
            comps[id].rows.push_back(i);
            for (std::size_t j = 0; j < n; ++j) {
                if (!a(i, j).is_positive() || col_comp[j] != -1) continue;
                col_comp[j] = id;
                comps[id].cols.push_back(j);
                for (std::size_t i2 = 0; i2 < m; ++i2) {
                    if (a(i2, j).is_positive() && row_comp[i2] == -1) {
                        row_comp[i2] = id;
                        row_stack.push_back(i2);
                    }
                }
            }
        }
        std::sort(comps[id].rows.begin(), comps[id].rows.end());
        std::sort(comps[id].cols.begin(), comps[id].cols.end());
    }
    return comps;
}

struct UpperCandidate {
    std::size_t value = 0;
    std::optional<ExactFactorization> exact;
    std::optional<FloatFactorization> floating;
};

// A = (selector of kept rows) * core * (selector of kept cols)^T folds
// into a verified factorization of inner dimension min(#rows, #cols).
inline UpperCandidate trivial_candidate(const NonnegativeMatrix& c) {
    UpperCandidate cand;
    if (c.rows() <= c.cols()) {
        cand.value = c.rows();
        cand.exact = ExactFactorization{NonnegativeMatrix::identity(c.rows()), c};
    } else {
        cand.value = c.cols();
        cand.exact = ExactFactorization{c, NonnegativeMatrix::identity(c.cols())};
    }
    return cand;
}

// When the minimum 1-fold cover partitions the support and every block
// is rank one, the blocks assemble into an exact factorization whose
// inner dimension meets the integer-cover lower bound.
inline std::optional<UpperCandidate> partition_candidate(const NonnegativeMatrix& c,
                                                         const CoverSolution& one_fold) {
    std::vector<const Rectangle*> chosen;
    for (std::size_t r = 0; r < one_fold.rectangles.size(); ++r) {
        if (one_fold.primal_weights[r].is_zero()) continue;
        if (one_fold.primal_weights[r] != Rational(1)) return std::nullopt;
        chosen.push_back(&one_fold.rectangles[r]);
    }
    for (const auto& [i, j] : one_fold.cells) {
        std::size_t covered = 0;
        for (const Rectangle* rect : chosen) covered += rect->contains(i, j) ? 1 : 0;
        if (covered != 1) return std::nullopt;
    }

    const std::size_t r = chosen.size();
    std::vector<Rational> w(c.rows() * r), h(r * c.cols());
    for (std::size_t k = 0; k < r; ++k) {
        const Rectangle& rect = *chosen[k];
        const std::size_t i0 = rect.row_set.front();
        const std::size_t j0 = rect.col_set.front();
        for (std::size_t i : rect.row_set) {
            for (std::size_t j : rect.col_set) {
                if (c(i, j) * c(i0, j0) != c(i, j0) * c(i0, j)) return std::nullopt;
            }
        }
        for (std::size_t i : rect.row_set) w[i * r + k] = c(i, j0);
        for (std::size_t j : rect.col_set) h[k * c.cols() + j] = c(i0, j) / c(i0, j0);
    }
    UpperCandidate cand;
    cand.value = r;
    cand.exact = ExactFactorization{NonnegativeMatrix(c.rows(), r, std::move(w)),
                                    NonnegativeMatrix(r, c.cols(), std::move(h))};
    if (multiply(cand.exact->w, cand.exact->h) != c) return std::nullopt;
    return cand;
}

// Best rational approximation with bounded denominator (Stern-Brocot
// walk); used to lift float factors back to exact entries.
inline std::optional<Rational> rational_from_double(double x, const Integer& max_den) {
    if (std::isnan(x) || std::isinf(x)) return std::nullopt;
    if (x < 0) {
        if (x > -1e-12) return Rational(0);
        return std::nullopt;
    }
    Integer lo_n = 0, lo_d = 1, hi_n = 1, hi_d = 0;
    double value = x;
    Integer whole;
    for (int iter = 0; iter < 64; ++iter) {
        double floor_part = std::floor(value);
        if (floor_part > 1e18) return std::nullopt;
        whole = Integer(static_cast<long long>(floor_part));
        Integer next_n = whole * hi_n + lo_n;
        Integer next_d = whole * hi_d + lo_d;
        if (next_d > max_den) break;
        lo_n = hi_n;
        lo_d = hi_d;
        hi_n = next_n;
        hi_d = next_d;
        double frac = value - floor_part;
        if (frac < 1e-15) break;
        value = 1.0 / frac;
    }
    if (hi_d == 0) return std::nullopt;
    return Rational(hi_n, hi_d);
}

inline std::vector<std::vector<double>> to_double_grid(const NonnegativeMatrix& a) {
    std::vector<std::vector<double>> d(a.rows(), std::vector<double>(a.cols()));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) d[i][j] = a(i, j).to_double();
    return d;
}

inline double nmf_residual(const std::vector<std::vector<double>>& d,
                           const std::vector<std::vector<double>>& w,
                           const std::vector<std::vector<double>>& h, double dmax) {
    double worst = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = 0; j < d[0].size(); ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < w[0].size(); ++k) acc += w[i][k] * h[k][j];
            worst = std::max(worst, std::abs(acc - d[i][j]));
        }
    }
    return worst / dmax;
}

// Multiplicative-update factorization attempt at fixed inner dimension.
inline std::optional<FloatFactorization> nmf_attempt(const NonnegativeMatrix& c, std::size_t r,
                                                     const NnrankOptions& options) {
    const std::size_t m = c.rows(), n = c.cols();
    const auto d = to_double_grid(c);
    double dmax = 0.0;
    for (const auto& row : d)
        for (double v : row) dmax = std::max(dmax, v);
    if (dmax == 0.0) return std::nullopt;

    std::optional<FloatFactorization> best;
    for (std::uint64_t seed : options.seeds) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unit(0.05, 1.0);
        double scale = std::sqrt(dmax / static_cast<double>(r));
        std::vector<std::vector<double>> w(m, std::vector<double>(r));
        std::vector<std::vector<double>> h(r, std::vector<double>(n));
        for (auto& row : w)
            for (double& v : row) v = unit(rng) * scale;
        for (auto& row : h)
            for (double& v : row) v = unit(rng) * scale;

        constexpr double eps = 1e-300;
        for (std::size_t iter = 0; iter < options.nmf_iterations; ++iter) {
            // H <- H .* (W^T D) ./ (W^T W H)
            for (std::size_t k = 0; k < r; ++k) {
                for (std::size_t j = 0; j < n; ++j) {
                    double num = 0.0, den = 0.0;
                    for (std::size_t i = 0; i < m; ++i) {
                        num += w[i][k] * d[i][j];
                        double wh = 0.0;
                        for (std::size_t k2 = 0; k2 < r; ++k2) wh += w[i][k2] * h[k2][j];
                        den += w[i][k] * wh;
                    }
                    h[k][j] *= num / (den + eps);
                }
            }
            // W <- W .* (D H^T) ./ (W H H^T)
            for (std::size_t i = 0; i < m; ++i) {
                for (std::size_t k = 0; k < r; ++k) {
                    double num = 0.0, den = 0.0;
                    for (std::size_t j = 0; j < n; ++j) {
                        num += d[i][j] * h[k][j];
                        double wh = 0.0;
                        for (std::size_t k2 = 0; k2 < r; ++k2) wh += w[i][k2] * h[k2][j];
                        den += wh * h[k][j];
                    }
                    w[i][k] *= num / (den + eps);
                }
            }
            if (iter % 16 == 15 && nmf_residual(d, w, h, dmax) <= options.tol) break;
        }
        double res = nmf_residual(d, w, h, dmax);
        if (!best || res < best->residual) best = FloatFactorization{w, h, res};
        if (res <= options.tol) break;
    }
    if (best && best->residual <= options.tol) return best;
    return std::nullopt;
}

inline std::optional<ExactFactorization> certify_float_factorization(
    const NonnegativeMatrix& c, const FloatFactorization& f, const Integer& max_den) {
    const std::size_t m = c.rows(), n = c.cols(), r = f.w[0].size();
    std::vector<Rational> w(m * r), h(r * n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t k = 0; k < r; ++k) {
            auto q = rational_from_double(f.w[i][k], max_den);
            if (!q) return std::nullopt;
            w[i * r + k] = *q;
        }
    }
    for (std::size_t k = 0; k < r; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            auto q = rational_from_double(f.h[k][j], max_den);
            if (!q) return std::nullopt;
            h[k * n + j] = *q;
        }
    }
    ExactFactorization exact{NonnegativeMatrix(m, r, std::move(w)), NonnegativeMatrix(r, n, std::move(h))};
    if (multiply(exact.w, exact.h) != c) return std::nullopt;
    return exact;
}

// Exact Kronecker split: c == a' (x) b' for some proper block shape.
// Scaling freedom is fixed by normalizing on the first nonzero block.
inline std::vector<std::pair<NonnegativeMatrix, NonnegativeMatrix>> kronecker_splits(
    const NonnegativeMatrix& c) {
    std::vector<std::pair<NonnegativeMatrix, NonnegativeMatrix>> out;
    const std::size_t m = c.rows(), n = c.cols();
    for (std::size_t m1 = 1; m1 <= m; ++m1) {
        if (m % m1 != 0) continue;
        const std::size_t m2 = m / m1;
        for (std::size_t n1 = 1; n1 <= n; ++n1) {
            if (n % n1 != 0) continue;
            const std::size_t n2 = n / n1;
            if (m1 * n1 <= 1 || m2 * n2 <= 1) continue;

            auto block = [&](std::size_t bi, std::size_t bj, std::size_t i, std::size_t j) {
                return c(bi * m2 + i, bj * n2 + j);
            };
            std::size_t pi = m1, pj = n1;
            for (std::size_t bi = 0; bi < m1 && pi == m1; ++bi) {
                for (std::size_t bj = 0; bj < n1; ++bj) {
                    bool nonzero = false;
                    for (std::size_t i = 0; i < m2 && !nonzero; ++i)
                        for (std::size_t j = 0; j < n2 && !nonzero; ++j)
                            nonzero = block(bi, bj, i, j).is_positive();
                    if (nonzero) { pi = bi; pj = bj; break; }
                }
            }
            if (pi == m1) continue;  // zero matrix, nothing to split

            std::vector<Rational> b_entries(m2 * n2);
            for (std::size_t i = 0; i < m2; ++i)
                for (std::size_t j = 0; j < n2; ++j) b_entries[i * n2 + j] = block(pi, pj, i, j);
            NonnegativeMatrix b(m2, n2, std::move(b_entries));
            std::size_t ri = m2, rj = n2;  // reference positive entry of b
            for (std::size_t i = 0; i < m2 && ri == m2; ++i)
                for (std::size_t j = 0; j < n2; ++j)
                    if (b(i, j).is_positive()) { ri = i; rj = j; break; }

            std::vector<Rational> a_entries(m1 * n1);
            bool ok = true;
            for (std::size_t bi = 0; bi < m1 && ok; ++bi) {
                for (std::size_t bj = 0; bj < n1 && ok; ++bj) {
                    Rational lambda = block(bi, bj, ri, rj) / b(ri, rj);
                    for (std::size_t i = 0; i < m2 && ok; ++i)
                        for (std::size_t j = 0; j < n2 && ok; ++j)
                            ok = block(bi, bj, i, j) == lambda * b(i, j);
                    a_entries[bi * n1 + bj] = lambda;
                }
            }
            if (ok) out.emplace_back(NonnegativeMatrix(m1, n1, std::move(a_entries)), std::move(b));
        }
    }
    return out;
}

// Split recursion may hand back a matrix that is itself disconnected,
// so the entry point re-dispatches through the component machinery.
NnrankBounds component_nnrank_entry(const NonnegativeMatrix& c, const NnrankOptions& options,
                                    unsigned depth);

}  // namespace detail

// Connected components of the bipartite support graph, each restricted
// to its own rows and columns. Zero matrices decompose into nothing.
inline std::vector<NonnegativeMatrix> nnrank_block_decompose(const NonnegativeMatrix& a) {
    std::vector<NonnegativeMatrix> blocks;
    for (const auto& comp : detail::support_components(a)) {
        blocks.push_back(a.submatrix(comp.rows, comp.cols));
    }
    return blocks;
}

namespace detail {

// Bounds for one connected, zero-line-free component.
inline NnrankBounds component_nnrank(const NonnegativeMatrix& c, const NnrankOptions& options,
                                     unsigned depth) {
    NnrankBounds out;
    const std::size_t rank_lb = rank(c).rank;
    CoverSolution one_fold = tfold_cover(c, 1, options.cover_options);
    const std::size_t cover_lb = static_cast<std::size_t>(one_fold.value.numerator());

    out.lower = std::max(rank_lb, cover_lb);
    if (rank_lb >= cover_lb) out.lower_sources.push_back("rank");
    if (cover_lb >= rank_lb) out.lower_sources.push_back("integer_cover");

    std::vector<UpperCandidate> candidates;
    candidates.push_back(trivial_candidate(c));
    if (auto part = partition_candidate(c, one_fold)) candidates.push_back(std::move(*part));

    if (options.try_kronecker_split && depth < options.split_depth) {
        for (auto& [left, right] : kronecker_splits(c)) {
            NnrankBounds lb = component_nnrank_entry(left, options, depth + 1);
            NnrankBounds rb = component_nnrank_entry(right, options, depth + 1);
            if (lb.upper_certified && rb.upper_certified && lb.certified_factors && rb.certified_factors) {
                UpperCandidate cand;
                cand.value = lb.upper * rb.upper;
                cand.exact = ExactFactorization{
                    kronecker(lb.certified_factors->w, rb.certified_factors->w),
                    kronecker(lb.certified_factors->h, rb.certified_factors->h)};
                candidates.push_back(std::move(cand));
            }
        }
    }

    std::size_t best_structural = candidates.front().value;
    for (const auto& cand : candidates) best_structural = std::min(best_structural, cand.value);

    // Numeric probe below the best structural bound, cheapest rank first.
    for (std::size_t r = out.lower; r < best_structural; ++r) {
        auto attempt = nmf_attempt(c, r, options);
        if (!attempt) continue;
        UpperCandidate cand;
        cand.value = r;
        if (auto exact = certify_float_factorization(c, *attempt, options.max_denominator)) {
            cand.exact = std::move(*exact);
        }
        cand.floating = std::move(*attempt);
        candidates.push_back(std::move(cand));
        break;
    }

    const UpperCandidate* chosen = &candidates.front();
    for (const auto& cand : candidates) {
        if (cand.value < chosen->value || (cand.value == chosen->value && cand.exact && !chosen->exact)) {
            chosen = &cand;
        }
    }
    out.upper = chosen->value;
    out.upper_certified = chosen->exact.has_value();
    if (chosen->exact) out.certified_factors = chosen->exact;
    if (chosen->floating) out.factorization = chosen->floating;
    return out;
}

}  // namespace detail

/*
 * Certified nonnegative-rank interval. The matrix is decomposed into
 * the connected components of its support graph; bounds add across
 * components and certified factorizations reassemble by embedding. The
 * heuristic upper-bound search per component tries, in order: the
 * trivial selector factorization, a rank-one partition induced by the
 * minimum 1-fold cover, exact Kronecker splits, and seeded
 * multiplicative-update factorizations that count only when their float
 * factors lift back to exact rationals reproducing the matrix.
 */
inline NnrankBounds nnrank_bounds(const NonnegativeMatrix& a, const NnrankOptions& options = {}) {
    if (options.tol <= 0) throw DomainError("tol must be positive");
    NnrankBounds out;
    auto comps = detail::support_components(a);
    if (comps.empty()) {
        out.certified_factors = ExactFactorization{NonnegativeMatrix::zeros(a.rows(), 0),
                                                   NonnegativeMatrix::zeros(0, a.cols())};
        return out;
    }

    std::vector<NnrankBounds> parts;
    parts.reserve(comps.size());
    for (const auto& comp : comps) {
        parts.push_back(detail::component_nnrank_entry(a.submatrix(comp.rows, comp.cols), options, 0));
    }

    bool all_certified = true;
    double worst_residual = 0.0;
    bool any_float = false;
    for (std::size_t k = 0; k < parts.size(); ++k) {
        out.lower += parts[k].lower;
        out.upper += parts[k].upper;
        all_certified = all_certified && parts[k].upper_certified;
        for (const auto& tag : parts[k].lower_sources) {
            if (std::find(out.lower_sources.begin(), out.lower_sources.end(), tag) == out.lower_sources.end()) {
                out.lower_sources.push_back(tag);
            }
        }
        if (parts[k].factorization) {
            any_float = true;
            worst_residual = std::max(worst_residual, parts[k].factorization->residual);
        }
    }
    out.upper_certified = all_certified;

    if (all_certified) {
        // Embed the per-component factors back into full coordinates.
        std::vector<Rational> w(a.rows() * out.upper), h(out.upper * a.cols());
        std::size_t offset = 0;
        for (std::size_t k = 0; k < parts.size(); ++k) {
            const auto& comp = comps[k];
            const auto& f = *parts[k].certified_factors;
            for (std::size_t i = 0; i < comp.rows.size(); ++i)
                for (std::size_t r = 0; r < parts[k].upper; ++r)
                    w[comp.rows[i] * out.upper + offset + r] = f.w(i, r);
            for (std::size_t r = 0; r < parts[k].upper; ++r)
                for (std::size_t j = 0; j < comp.cols.size(); ++j)
                    h[(offset + r) * a.cols() + comp.cols[j]] = f.h(r, j);
            offset += parts[k].upper;
        }
        ExactFactorization assembled{NonnegativeMatrix(a.rows(), out.upper, std::move(w)),
                                     NonnegativeMatrix(out.upper, a.cols(), std::move(h))};
        if (multiply(assembled.w, assembled.h) != a) {
            throw std::logic_error("assembled factorization failed verification");
        }
        out.certified_factors = std::move(assembled);
    } else if (any_float) {
        FloatFactorization f;
        f.residual = worst_residual;
        if (parts.size() == 1 && parts.front().factorization &&
            !parts.front().factorization->w.empty()) {
            // Embed the single component's float factors into full coordinates.
            const auto& comp = comps.front();
            const auto& cf = *parts.front().factorization;
            const std::size_t r = cf.w.front().size();
            f.w.assign(a.rows(), std::vector<double>(r, 0.0));
            f.h.assign(r, std::vector<double>(a.cols(), 0.0));
            for (std::size_t i = 0; i < comp.rows.size(); ++i) f.w[comp.rows[i]] = cf.w[i];
            for (std::size_t k = 0; k < r; ++k)
                for (std::size_t j = 0; j < comp.cols.size(); ++j) f.h[k][comp.cols[j]] = cf.h[k][j];
        }
        out.factorization = std::move(f);
    }
    return out;
}

namespace detail {

inline NnrankBounds component_nnrank_entry(const NonnegativeMatrix& c, const NnrankOptions& options,
                                           unsigned depth) {
    auto comps = support_components(c);
    if (comps.size() == 1 && comps.front().rows.size() == c.rows() &&
        comps.front().cols.size() == c.cols()) {
        return component_nnrank(c, options, depth);
    }
    NnrankOptions nested = options;
    nested.split_depth = depth >= options.split_depth ? 0 : options.split_depth - depth;
    return nnrank_bounds(c, nested);
}

}  // namespace detail

}  // namespace nnspectra
