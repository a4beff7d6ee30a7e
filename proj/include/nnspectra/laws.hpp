#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "nnspectra/cover.hpp"
#include "nnspectra/matrix.hpp"
#include "nnspectra/matrix_io.hpp"
#include "nnspectra/monomial.hpp"
#include "nnspectra/nnrank.hpp"
#include "nnspectra/rank.hpp"
#include "nnspectra/witness.hpp"

namespace nnspectra {

// Deterministic generator for the property harnesses and tests.
class MatrixSampler {
public:
    explicit MatrixSampler(std::uint64_t seed) : rng_(seed) {}

    std::size_t dimension(std::size_t max_dim) {
        return std::uniform_int_distribution<std::size_t>(1, max_dim)(rng_);
    }

    Rational positive_rational(int max_num = 9, int max_den = 4) {
        std::uniform_int_distribution<int> num(1, max_num), den(1, max_den);
        return Rational(Integer(num(rng_)), Integer(den(rng_)));
    }

    // Density in percent; entries are small positive rationals.
    NonnegativeMatrix matrix(std::size_t rows, std::size_t cols, int density_percent = 50) {
        std::uniform_int_distribution<int> coin(1, 100);
        std::vector<Rational> entries(rows * cols);
        for (auto& e : entries) {
            if (coin(rng_) <= density_percent) e = positive_rational();
        }
        return NonnegativeMatrix(rows, cols, std::move(entries));
    }

    NonnegativeMatrix matrix_up_to(std::size_t max_dim, int density_percent = 50) {
        return matrix(dimension(max_dim), dimension(max_dim), density_percent);
    }

    // Nonzero variant for laws that need a positive support.
    NonnegativeMatrix nonzero_matrix_up_to(std::size_t max_dim, int density_percent = 50) {
        while (true) {
            NonnegativeMatrix m = matrix_up_to(max_dim, density_percent);
            if (!m.is_zero()) return m;
        }
    }

    MonomialTransform monomial(std::size_t n) {
        MonomialTransform t;
        t.permutation.resize(n);
        std::iota(t.permutation.begin(), t.permutation.end(), 0);
        std::shuffle(t.permutation.begin(), t.permutation.end(), rng_);
        t.scales.reserve(n);
        for (std::size_t i = 0; i < n; ++i) t.scales.push_back(positive_rational());
        return t;
    }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
};

struct LawReport {
    unsigned trials = 0;
    unsigned checks = 0;
    unsigned skipped = 0;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

enum class SpectralPoint { rank, fractional_cover };

namespace detail {

inline Rational spectral_value(SpectralPoint point, const NonnegativeMatrix& a) {
    if (point == SpectralPoint::rank) return Rational(rank(a).rank);
    return fractional_cover(a).value;
}

inline void report_violation(LawReport& report, const std::string& law, const NonnegativeMatrix& a,
                             const NonnegativeMatrix& b) {
    report.violations.push_back(law + " violated; A=[" + matrix_to_csv(a) + "] B=[" + matrix_to_csv(b) + "]");
}

}  // namespace detail

/*
 * Samples random rational matrices and checks the four spectral-point
 * laws for the chosen parameter: multiplicativity under Kronecker
 * products, additivity under direct sums, normalization on identities,
 * and monotonicity under two-sided nonnegative multiplication.
 * Counterexamples are returned in the report, never thrown.
 */
inline LawReport spectral_point_check(SpectralPoint point, unsigned trials, std::uint64_t seed,
                                      std::size_t max_dim) {
    if (trials < 1) throw DomainError("trials must be positive");
    LawReport report;
    MatrixSampler sampler(seed);
    // Kronecker-law factors stay small: the product support is the
    // cells-product, and exact cover LPs on it grow quickly.
    const std::size_t kron_dim = point == SpectralPoint::fractional_cover ? std::min<std::size_t>(max_dim, 3) : max_dim;

    for (unsigned t = 0; t < trials; ++t) {
        ++report.trials;
        const int density = 30 + 20 * static_cast<int>(t % 3);

        NonnegativeMatrix a = sampler.matrix_up_to(max_dim, density);
        NonnegativeMatrix b = sampler.matrix_up_to(max_dim, density);
        if (detail::spectral_value(point, direct_sum(a, b)) !=
            detail::spectral_value(point, a) + detail::spectral_value(point, b)) {
            detail::report_violation(report, "additivity", a, b);
        }
        ++report.checks;

        NonnegativeMatrix ka = sampler.matrix_up_to(kron_dim, density);
        NonnegativeMatrix kb = sampler.matrix_up_to(kron_dim, density);
        if (detail::spectral_value(point, kronecker(ka, kb)) !=
            detail::spectral_value(point, ka) * detail::spectral_value(point, kb)) {
            detail::report_violation(report, "multiplicativity", ka, kb);
        }
        ++report.checks;

        const std::size_t n = sampler.dimension(std::max<std::size_t>(max_dim, 6));
        if (detail::spectral_value(point, NonnegativeMatrix::identity(n)) != Rational(n)) {
            report.violations.push_back("normalization violated at n=" + std::to_string(n));
        }
        ++report.checks;

        NonnegativeMatrix base = sampler.matrix_up_to(max_dim, density);
        NonnegativeMatrix x = sampler.matrix(sampler.dimension(max_dim), base.rows(), density);
        NonnegativeMatrix y = sampler.matrix(sampler.dimension(max_dim), base.cols(), density);
        NonnegativeMatrix restricted = multiply(multiply(x, base), y.transpose());
        if (detail::spectral_value(point, restricted) > detail::spectral_value(point, base)) {
            detail::report_violation(report, "monotonicity", base, restricted);
        }
        ++report.checks;
    }
    return report;
}

// (A + A)^(x2) agrees with four direct-sum copies of A^(x2) up to an
// explicit row/column permutation, verified entry by entry.
inline bool check_duality_identity(const NonnegativeMatrix& a) {
    if (a.is_zero()) return true;
    const std::size_t m = a.rows(), n = a.cols();
    NonnegativeMatrix b = direct_sum(a, a);
    NonnegativeMatrix left = kronecker(b, b);
    NonnegativeMatrix a2 = kronecker(a, a);
    NonnegativeMatrix right = direct_sum_all({a2, a2, a2, a2});

    auto map_index = [](std::size_t composite, std::size_t inner) {
        // composite = r1 * (2*inner) + r2 with r1, r2 in [0, 2*inner)
        std::size_t r1 = composite / (2 * inner);
        std::size_t r2 = composite % (2 * inner);
        std::size_t copy = 2 * (r1 / inner) + (r2 / inner);
        return copy * inner * inner + (r1 % inner) * inner + (r2 % inner);
    };
    for (std::size_t i = 0; i < left.rows(); ++i) {
        for (std::size_t j = 0; j < left.cols(); ++j) {
            if (left(i, j) != right(map_index(i, m), map_index(j, n))) return false;
        }
    }
    return true;
}

struct StrassenCheckOptions {
    std::size_t max_dim = 3;
    NnrankOptions nnrank = {};
};

/*
 * Exercises the preorder axioms with explicit witnesses: identity
 * embeddings I_n <= I_m for n <= m, closure of witnesses under direct
 * sums and Kronecker products on generatively sampled restrictions, and
 * A <= I_r (x) B through a certified factorization of A (skipped, and
 * counted, when no certified factorization is available). Each trial
 * also confirms the doubling identity behind the duality argument.
 */
inline LawReport strassen_axiom_check(unsigned trials, std::uint64_t seed, std::size_t max_dim,
                                      const StrassenCheckOptions& options = {}) {
    if (trials < 1) throw DomainError("trials must be positive");
    LawReport report;
    MatrixSampler sampler(seed);

    for (unsigned t = 0; t < trials; ++t) {
        ++report.trials;
        const int density = 40 + 15 * static_cast<int>(t % 3);

        // (i) identity embeddings
        std::size_t big = sampler.dimension(std::max<std::size_t>(max_dim, 2));
        std::size_t small = std::uniform_int_distribution<std::size_t>(1, big)(sampler.rng());
        std::vector<Rational> embed_cells(small * big);
        for (std::size_t i = 0; i < small; ++i) embed_cells[i * big + i] = Rational(1);
        NonnegativeMatrix embed(small, big, std::move(embed_cells));
        try {
            Restriction idn{NonnegativeMatrix::identity(small), NonnegativeMatrix::identity(big),
                            {embed, embed}};
            idn.verify();
        } catch (const DomainError&) {
            report.violations.push_back("identity embedding witness failed at n=" +
                                        std::to_string(small) + " m=" + std::to_string(big));
        }
        ++report.checks;

        // (ii) witness composition closure under (+) and (x)
        auto sampled_restriction = [&]() {
            NonnegativeMatrix bigm = sampler.nonzero_matrix_up_to(max_dim, density);
            NonnegativeMatrix x = sampler.matrix(sampler.dimension(max_dim), bigm.rows(), 60);
            NonnegativeMatrix y = sampler.matrix(sampler.dimension(max_dim), bigm.cols(), 60);
            NonnegativeMatrix smallm = multiply(multiply(x, bigm), y.transpose());
            return Restriction{smallm, bigm, {x, y}};
        };
        try {
            Restriction r1 = sampled_restriction();
            Restriction r2 = sampled_restriction();
            compose_witness_sum(r1, r2);
            compose_witness_product(r1, r2);
        } catch (const DomainError& e) {
            report.violations.push_back(std::string("witness composition failed: ") + e.what());
        }
        ++report.checks;

        // (iii) A <= I_r (x) B with r from a certified factorization
        NonnegativeMatrix a = sampler.nonzero_matrix_up_to(max_dim, density);
        NonnegativeMatrix b = sampler.nonzero_matrix_up_to(2, 70);
        NnrankBounds bounds = nnrank_bounds(a, options.nnrank);
        if (bounds.upper_certified && bounds.certified_factors) {
            const std::size_t r = bounds.upper;
            const auto& f = *bounds.certified_factors;
            try {
                Restriction to_identity{a, NonnegativeMatrix::identity(r), {f.w, f.h.transpose()}};
                to_identity.verify();

                // I_r = U (I_r (x) B) V^T picking one positive entry of B.
                auto cells = support(b).cells();
                const auto [bi, bj] = cells.front();
                std::vector<Rational> u(r * r * b.rows()), v(r * r * b.cols());
                for (std::size_t k = 0; k < r; ++k) {
                    u[k * (r * b.rows()) + k * b.rows() + bi] = b(bi, bj).reciprocal();
                    v[k * (r * b.cols()) + k * b.cols() + bj] = Rational(1);
                }
                Restriction pick{NonnegativeMatrix::identity(r),
                                 kronecker(NonnegativeMatrix::identity(r), b),
                                 {NonnegativeMatrix(r, r * b.rows(), std::move(u)),
                                  NonnegativeMatrix(r, r * b.cols(), std::move(v))}};
                pick.verify();
                chain_witness(to_identity, pick);
            } catch (const DomainError& e) {
                report.violations.push_back(std::string("restriction to I_r (x) B failed: ") + e.what());
            }
            ++report.checks;
        } else {
            ++report.skipped;
        }

        // duality-proof doubling identity on a small sample
        NonnegativeMatrix small_a = sampler.matrix(2, 2, 60);
        if (!check_duality_identity(small_a)) {
            detail::report_violation(report, "doubling identity", small_a, small_a);
        }
        ++report.checks;
    }
    return report;
}

}  // namespace nnspectra
