#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "nnspectra/errors.hpp"
#include "nnspectra/matrix.hpp"

namespace nnspectra {

// A[i][j] = 0 for all i > j (rectangular lower triangular).
inline bool is_lower_triangular(const NonnegativeMatrix& a) {
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < std::min(i, a.cols()); ++j)
            if (!a(i, j).is_zero()) return false;
    return true;
}

// Positions on the square diagonal holding a positive entry.
inline std::vector<std::size_t> positive_diagonal(const NonnegativeMatrix& a) {
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i)
        if (a(i, i).is_positive()) v.push_back(i);
    return v;
}

inline Integer multinomial_equal_parts(std::size_t n, std::size_t parts) {
    Integer result = 1;
    Integer divisor = 1;
    const std::size_t each = n / parts;
    for (std::size_t k = 1; k <= n; ++k) result *= Integer(k);
    for (std::size_t p = 0; p < parts; ++p) {
        for (std::size_t k = 1; k <= each; ++k) divisor *= Integer(k);
    }
    return result / divisor;
}

/*
 * The diagonal selection S(N) of a lower triangular matrix: index digit
 * strings over the positive-diagonal alphabet V in which each symbol
 * appears exactly N/d times. The principal submatrix of the N-th
 * Kronecker power on these indices is diagonal with a positive
 * diagonal, so its size lower-bounds the subrank of the power.
 */
struct TriangularCertificate {
    std::vector<std::size_t> diagonal_support;      // V
    std::size_t d = 0;                              // |V|
    std::size_t power = 0;                          // N, a multiple of d
    std::vector<std::vector<std::size_t>> digits;   // members of S(N), lexicographic
    Integer count;                                  // multinomial(N; N/d, ..., N/d)
};

inline constexpr std::uint64_t kDefaultCertificateBudget = 20'000;

/*
 * Builds S(N) and verifies, through the entrywise product formula for
 * Kronecker-power coefficients (never materializing the power), that
 * the selected principal submatrix is diagonal with positive diagonal.
 */
inline TriangularCertificate triangular_certificate(const NonnegativeMatrix& a, std::size_t n_power,
                                                    std::uint64_t max_members = kDefaultCertificateBudget) {
    if (!is_lower_triangular(a)) throw DomainError("matrix is not lower triangular");
    TriangularCertificate cert;
    cert.diagonal_support = positive_diagonal(a);
    cert.d = cert.diagonal_support.size();
    if (cert.d == 0) throw DomainError("no positive diagonal entries");
    if (n_power == 0 || n_power % cert.d != 0) {
        throw DomainError("power must be a positive multiple of the diagonal support size");
    }
    cert.power = n_power;
    cert.count = multinomial_equal_parts(n_power, cert.d);
    if (cert.count > Integer(max_members)) {
        throw BudgetError("certificate family too large to materialize (" + cert.count.str() + ")");
    }

    std::vector<std::size_t> base;
    base.reserve(n_power);
    for (std::size_t p : cert.diagonal_support)
        for (std::size_t k = 0; k < n_power / cert.d; ++k) base.push_back(p);
    do {
        cert.digits.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));

    if (Integer(cert.digits.size()) != cert.count) {
        throw std::logic_error("digit-string family size disagrees with the multinomial count");
    }

    // Diagonal entries: products of positive diagonal coefficients.
    for (const auto& u : cert.digits) {
        for (std::size_t digit : u) {
            if (!a(digit, digit).is_positive()) {
                throw std::logic_error("certificate digit escaped the positive diagonal");
            }
        }
    }
    // Off-diagonal entries vanish: some factor A[u_k][v_k] is exactly 0.
    auto entry_is_zero = [&](const std::vector<std::size_t>& u, const std::vector<std::size_t>& v) {
        for (std::size_t k = 0; k < u.size(); ++k) {
            if (a(u[k], v[k]).is_zero()) return true;
        }
        return false;
    };
    for (std::size_t x = 0; x < cert.digits.size(); ++x) {
        for (std::size_t y = x + 1; y < cert.digits.size(); ++y) {
            if (!entry_is_zero(cert.digits[x], cert.digits[y]) ||
                !entry_is_zero(cert.digits[y], cert.digits[x])) {
                throw std::logic_error("selected submatrix is not diagonal");
            }
        }
    }
    return cert;
}

}  // namespace nnspectra
