#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

#include "nnspectra/errors.hpp"
#include "nnspectra/matrix.hpp"

namespace nnspectra {

/*
 * A nonnegative matrix whose inverse is also nonnegative, stored as
 * permutation-plus-positive-scales: source index i maps to target
 * permutation[i] with weight scales[i]. These are exactly the monomial
 * matrices, so the class represents GL+(n).
 */
struct MonomialTransform {
    std::vector<std::size_t> permutation;
    std::vector<Rational> scales;

    static MonomialTransform identity(std::size_t n) {
        MonomialTransform t;
        t.permutation.resize(n);
        std::iota(t.permutation.begin(), t.permutation.end(), 0);
        t.scales.assign(n, Rational(1));
        return t;
    }

    std::size_t size() const { return permutation.size(); }

    void validate() const {
        if (scales.size() != permutation.size()) throw DomainError("monomial transform shape mismatch");
        std::vector<char> seen(permutation.size(), 0);
        for (std::size_t i = 0; i < permutation.size(); ++i) {
            if (permutation[i] >= permutation.size() || seen[permutation[i]]) {
                throw DomainError("monomial transform permutation is not a bijection");
            }
            seen[permutation[i]] = 1;
            if (!scales[i].is_positive()) throw DomainError("monomial transform scale must be positive");
        }
    }

    // M with M[permutation[i]][i] = scales[i].
    NonnegativeMatrix to_matrix() const {
        std::vector<Rational> entries(size() * size());
        for (std::size_t i = 0; i < size(); ++i) entries[permutation[i] * size() + i] = scales[i];
        return NonnegativeMatrix(size(), size(), std::move(entries));
    }

    MonomialTransform inverse() const {
        MonomialTransform inv;
        inv.permutation.resize(size());
        inv.scales.resize(size());
        for (std::size_t i = 0; i < size(); ++i) {
            inv.permutation[permutation[i]] = i;
            inv.scales[permutation[i]] = scales[i].reciprocal();
        }
        return inv;
    }
};

}  // namespace nnspectra
