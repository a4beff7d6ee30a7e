#pragma once

#include <utility>

#include "nnspectra/errors.hpp"
#include "nnspectra/matrix.hpp"

namespace nnspectra {

// Nonnegative pair (X, Y) with X * B * Y^T = A for its bound pair.
struct RestrictionWitness {
    NonnegativeMatrix left;   // m_A x m_B
    NonnegativeMatrix right;  // n_A x n_B
};

// A restriction fact A = X * B * Y^T carried with its own proof.
struct Restriction {
    NonnegativeMatrix small;
    NonnegativeMatrix big;
    RestrictionWitness witness;

    void verify() const {
        if (multiply(multiply(witness.left, big), witness.right.transpose()) != small) {
            throw DomainError("restriction witness failed verification");
        }
    }
};

inline Restriction identity_restriction(const NonnegativeMatrix& a) {
    Restriction r{a, a,
                  {NonnegativeMatrix::identity(a.rows()), NonnegativeMatrix::identity(a.cols())}};
    r.verify();
    return r;
}

// (A <= B) and (C <= D) combine to (A + C <= B + D); the direct sums of
// the witness pairs witness the sum.
inline Restriction compose_witness_sum(const Restriction& w1, const Restriction& w2) {
    w1.verify();
    w2.verify();
    Restriction out{direct_sum(w1.small, w2.small), direct_sum(w1.big, w2.big),
                    {direct_sum(w1.witness.left, w2.witness.left),
                     direct_sum(w1.witness.right, w2.witness.right)}};
    out.verify();
    return out;
}

// (A <= B) and (C <= D) combine to (A x C <= B x D) via Kronecker
// products of the witness pairs (mixed-product rule).
inline Restriction compose_witness_product(const Restriction& w1, const Restriction& w2) {
    w1.verify();
    w2.verify();
    Restriction out{kronecker(w1.small, w2.small), kronecker(w1.big, w2.big),
                    {kronecker(w1.witness.left, w2.witness.left),
                     kronecker(w1.witness.right, w2.witness.right)}};
    out.verify();
    return out;
}

// Transitivity: (A <= B) through (B <= C) gives (A <= C) with the
// products of the one-sided factors.
inline Restriction chain_witness(const Restriction& outer, const Restriction& inner) {
    outer.verify();
    inner.verify();
    if (outer.big != inner.small) throw DomainError("witness chain endpoints do not match");
    Restriction out{outer.small, inner.big,
                    {multiply(outer.witness.left, inner.witness.left),
                     multiply(outer.witness.right, inner.witness.right)}};
    out.verify();
    return out;
}

}  // namespace nnspectra
