#include <catch2/catch.hpp>

#include "fixtures.hpp"
#include "nnspectra/induced_matching.hpp"
#include "nnspectra/laws.hpp"
#include "nnspectra/nnrank.hpp"

using namespace nnspectra;

namespace {

void check_certificate(const NonnegativeMatrix& a, const NnrankBounds& b) {
    REQUIRE(b.upper_certified);
    REQUIRE(b.certified_factors.has_value());
    CHECK(b.certified_factors->w.cols() == b.upper);
    CHECK(multiply(b.certified_factors->w, b.certified_factors->h) == a);
}

}  // namespace

TEST_CASE("identities are certified tight") {
    for (std::size_t n = 1; n <= 6; ++n) {
        auto eye = NonnegativeMatrix::identity(n);
        auto b = nnrank_bounds(eye);
        CHECK(b.lower == n);
        CHECK(b.upper == n);
        check_certificate(eye, b);
    }
}

TEST_CASE("the reference matrix closes at four via its disjoint cover") {
    auto a = fixtures::incomparable_a();
    auto b = nnrank_bounds(a);
    CHECK(b.lower == 4);  // max(rank 3, one-fold cover 4)
    CHECK(b.upper == 4);
    check_certificate(a, b);
}

TEST_CASE("triangular matrices with positive diagonal close at min(m, n)") {
    NonnegativeMatrix tri{{1, Rational(1, 2), 3}, {0, 2, 1}, {0, 0, Rational(5, 2)}};
    auto b = nnrank_bounds(tri);
    CHECK(b.lower == 3);
    CHECK(b.upper == 3);
    check_certificate(tri, b);
}

TEST_CASE("zero matrices have zero bounds") {
    auto b = nnrank_bounds(NonnegativeMatrix::zeros(3, 4));
    CHECK(b.lower == 0);
    CHECK(b.upper == 0);
    CHECK(b.upper_certified);
}

TEST_CASE("block decomposition returns the support components") {
    auto a = fixtures::incomparable_a();
    NonnegativeMatrix tri{{1, 0}, {1, 2}};
    auto blocks = nnrank_block_decompose(direct_sum(a, tri));
    REQUIRE(blocks.size() == 2);
    CHECK(blocks[0] == a);
    CHECK(blocks[1] == tri);

    auto eye_blocks = nnrank_block_decompose(NonnegativeMatrix::identity(3));
    REQUIRE(eye_blocks.size() == 3);
    for (const auto& blk : eye_blocks) CHECK(blk == NonnegativeMatrix{{1}});

    auto connected = nnrank_block_decompose(fixtures::matching_example());
    REQUIRE(connected.size() == 1);
    CHECK(connected[0] == fixtures::matching_example());

    CHECK(nnrank_block_decompose(NonnegativeMatrix::zeros(2, 2)).empty());
}

TEST_CASE("bounds are additive under direct sums") {
    MatrixSampler sampler(139);
    for (int t = 0; t < 20; ++t) {
        auto a = sampler.matrix_up_to(3, 55);
        auto b = sampler.matrix_up_to(3, 55);
        auto ba = nnrank_bounds(a);
        auto bb = nnrank_bounds(b);
        auto bs = nnrank_bounds(direct_sum(a, b));
        CHECK(bs.lower == ba.lower + bb.lower);
        CHECK(bs.upper == ba.upper + bb.upper);
        if (ba.upper_certified && bb.upper_certified) CHECK(bs.upper_certified);
    }
}

TEST_CASE("upper bounds compose under kronecker products") {
    MatrixSampler sampler(149);
    for (int t = 0; t < 12; ++t) {
        auto a = sampler.matrix_up_to(3, 60);
        auto b = sampler.matrix_up_to(3, 60);
        auto ba = nnrank_bounds(a);
        auto bb = nnrank_bounds(b);
        if (!(ba.upper_certified && bb.upper_certified)) continue;
        auto bp = nnrank_bounds(kronecker(a, b));
        CHECK(bp.upper <= ba.upper * bb.upper);
    }
}

TEST_CASE("sandwich consistency") {
    MatrixSampler sampler(151);
    for (int t = 0; t < 20; ++t) {
        auto a = sampler.matrix_up_to(4, 55);
        auto b = nnrank_bounds(a);
        auto stripped = strip_zero_lines(a);
        CHECK(subrank(a).size <= b.lower);
        CHECK(b.lower <= b.upper);
        CHECK(b.upper <= std::min(stripped.kept_rows.size(), stripped.kept_cols.size()));
    }
}

TEST_CASE("bounds are invariant under monomial transforms") {
    MatrixSampler sampler(157);
    for (int t = 0; t < 12; ++t) {
        auto a = sampler.matrix_up_to(3, 60);
        auto row = sampler.monomial(a.rows());
        auto col = sampler.monomial(a.cols());
        auto moved = multiply(multiply(row.to_matrix(), a), col.to_matrix().transpose());
        auto ba = nnrank_bounds(a);
        auto bm = nnrank_bounds(moved);
        CHECK(ba.lower == bm.lower);
        CHECK(ba.upper == bm.upper);
    }
}

TEST_CASE("certified factors verify when the heuristic rounds cleanly") {
    // Rank-one with awkward scales: certified via the cover partition.
    NonnegativeMatrix rank_one{{Rational(1, 3), Rational(2, 3)}, {Rational(1, 2), Rational(1)}};
    auto b = nnrank_bounds(rank_one);
    CHECK(b.lower == 1);
    CHECK(b.upper == 1);
    check_certificate(rank_one, b);
}

TEST_CASE("uncertified uppers surface the float residual") {
    // Nested-block matrix whose nonnegative rank 3 factorization is not
    // found by the structural routes; the multiplicative-update probe
    // may accept r=3 but certification is not required to succeed.
    NonnegativeMatrix spiky{{4, 1, 0}, {1, 1, 1}, {0, 1, 4}};
    auto b = nnrank_bounds(spiky);
    CHECK(b.lower <= b.upper);
    if (!b.upper_certified) {
        REQUIRE(b.factorization.has_value());
        CHECK(b.factorization->residual >= 0.0);
    }
}
