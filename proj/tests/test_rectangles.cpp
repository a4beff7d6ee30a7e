#include <catch2/catch.hpp>

#include "fixtures.hpp"
#include "nnspectra/laws.hpp"
#include "nnspectra/rectangles.hpp"
#include "oracles.hpp"

using namespace nnspectra;

TEST_CASE("maximal rectangles of simple patterns") {
    auto eye = enumerate_maximal_rectangles(support(NonnegativeMatrix::identity(3)));
    REQUIRE(eye.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(eye[i].row_set == std::vector<std::size_t>{i});
        CHECK(eye[i].col_set == std::vector<std::size_t>{i});
    }

    NonnegativeMatrix ones(2, 2, std::vector<Rational>(4, Rational(1)));
    auto full = enumerate_maximal_rectangles(support(ones));
    REQUIRE(full.size() == 1);
    CHECK(full[0].row_set == std::vector<std::size_t>{0, 1});
    CHECK(full[0].col_set == std::vector<std::size_t>{0, 1});

    CHECK(enumerate_maximal_rectangles(support(NonnegativeMatrix::zeros(2, 2))).empty());
}

TEST_CASE("the reference matrix has eight maximal rectangles of two cells each") {
    auto rects = enumerate_maximal_rectangles(support(fixtures::incomparable_a()));
    REQUIRE(rects.size() == 8);
    for (const auto& r : rects) {
        CHECK(r.row_set.size() * r.col_set.size() == 2);
    }
}

TEST_CASE("enumeration agrees with the brute-force maximality filter") {
    MatrixSampler sampler(83);
    for (int t = 0; t < 40; ++t) {
        auto a = sampler.matrix_up_to(4, 45 + (t % 3) * 15);
        SupportPattern s = support(a);
        auto fast = enumerate_maximal_rectangles(s);
        auto slow = oracles::maximal_filter(oracles::all_rectangles(s));
        std::sort(slow.begin(), slow.end());
        CHECK(fast == slow);
    }
}

TEST_CASE("every support cell lies in some maximal rectangle") {
    MatrixSampler sampler(89);
    for (int t = 0; t < 20; ++t) {
        auto a = sampler.matrix_up_to(5, 50);
        SupportPattern s = support(a);
        auto rects = enumerate_maximal_rectangles(s);
        for (const auto& [i, j] : s.cells()) {
            bool covered = false;
            for (const auto& r : rects) covered = covered || r.contains(i, j);
            CHECK(covered);
        }
    }
}

TEST_CASE("sorted canonical order and duplicate freedom") {
    MatrixSampler sampler(97);
    auto a = sampler.matrix(5, 5, 60);
    auto rects = enumerate_maximal_rectangles(support(a));
    for (std::size_t k = 1; k < rects.size(); ++k) {
        CHECK(rects[k - 1] < rects[k]);
    }
}

TEST_CASE("enumeration budget") {
    NonnegativeMatrix ones(3, 3, std::vector<Rational>(9, Rational(1)));
    CHECK_THROWS_AS(enumerate_maximal_rectangles(support(ones), 0), BudgetError);
}
