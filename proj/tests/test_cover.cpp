#include <catch2/catch.hpp>

#include "fixtures.hpp"
#include "nnspectra/cover.hpp"
#include "nnspectra/laws.hpp"
#include "nnspectra/rank.hpp"
#include "oracles.hpp"

using namespace nnspectra;

TEST_CASE("rectangle enumeration budget propagates") {
    NonnegativeMatrix ones(3, 3, std::vector<Rational>(9, Rational(1)));
    CHECK_THROWS_AS(fractional_cover(ones, 0), BudgetError);
    TfoldOptions opts;
    opts.rectangle_budget = 0;
    CHECK_THROWS_AS(tfold_cover(ones, 1, opts), BudgetError);

    TfoldOptions no_nodes;
    no_nodes.node_budget = 0;
    CHECK_THROWS_AS(tfold_cover(fixtures::incomparable_a(), 1, no_nodes), BudgetError);
}

TEST_CASE("fractional cover of the reference matrices") {
    auto fa = fractional_cover(fixtures::incomparable_a());
    CHECK(fa.value == Rational(4));
    fa.verify();

    auto fb = fractional_cover(fixtures::incomparable_b());
    CHECK(fb.value == Rational(7, 2));
    fb.verify();

    for (std::size_t n = 1; n <= 6; ++n) {
        CHECK(fractional_cover(NonnegativeMatrix::identity(n)).value == Rational(n));
    }
    CHECK(fractional_cover(NonnegativeMatrix::zeros(3, 3)).value == Rational(0));
}

TEST_CASE("rank and fractional cover are incomparable") {
    CHECK(fractional_cover(fixtures::incomparable_a()).value > Rational(rank(fixtures::incomparable_a()).rank));
    CHECK(fractional_cover(fixtures::incomparable_b()).value < Rational(rank(fixtures::incomparable_b()).rank));
}

TEST_CASE("strong duality holds exactly on random supports") {
    MatrixSampler sampler(103);
    for (int t = 0; t < 40; ++t) {
        auto a = sampler.matrix_up_to(5, 40 + (t % 3) * 20);
        auto sol = fractional_cover(a);
        sol.verify();  // includes primal total == dual total
    }
}

TEST_CASE("maximal-rectangle LP equals the all-rectangle LP on tiny patterns") {
    MatrixSampler sampler(107);
    for (int t = 0; t < 25; ++t) {
        auto a = sampler.matrix_up_to(3, 55);
        if (a.is_zero()) continue;
        SupportPattern s = support(a);
        CHECK(fractional_cover(a).value == oracles::cover_lp_value(s, oracles::all_rectangles(s)));
    }
}

TEST_CASE("t-fold covering numbers") {
    CHECK(tfold_cover(NonnegativeMatrix::identity(2), 1).value == Rational(2));
    CHECK(tfold_cover(fixtures::incomparable_a(), 1).value == Rational(4));
    CHECK(tfold_cover(fixtures::incomparable_b(), 2).value == Rational(7));
    CHECK(tfold_cover(NonnegativeMatrix::zeros(2, 2), 3).value == Rational(0));
    CHECK_THROWS_AS(tfold_cover(NonnegativeMatrix::identity(2), 0), DomainError);

    auto sol = tfold_cover(fixtures::incomparable_a(), 2);
    sol.verify();
    CHECK(sol.value <= Rational(8));  // duplicating a 1-fold cover
}

TEST_CASE("t-fold values in closed form") {
    for (unsigned t = 1; t <= 4; ++t) {
        // Disjoint singletons: every diagonal cell needs t copies of its
        // own rectangle.
        CHECK(tfold_cover(NonnegativeMatrix::identity(3), t).value == Rational(3 * t));
        // One full rectangle with multiplicity t covers everything.
        NonnegativeMatrix ones(2, 3, std::vector<Rational>(6, Rational(1)));
        CHECK(tfold_cover(ones, t).value == Rational(t));
    }
}

TEST_CASE("one-fold cover number matches exhaustive set cover") {
    MatrixSampler sampler(109);
    for (int t = 0; t < 25; ++t) {
        auto a = sampler.matrix_up_to(4, 50);
        if (a.is_zero()) continue;
        SupportPattern s = support(a);
        auto rects = enumerate_maximal_rectangles(s);
        CHECK(tfold_cover(a, 1).value == Rational(oracles::exact_cover_number(s, rects)));
    }
}

TEST_CASE("fold subadditivity and the fractional floor") {
    MatrixSampler sampler(113);
    for (int t = 0; t < 15; ++t) {
        auto a = sampler.nonzero_matrix_up_to(4, 55);
        Rational f = fractional_cover(a).value;
        Rational f1 = tfold_cover(a, 1).value;
        Rational f2 = tfold_cover(a, 2).value;
        Rational f3 = tfold_cover(a, 3).value;
        Rational f4 = tfold_cover(a, 4).value;
        CHECK(f <= f1);
        CHECK(f1 <= Rational(support(a).count()));
        CHECK(f2 <= f1 + f1);
        CHECK(f3 <= f1 + f2);
        CHECK(f4 <= f2 + f2);
        CHECK(f1 >= f);
        CHECK(f2 / Rational(2) >= f);
        CHECK(f3 / Rational(3) >= f);
    }
}

TEST_CASE("fstar sequence reports the certified floor") {
    auto est = fstar_estimate(NonnegativeMatrix::identity(3), 3);
    CHECK(est.fractional_floor == Rational(3));
    for (const auto& [t, ratio] : est.ratios) CHECK(ratio == Rational(3));

    auto est_a = fstar_estimate(fixtures::incomparable_a(), 1);
    CHECK(est_a.fractional_floor == Rational(4));
    CHECK(est_a.ratios.front().second == Rational(4));  // sandwich closes at t = 1

    auto est_b = fstar_estimate(fixtures::incomparable_b(), 2);
    CHECK(est_b.fractional_floor == Rational(7, 2));
    CHECK(est_b.ratios[1].second == Rational(7, 2));  // denominator 2 suffices here
}

TEST_CASE("cover value depends only on the support") {
    MatrixSampler sampler(127);
    for (int t = 0; t < 15; ++t) {
        auto a = sampler.nonzero_matrix_up_to(4, 55);
        std::vector<Rational> rescaled;
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                rescaled.push_back(a(i, j).is_zero() ? Rational(0)
                                                     : a(i, j) * sampler.positive_rational());
        NonnegativeMatrix b(a.rows(), a.cols(), std::move(rescaled));
        CHECK(fractional_cover(a).value == fractional_cover(b).value);
        CHECK(tfold_cover(a, 2).value == tfold_cover(b, 2).value);
    }
}

TEST_CASE("cover is additive, multiplicative and monotone") {
    MatrixSampler sampler(131);
    for (int t = 0; t < 12; ++t) {
        auto a = sampler.matrix_up_to(3, 55);
        auto b = sampler.matrix_up_to(3, 55);
        CHECK(fractional_cover(direct_sum(a, b)).value ==
              fractional_cover(a).value + fractional_cover(b).value);
        CHECK(fractional_cover(kronecker(a, b)).value ==
              fractional_cover(a).value * fractional_cover(b).value);

        auto c = sampler.matrix(b.cols(), sampler.dimension(3), 60);
        auto bc = multiply(b, c);
        CHECK(fractional_cover(bc).value <=
              std::min(fractional_cover(b).value, fractional_cover(c).value));

        auto x = sampler.matrix(sampler.dimension(3), b.rows(), 60);
        auto y = sampler.matrix(sampler.dimension(3), b.cols(), 60);
        CHECK(fractional_cover(multiply(multiply(x, b), y.transpose())).value <=
              fractional_cover(b).value);
    }
}

TEST_CASE("support of a product is the product of supports") {
    MatrixSampler sampler(137);
    for (int t = 0; t < 20; ++t) {
        auto m = sampler.matrix_up_to(4, 55);
        auto n = sampler.matrix(m.cols(), sampler.dimension(4), 55);
        auto direct = support(multiply(m, n));
        auto via_binary = support(multiply(support(m).to_matrix(), support(n).to_matrix()));
        CHECK(direct == via_binary);
    }
}
