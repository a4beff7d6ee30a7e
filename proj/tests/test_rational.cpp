#include <catch2/catch.hpp>

#include <random>

#include "nnspectra/rational.hpp"

using nnspectra::DomainError;
using nnspectra::Integer;
using nnspectra::ParseError;
using nnspectra::Rational;

TEST_CASE("rationals stay reduced with positive denominators") {
    Rational r(Integer(6), Integer(-4));
    CHECK(r.numerator() == -3);
    CHECK(r.denominator() == 2);
    CHECK(Rational(Integer(0), Integer(7)).denominator() == 1);
    CHECK((Rational(1, 3) + Rational(1, 6)).to_string() == "1/2");
}

TEST_CASE("parsing accepts integers and p/q, rejects junk") {
    CHECK(Rational::parse("7/2") == Rational(7, 2));
    CHECK(Rational::parse("  -3 ") == Rational(-3));
    CHECK(Rational::parse("4/6") == Rational(2, 3));
    CHECK(Rational::parse("+5") == Rational(5));
    CHECK(Rational::parse("007/014") == Rational(1, 2));  // decimal, never octal
    CHECK(Rational::parse("000") == Rational(0));
    CHECK_THROWS_AS(Rational::parse("1/0"), DomainError);
    CHECK_THROWS_AS(Rational::parse(""), ParseError);
    CHECK_THROWS_AS(Rational::parse("a/b"), ParseError);
    CHECK_THROWS_AS(Rational::parse("1.5"), ParseError);
    CHECK_THROWS_AS(Rational(Integer(1), Integer(0)), DomainError);
}

TEST_CASE("reciprocal handles signs and rejects zero") {
    CHECK(Rational(3, 2).reciprocal() == Rational(2, 3));
    CHECK(Rational(-3, 2).reciprocal() == Rational(-2, 3));
    CHECK(Rational(-3, 2).reciprocal().denominator() == 3);
    CHECK_THROWS_AS(Rational(0).reciprocal(), DomainError);
}

TEST_CASE("serialization round-trips") {
    for (const char* text : {"0", "17", "-5/3", "1000000007/13"}) {
        CHECK(Rational::parse(Rational::parse(text).to_string()) == Rational::parse(text));
    }
}

TEST_CASE("field laws on random values") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> num(-30, 30), den(1, 12);
    for (int t = 0; t < 200; ++t) {
        Rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
        CHECK((a + b) * c == a * c + b * c);
        CHECK(a + b == b + a);
        if (!c.is_zero()) CHECK(a * c / c == a);
    }
    CHECK_THROWS_AS(Rational(1) / Rational(0), DomainError);
}
