#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

#include "nnspectra/errors.hpp"

namespace nnspectra {

using Integer = boost::multiprecision::cpp_int;

/*
 * Exact rational number. Always kept reduced with a positive
 * denominator; every operation is exact (no rounding anywhere).
 *
 * Backed by boost::multiprecision::cpp_rational, which maintains the
 * canonical form gcd(|num|, den) = 1, den > 0 on every operation.
 */
class Rational {
public:
    using Backend = boost::multiprecision::cpp_rational;

    Rational() = default;
    Rational(int v) : value_(v) {}                 // NOLINT: intentionally implicit
    Rational(unsigned v) : value_(v) {}            // NOLINT
    Rational(long v) : value_(v) {}                // NOLINT
    Rational(long long v) : value_(v) {}           // NOLINT
    Rational(unsigned long v) : value_(v) {}       // NOLINT
    Rational(unsigned long long v) : value_(v) {}  // NOLINT
    Rational(const Integer& v) : value_(v) {}      // NOLINT
    Rational(const Integer& num, const Integer& den) {
        if (den == 0) throw DomainError("rational with zero denominator");
        value_ = den < 0 ? Backend(Integer(-num), Integer(-den)) : Backend(num, den);
    }
    explicit Rational(Backend v) : value_(std::move(v)) {}

    Integer numerator() const { return boost::multiprecision::numerator(value_); }
    Integer denominator() const { return boost::multiprecision::denominator(value_); }

    bool is_zero() const { return value_.is_zero(); }
    bool is_negative() const { return value_ < 0; }
    bool is_positive() const { return value_ > 0; }
    bool is_integer() const { return denominator() == 1; }

    Rational reciprocal() const {
        if (is_zero()) throw DomainError("reciprocal of zero");
        return Rational(denominator(), numerator());
    }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DomainError("division by zero");
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(Backend(-a.value_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

    double to_double() const { return value_.convert_to<double>(); }

    // Reduced "p/q", or a bare integer string when q = 1.
    std::string to_string() const {
        std::string s = numerator().str();
        if (denominator() != 1) s += "/" + denominator().str();
        return s;
    }

    // Accepts "p", "-p", or "p/q" with optional surrounding whitespace.
    static Rational parse(std::string_view text) {
        size_t begin = text.find_first_not_of(" \t\r\n");
        size_t end = text.find_last_not_of(" \t\r\n");
        if (begin == std::string_view::npos) throw ParseError("empty rational literal");
        std::string_view body = text.substr(begin, end - begin + 1);

        size_t slash = body.find('/');
        try {
            if (slash == std::string_view::npos) {
                return Rational(parse_integer(body));
            }
            Integer num = parse_integer(body.substr(0, slash));
            Integer den = parse_integer(body.substr(slash + 1));
            if (den == 0) throw DomainError("rational with zero denominator: '" + std::string(text) + "'");
            return Rational(num, den);
        } catch (const std::runtime_error& e) {
            if (dynamic_cast<const DomainError*>(&e)) throw;
            throw ParseError("bad rational literal '" + std::string(text) + "'");
        }
    }

private:
    static Integer parse_integer(std::string_view s) {
        if (s.empty()) throw ParseError("empty integer literal");
        bool negative = s[0] == '-';
        size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
        if (i == s.size()) throw ParseError("sign without digits");
        for (size_t k = i; k < s.size(); ++k) {
            if (s[k] < '0' || s[k] > '9') throw ParseError("non-digit in integer literal");
        }
        // Strip leading zeros: the bignum string constructor would read
        // them as a base prefix.
        while (i + 1 < s.size() && s[i] == '0') ++i;
        Integer value(std::string(s.substr(i)));
        return negative ? Integer(-value) : value;
    }

    Backend value_;
};

inline Integer integer_pow(Integer base, std::uint64_t exp) {
    Integer result = 1;
    while (exp != 0) {
        if (exp & 1u) result *= base;
        base *= base;
        exp >>= 1u;
    }
    return result;
}

inline Rational rational_pow(const Rational& base, std::uint64_t exp) {
    return Rational(integer_pow(base.numerator(), exp), integer_pow(base.denominator(), exp));
}

}  // namespace nnspectra
