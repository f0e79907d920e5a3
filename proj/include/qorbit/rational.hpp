#pragma once
#include <boost/multiprecision/gmp.hpp>
#include <string>

#include "errors.hpp"

namespace qorbit {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline std::string rational_str(const Rational& q) { return q.str(); }

inline Rational parse_rational(const std::string& text) {
    try {
        Rational q(text);
        return q;
    } catch (const std::exception&) {
        throw ParseError("not a rational literal: '" + text + "'");
    }
}

inline Rational rational_pow(const Rational& q, long e) {
    if (e < 0) {
        if (q == 0) throw DenominatorVanishes("0 raised to a negative power");
        Rational inv = Rational(1) / q;
        return rational_pow(inv, -e);
    }
    Rational acc(1), base = q;
    long k = e;
    while (k > 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

// gcd of two rationals in the lattice sense: g > 0 with a/g, b/g integral and
// coprime numerators. Used to extract numeric content of polynomials.
inline Rational rational_content_gcd(const Rational& a, const Rational& b) {
    using boost::multiprecision::gcd;
    using boost::multiprecision::lcm;
    if (a == 0) return abs(b);
    if (b == 0) return abs(a);
    Integer n = gcd(numerator(a) * denominator(b), numerator(b) * denominator(a));
    Integer d = denominator(a) * denominator(b);
    Rational g(n, d);
    return abs(g);
}

} // namespace qorbit
