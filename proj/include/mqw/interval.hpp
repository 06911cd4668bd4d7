// Closed intervals with exact rational endpoints.
#pragma once

#include "mqw/rational.hpp"

#include <string>

namespace mqw {

struct Interval {
    Rational lo, hi;

    static Interval point(const Rational& q) { return {q, q}; }

    Rational width() const { return hi - lo; }
    bool contains(const Rational& q) const { return lo <= q && q <= hi; }
    bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
    bool strictly_positive() const { return lo > 0; }
    bool strictly_negative() const { return hi < 0; }
    std::string to_string() const;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
Interval operator*(const Rational& c, const Interval& a);

/// Rectangular enclosure of a complex number.
struct ComplexInterval {
    Interval re, im;

    static ComplexInterval point(const Rational& q) { return {Interval::point(q), Interval::point(0)}; }
    bool contains(const Rational& real, const Rational& imag = 0) const {
        return re.contains(real) && im.contains(imag);
    }
    std::string to_string() const;
};

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b);
ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b);

/// Encloses sqrt(n) by dyadic rationals of denominator 2^bits (width <= 2^-bits).
Interval sqrt_enclosure(const Integer& n, unsigned bits);

}  // namespace mqw
