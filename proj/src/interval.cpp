#include "mqw/interval.hpp"

#include <algorithm>

namespace mqw {

std::string Interval::to_string() const {
    return "[" + to_display_string(lo) + ", " + to_display_string(hi) + "]";
}

Interval operator+(const Interval& a, const Interval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Interval operator-(const Interval& a, const Interval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

Interval operator*(const Interval& a, const Interval& b) {
    Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    auto [mn, mx] = std::minmax_element(p, p + 4);
    return {*mn, *mx};
}

Interval operator*(const Rational& c, const Interval& a) {
    if (c >= 0) return {c * a.lo, c * a.hi};
    return {c * a.hi, c * a.lo};
}

std::string ComplexInterval::to_string() const { return re.to_string() + " + i" + im.to_string(); }

ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re + b.re, a.im + b.im};
}

ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Interval sqrt_enclosure(const Integer& n, unsigned bits) {
    Integer scaled = n << (2 * bits);
    Integer s = isqrt(scaled);
    Integer den = Integer(1) << bits;
    Rational lo(s, den);
    lo.canonicalize();
    if (s * s == scaled) return Interval::point(lo);
    Rational hi(s + 1, den);
    hi.canonicalize();
    return {lo, hi};
}

}  // namespace mqw
