// Exact elements of multiquadratic fields.
#pragma once

#include "mqw/field.hpp"
#include "mqw/interval.hpp"
#include "mqw/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mqw {

/// Coefficients over the canonical radical basis, indexed by basis mask.
/// The dense vector is the canonical form: two elements of the same field
/// are equal iff their vectors are.
class Element {
public:
    Element() : Element(FieldSpec::rationals()) {}
    explicit Element(FieldSpec field);
    Element(FieldSpec field, std::vector<Rational> coefficients);

    static Element rational(const Rational& q, const FieldSpec& field = FieldSpec::rationals());
    static Element integer(long v, const FieldSpec& field = FieldSpec::rationals()) { return rational(v, field); }
    static Element basis(const FieldSpec& field, const BasisLabel& label, const Rational& coefficient = 1);
    static Element sqrt_prime(std::int64_t p, const FieldSpec& field);
    static Element imaginary_unit(const FieldSpec& field);

    const FieldSpec& field() const { return field_; }
    const std::vector<Rational>& coefficients() const { return c_; }
    const Rational& coefficient(Mask mask) const { return c_[mask]; }
    Rational coefficient(const BasisLabel& label) const;

    bool is_zero() const;
    bool is_rational() const;
    std::optional<Rational> as_rational() const;
    /// True iff some coefficient on an i-label is nonzero.
    bool has_imaginary_part() const;

    /// Coerces into a containing field; throws if `super` does not contain field().
    Element lift(const FieldSpec& super) const;
    /// The same element over `sub`, if all its coefficients live there.
    std::optional<Element> restrict_to(const FieldSpec& sub) const;

    Element conjugate(const SignVector& s) const;
    /// Rigorous enclosure of the conjugate's complex value.
    ComplexInterval embed(const SignVector& s, unsigned bits) const;

    /// Characteristic polynomial of multiplication-by-x on the Q-basis.
    RatPolynomial char_poly() const;
    Rational norm() const;
    Rational trace() const;
    bool is_integral() const;

    Element inverse() const;
    Element pow(long exponent) const;

    Element operator-() const;
    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    Element& operator*=(const Element& o);

    std::string to_string() const;

    friend bool operator==(const Element& a, const Element& b);

private:
    FieldSpec field_;
    std::vector<Rational> c_;
};

Element operator+(const Element& a, const Element& b);
Element operator-(const Element& a, const Element& b);
Element operator*(const Element& a, const Element& b);
Element operator/(const Element& a, const Element& b);

enum class ArithOp { add, sub, mul, div };
Element arith(ArithOp op, const Element& a, const Element& b);

/// Lifts both operands to their common field; throws for incomparable fields.
std::pair<Element, Element> coerce(const Element& a, const Element& b);

/// Sign of the identity embedding of an element with no i-part (-1, 0, +1).
/// Exact zero test first, then interval refinement, so it always terminates.
int real_sign(const Element& x);

/// The positive square root of m inside `field`.
Element sqrt_nat(const Integer& m, const FieldSpec& field);

}  // namespace mqw
