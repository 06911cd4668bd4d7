// Finite sets {x in O : lower << x << upper} of totally bounded integers,
// and the parametrised family cut out by phi(x; p, q).
#pragma once

#include "mqw/definable.hpp"
#include "mqw/element.hpp"

#include <array>
#include <span>
#include <vector>

namespace mqw {

/// A Z-basis of a full-rank order in a real multiquadratic field.
class OrderBasis {
public:
    /// Validates integrality and that the trace form Tr(b_i b_j) is nonsingular.
    static OrderBasis make(const FieldSpec& field, std::vector<Element> basis);

    const FieldSpec& field() const { return field_; }
    const std::vector<Element>& basis() const { return basis_; }
    std::size_t rank() const { return basis_.size(); }

    Element combine(std::span<const long> coords) const;
    /// Inverse of the coordinate map: radical-basis coefficients to order
    /// coordinates. Row j gives coordinate j.
    const std::vector<std::vector<Rational>>& radical_to_order() const { return to_order_; }

private:
    FieldSpec field_;
    std::vector<Element> basis_;
    std::vector<std::vector<Rational>> to_order_;
};

/// {sqrt m : m squarefree product of field primes}; with `maximal` on
/// Q(sqrt p), p = 1 mod 4, the basis {1, (1 + sqrt p)/2}. Throws for
/// imaginary fields and for `maximal` where no classical basis is known.
OrderBasis default_order(const FieldSpec& field, bool maximal = false);

struct BoxQuery {
    OrderBasis order;
    Rational lower{0};
    Rational upper;
};

/// Every conjugate strictly inside (lower, upper). Non-real elements are never inside.
bool is_totally_between(const Element& x, const Rational& lower, const Rational& upper);

/// Closed integer ranges that contain every order coordinate of a solution.
struct CoordinateBox {
    std::vector<long> lo, hi;
    std::size_t volume() const;
};
CoordinateBox coordinate_bounds(const BoxQuery& q);

/// Complete duplicate-free solution list, sorted by order coordinates.
/// Coordinates are bounded through the signed-sum (Hadamard) structure of the
/// radical basis; the bounded box is scanned in parallel.
std::vector<Element> totally_bounded_box(const BoxQuery& q);

/// Serial reference: scans every coordinate vector with |c| <= ceil(t * degree),
/// t = max(|lower|, |upper|), and filters.
std::vector<Element> totally_bounded_box_reference(const BoxQuery& q);

/// Checks that every conjugate of every member is again a member.
bool is_galois_closed(std::span<const Element> set);

struct FamilyMember {
    Element x;
    Integer px;                       // the natural number p * x
    std::array<Integer, 4> px_squares;    // px = sum of squares
    std::array<Integer, 4> rest_squares;  // q - px = sum of squares
};

/// Members of the pool satisfying phi(x; p, q): px != 0, px != q, and
/// px, q - px sums of four squares of elements of the witness domain, each
/// certified in W by w_member(., N, leading_constant(N)). Each member is
/// re-checked with is_totally_between(p x, 0, q).
std::vector<FamilyMember> family_set(const Integer& p, const Integer& q, unsigned N, std::span<const Element> pool,
                                     std::span<const Element> witness_domain);

/// {lo, ..., hi} as rational Elements.
std::vector<Element> natural_range(long lo, long hi);

}  // namespace mqw
