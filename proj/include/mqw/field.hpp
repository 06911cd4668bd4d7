// Multiquadratic fields Q(i?, sqrt(p1), ..., sqrt(pn)) and their canonical bases.
//
// A basis element i^a * sqrt(m) (m squarefree, composed of field primes) is
// addressed by a bit mask: bit j set means p_j divides m, and the bit just
// above the primes (when the field is imaginary) carries the factor i.
#pragma once

#include "mqw/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mqw {

using Mask = std::uint32_t;

/// Squarefree radicand plus an optional factor of i.
struct BasisLabel {
    Integer radicand{1};
    bool with_i = false;

    /// "1", "6", "i*2".
    std::string to_string() const;
    static BasisLabel parse(const std::string& text);

    friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

class FieldSpec {
public:
    /// Validates primality and distinctness; primes are stored sorted.
    static FieldSpec make(std::vector<std::int64_t> primes, bool imaginary);
    static FieldSpec rationals() { return FieldSpec(); }

    FieldSpec() = default;

    const std::vector<std::int64_t>& primes() const { return primes_; }
    bool imaginary() const { return imaginary_; }
    std::size_t generator_count() const { return primes_.size() + (imaginary_ ? 1 : 0); }
    std::size_t degree() const { return std::size_t{1} << generator_count(); }

    /// Mask of the label i (zero when the field is real).
    Mask i_bit() const { return imaginary_ ? Mask{1} << primes_.size() : 0; }
    Mask real_bits() const { return (Mask{1} << primes_.size()) - 1; }

    /// True iff `sub` is a subfield along generator inclusion.
    bool contains(const FieldSpec& sub) const;
    FieldSpec real_subfield() const { return FieldSpec(primes_, false); }
    FieldSpec with_i() const { return FieldSpec(primes_, true); }
    std::optional<std::size_t> prime_index(std::int64_t p) const;

    /// Maps a basis mask of `*this` into the basis of `super`.
    Mask lift_mask(Mask mask, const FieldSpec& super) const;

    Integer radicand(Mask mask) const;
    BasisLabel label(Mask mask) const;
    std::optional<Mask> mask_of(const BasisLabel& label) const;

    /// "Q", "Q(sqrt2,sqrt3)", "Q(i,sqrt2)".
    std::string to_string() const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
    FieldSpec(std::vector<std::int64_t> primes, bool imaginary)
        : primes_(std::move(primes)), imaginary_(imaginary) {}

    std::vector<std::int64_t> primes_;
    bool imaginary_ = false;
};

/// The larger of two comparable fields, or nothing when neither contains the other.
std::optional<FieldSpec> common_field(const FieldSpec& a, const FieldSpec& b);

/// Explicit compositum (generator union); never applied implicitly.
FieldSpec compositum(const FieldSpec& a, const FieldSpec& b);

/// Field generated by the primes of the squarefree part of n.
FieldSpec field_for_radicand(const Integer& n, bool imaginary = false);

/// A Galois automorphism: one sign per generator, stored as the mask of
/// generators sent to their negatives.
class SignVector {
public:
    explicit SignVector(FieldSpec field, Mask flipped = 0);

    static SignVector identity(const FieldSpec& field) { return SignVector(field); }
    /// All 2^(generators) automorphisms, identity first.
    static std::vector<SignVector> all(const FieldSpec& field);

    SignVector flipping_prime(std::int64_t p) const;
    SignVector flipping_i() const;

    const FieldSpec& field() const { return field_; }
    Mask flipped() const { return flipped_; }
    /// Sign picked up by the basis element with the given mask.
    int sign_of(Mask mask) const { return (__builtin_popcount(mask & flipped_) & 1) ? -1 : 1; }
    SignVector compose(const SignVector& other) const;

    friend bool operator==(const SignVector&, const SignVector&) = default;

private:
    FieldSpec field_;
    Mask flipped_;
};

}  // namespace mqw
