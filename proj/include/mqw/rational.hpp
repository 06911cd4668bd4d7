// Exact integer and rational helpers shared by every module.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mqw {

using Integer = mpz_class;
using Rational = mpq_class;

Integer isqrt(const Integer& n);
bool is_perfect_square(const Integer& n);

/// Trial-division primality; inputs are desk-scale generators.
bool is_prime(std::int64_t n);

/// Prime factorisation by trial division, ascending primes with multiplicity.
std::vector<std::pair<Integer, unsigned>> factor(const Integer& n);

/// n = root^2 * squarefree with squarefree > 0 (n must be positive).
struct SquarefreeSplit {
    Integer root;
    Integer squarefree;
};
SquarefreeSplit split_square(const Integer& n);

bool is_squarefree(const Integer& n);

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);
Integer power(const Integer& base, unsigned exponent);

/// "num/den", always with an explicit denominator.
std::string to_fraction_string(const Rational& q);
/// Human form: "3", "-1/2".
std::string to_display_string(const Rational& q);
/// Accepts "a", "-a", "a/b"; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

/// Integer ceil/floor of a rational.
Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);

}  // namespace mqw
