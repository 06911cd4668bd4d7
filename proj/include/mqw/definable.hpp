// The definable tower X^(0), X^(1), ... and the set W containing the naturals.
//
// Membership is only ever represented by explicit certificates
// (WitnessChain) that re-verify by exact arithmetic.
#pragma once

#include "mqw/polynomial.hpp"
#include "mqw/units.hpp"

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace mqw {

/// f(x) = (x + sqrt(x^2+1))^(2N) + (x - sqrt(x^2+1))^(2N) as an integer polynomial.
IntPolynomial poly_f(unsigned N);

/// f(x + k) - f(x)
IntPolynomial delta(const IntPolynomial& f, const Integer& k);
/// n-fold forward difference.
IntPolynomial delta_iter(const IntPolynomial& f, const Integer& k, unsigned n);

/// (2N)! * 2^(2N): the value of Delta_k^(2N) f divided by k^(2N).
Integer leading_constant(unsigned N);
/// 2 * (2N)!, the constant quoted alongside the W construction; kept for comparison runs.
Integer stated_constant(unsigned N);

/// a^2 + b^2 + c^2 + d^2 = n, components in non-increasing order.
std::array<Integer, 4> four_squares(const Integer& n);

struct WaringParams {
    unsigned exponent_k = 0;
    Integer g_value;
    bool condition_verified = false;
};

/// g(k) = 2^k + floor((3/2)^k) - 2, with the side condition
/// 2^k * frac((3/2)^k) + floor((3/2)^k) <= 2^k checked in exact integers.
WaringParams waring_g(unsigned k);

/// Decomposition of m into at most g(k) k-th powers: the nonzero part of
/// four_squares for k = 2, a minimal-length dynamic program for k > 2.
/// Returns the bases, largest first.
std::vector<Integer> waring_decompose(const Integer& m, unsigned k);

struct WitnessChain;
using ChainPtr = std::shared_ptr<const WitnessChain>;

/// x = u1^(2N) + u2^(2N) with u1, u2 units.
struct UnitPair {
    Element u1, u2;
};
/// x = left - right with both children one level down.
struct Difference {
    ChainPtr left, right;
};
/// x = sum of terms (each an X^(2N) chain) + remainder, 0 <= remainder <= bound.
struct WSum {
    std::vector<ChainPtr> terms;
    Integer remainder;
    Integer remainder_bound;
};

struct WitnessChain {
    static constexpr int kW = -1;

    Element target;
    int level = 0;  // n for X^(n), kW for W
    std::variant<UnitPair, Difference, WSum> node;
};

/// Exhaustive search over pairs from the pool and their inverses.
std::optional<ChainPtr> x0_witness(const Element& x, unsigned N, std::span<const UnitWitness> unit_pool);
std::optional<ChainPtr> x0_witness_serial(const Element& x, unsigned N, std::span<const UnitWitness> unit_pool);

/// Leaf certificate f(n) = u^(2N) + u^(-2N), u = n + sqrt(n^2 + 1).
ChainPtr f_value_chain(unsigned N, const Integer& n);

/// Certificate that Delta_k^levels f(start) lies in X^(levels). Shared
/// subtrees make it a DAG with O(levels^2) distinct nodes.
ChainPtr difference_chain(unsigned N, const Integer& k, unsigned levels, const Integer& start = 0);

/// Re-verifies every node by exact arithmetic. Throws std::invalid_argument
/// on malformed structure (null children, wrong node kind for the level).
bool verify_chain(const WitnessChain& chain, unsigned N);

/// Decomposes x = sum C * k_i^(2N) + l with at most g(2N) terms and
/// 0 <= l < C; nothing if some term cannot be certified at this C.
std::optional<ChainPtr> w_member(const Integer& x, unsigned N, const Integer& C);

}  // namespace mqw
