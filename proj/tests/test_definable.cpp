#include "mqw/definable.hpp"

#include <doctest.h>

#include <set>

using namespace mqw;

namespace {

// (n + s)^(2N) + (n - s)^(2N), s = sqrt(n^2 + 1), evaluated in the field itself.
Element f_direct(unsigned N, long n) {
    const Integer r = Integer(n) * n + 1;
    const FieldSpec f = field_for_radicand(r);
    const Element s = sqrt_nat(r, f);
    const Element a = Element::rational(n, f);
    return (a + s).pow(2L * N) + (a - s).pow(2L * N);
}

// Finite difference by the binomial expansion of (shift - 1)^n.
Integer difference_by_binomial(const IntPolynomial& f, long k, unsigned n, long x) {
    Integer sum = 0;
    for (unsigned j = 0; j <= n; ++j) {
        const Integer term = binomial(n, j) * f(Integer(x + static_cast<long>(n - j) * k));
        sum += (j % 2 ? -term : term);
    }
    return sum;
}

// Least number of k-th powers summing to each n <= limit.
std::vector<unsigned> min_power_counts(unsigned k, unsigned limit) {
    std::vector<unsigned> best(limit + 1, 1u << 30);
    best[0] = 0;
    for (unsigned b = 1;; ++b) {
        unsigned long p = 1;
        for (unsigned j = 0; j < k; ++j) p *= b;
        if (p > limit) break;
        for (unsigned long v = p; v <= limit; ++v) best[v] = std::min(best[v], best[v - p] + 1);
    }
    return best;
}

std::size_t distinct_nodes(const WitnessChain& c, std::set<const WitnessChain*>& seen) {
    if (!seen.insert(&c).second) return 0;
    std::size_t n = 1;
    if (const auto* d = std::get_if<Difference>(&c.node)) {
        n += distinct_nodes(*d->left, seen);
        n += distinct_nodes(*d->right, seen);
    } else if (const auto* w = std::get_if<WSum>(&c.node)) {
        for (const auto& t : w->terms) n += distinct_nodes(*t, seen);
    }
    return n;
}

}  // namespace

TEST_CASE("poly_f agrees with the defining expression") {
    CHECK(poly_f(1).to_string() == "4*x^2 + 2");
    CHECK(poly_f(2).to_string() == "16*x^4 + 16*x^2 + 2");
    for (unsigned N = 1; N <= 4; ++N) {
        const auto f = poly_f(N);
        CHECK(f.degree() == static_cast<int>(2 * N));
        CHECK(f.leading() == power(2, 2 * N));
        for (long n = 0; n <= (N <= 3 ? 20 : 12); ++n) CHECK_MESSAGE(f_direct(N, n) == Element::rational(f(Integer(n))), N, n);
    }
    CHECK_THROWS(poly_f(0));
}

TEST_CASE("iterated differences of f") {
    const auto f = poly_f(1);
    CHECK(delta(f, 1)(Integer(0)) == f(Integer(1)) - f(Integer(0)));
    CHECK(delta_iter(f, 2, 1)(Integer(0)) == 16);
    CHECK(delta_iter(f, 2, 1)(Integer(2)) == 48);
    for (unsigned N = 1; N <= 3; ++N) {
        const auto fN = poly_f(N);
        for (long k = 0; k <= 5; ++k) {
            for (unsigned n = 0; n <= 2 * N + 1; ++n) {
                const auto d = delta_iter(fN, k, n);
                for (long x : {-3L, 0L, 2L, 7L}) CHECK(d(Integer(x)) == difference_by_binomial(fN, k, n, x));
            }
            const auto top = delta_iter(fN, k, 2 * N);
            CHECK(top.degree() <= 0);
            CHECK(top(Integer(0)) == leading_constant(N) * power(k, 2 * N));
            CHECK(delta_iter(fN, k, 2 * N + 1).degree() == -1);
        }
    }
    CHECK(leading_constant(1) == 8);
    CHECK(stated_constant(1) == 4);
    CHECK(leading_constant(2) == 384);
}

TEST_CASE("four_squares up to 10^4") {
    for (long n = 0; n <= 10000; ++n) {
        auto s = four_squares(n);
        CHECK(s[0] * s[0] + s[1] * s[1] + s[2] * s[2] + s[3] * s[3] == n);
        CHECK(s[0] >= s[1]);
        CHECK(s[1] >= s[2]);
        CHECK(s[2] >= s[3]);
        CHECK(s[3] >= 0);
    }
    auto big = four_squares(Integer("1234567890123"));
    CHECK(big[0] * big[0] + big[1] * big[1] + big[2] * big[2] + big[3] * big[3] == Integer("1234567890123"));
    CHECK_THROWS(four_squares(-1));
}

TEST_CASE("waring_g matches the brute-force maximum below 10^4") {
    const unsigned limit = 10000;
    for (unsigned k : {2u, 3u, 4u}) {
        const auto best = min_power_counts(k, limit);
        const unsigned worst = *std::max_element(best.begin(), best.end());
        const auto g = waring_g(k);
        CHECK(g.condition_verified);
        CHECK(g.g_value == worst);
        for (unsigned n = 0; n <= 2000; ++n) {
            const auto parts = waring_decompose(n, k);
            Integer sum = 0;
            for (const auto& b : parts) sum += power(b, k);
            CHECK(sum == n);
            if (k > 2) CHECK(parts.size() == best[n]);
            CHECK(parts.size() <= g.g_value);
        }
    }
    const auto cubes = min_power_counts(3, limit);
    CHECK(cubes[23] == 9);
    CHECK(cubes[239] == 9);
    CHECK(min_power_counts(4, limit)[79] == 19);

    const unsigned expected[] = {4, 9, 19, 37, 73, 143, 279, 548};
    for (unsigned k = 2; k <= 9; ++k) CHECK(waring_g(k).g_value == expected[k - 2]);
    for (unsigned k = 2; k <= 40; ++k) CHECK(waring_g(k).condition_verified);
}

TEST_CASE("x0_witness examples") {
    auto f2 = FieldSpec::make({2}, false);
    auto eps = *is_unit(Element::rational(1, f2) + Element::sqrt_prime(2, f2));
    auto one = *is_unit(Element::rational(1));
    std::vector<UnitWitness> pool{one, eps};

    auto six = x0_witness(Element::rational(6), 1, pool);
    REQUIRE(six);
    CHECK(verify_chain(**six, 1));
    const auto& pair = std::get<UnitPair>((*six)->node);
    CHECK(pair.u1.pow(2) + pair.u2.pow(2) == Element::rational(6));

    auto two = x0_witness(Element::rational(2), 1, pool);
    REQUIRE(two);
    CHECK(std::get<UnitPair>((*two)->node).u1 == Element::rational(1));

    CHECK_FALSE(x0_witness(Element::rational(5), 1, pool));
    // (1 + sqrt2)^4 + (sqrt2 - 1)^4 = 34
    CHECK(x0_witness(Element::rational(34), 2, pool));

    auto sample = default_unit_sample();
    for (long v : {2L, 6L, 7L, 14L, 34L}) {
        auto p = x0_witness(Element::rational(v), 1, sample);
        auto s = x0_witness_serial(Element::rational(v), 1, sample);
        REQUIRE(p.has_value() == s.has_value());
        if (p) {
            CHECK(std::get<UnitPair>((*p)->node).u1 == std::get<UnitPair>((*s)->node).u1);
            CHECK(std::get<UnitPair>((*p)->node).u2 == std::get<UnitPair>((*s)->node).u2);
            CHECK(verify_chain(**p, 1));
        }
    }
}

TEST_CASE("difference chains certify the expected values") {
    auto leaf = f_value_chain(1, 3);
    CHECK(leaf->target == Element::rational(38));
    CHECK(verify_chain(*leaf, 1));

    auto one_level = difference_chain(1, 2, 1, 2);
    CHECK(one_level->target == Element::rational(48));
    CHECK(difference_chain(1, 2, 1, 0)->target == Element::rational(16));
    auto two_level = difference_chain(1, 2, 2);
    CHECK(two_level->target == Element::rational(32));
    CHECK(verify_chain(*two_level, 1));

    for (unsigned N = 1; N <= 3; ++N)
        for (long k = 0; k <= 3; ++k) {
            auto c = difference_chain(N, k, 2 * N);
            CHECK(c->target == Element::rational(leading_constant(N) * power(k, 2 * N)));
            CHECK(verify_chain(*c, N));
            std::set<const WitnessChain*> seen;
            const std::size_t L = 2 * N;
            if (k != 0) CHECK(distinct_nodes(*c, seen) == (L + 1) * (L + 2) / 2);
        }
}

TEST_CASE("verify_chain rejects tampered certificates") {
    auto good = difference_chain(1, 1, 2);
    REQUIRE(verify_chain(*good, 1));

    auto wrong_target = std::make_shared<WitnessChain>(*good);
    wrong_target->target = Element::rational(9);
    CHECK_FALSE(verify_chain(*wrong_target, 1));

    auto leaf = f_value_chain(1, 1);
    auto not_unit = std::make_shared<WitnessChain>(*leaf);
    std::get<UnitPair>(not_unit->node).u1 = Element::rational(2);
    CHECK_FALSE(verify_chain(*not_unit, 1));

    // right value, wrong exponent
    CHECK_FALSE(verify_chain(*leaf, 2));

    auto skipped = std::make_shared<WitnessChain>(*good);
    skipped->level = 3;
    CHECK_FALSE(verify_chain(*skipped, 1));

    auto kind = std::make_shared<WitnessChain>(*leaf);
    kind->level = 1;
    CHECK_THROWS_AS(verify_chain(*kind, 1), std::invalid_argument);

    auto dangling = std::make_shared<WitnessChain>(*good);
    std::get<Difference>(dangling->node).left = nullptr;
    CHECK_THROWS_AS(verify_chain(*dangling, 1), std::invalid_argument);

    auto w = *w_member(30, 1, 8);
    auto loose = std::make_shared<WitnessChain>(*w);
    std::get<WSum>(loose->node).remainder_bound = 1000;
    std::get<WSum>(loose->node).remainder = 30;
    std::get<WSum>(loose->node).terms.clear();
    CHECK_FALSE(verify_chain(*loose, 1));

    auto non_integral = std::make_shared<WitnessChain>(*w);
    non_integral->target = Element::rational(Rational(61, 2));
    CHECK_FALSE(verify_chain(*non_integral, 1));
}

TEST_CASE("w_member certifies every natural up to 100") {
    auto c30 = w_member(30, 1, 8);
    REQUIRE(c30);
    const auto& sum = std::get<WSum>((*c30)->node);
    CHECK(sum.remainder == 6);
    REQUIRE(sum.terms.size() == 4);
    std::vector<Element> parts;
    for (const auto& t : sum.terms) parts.push_back(t->target);
    CHECK(parts == std::vector<Element>{Element::rational(8), Element::rational(8), Element::rational(8),
                                        Element::rational(0)});
    for (long x = 0; x <= 100; ++x) {
        auto c = w_member(x, 1, leading_constant(1));
        REQUIRE_MESSAGE(c, x);
        CHECK((*c)->target == Element::rational(x));
        CHECK_MESSAGE(verify_chain(**c, 1), x);
    }
    for (long x : {0L, 383L, 384L, 1000L}) {
        auto c = w_member(x, 2, leading_constant(2));
        REQUIRE(c);
        CHECK(std::get<WSum>((*c)->node).terms.size() == 19);
        CHECK(verify_chain(**c, 2));
    }
    // the smaller constant only reaches x < C
    CHECK(w_member(3, 1, stated_constant(1)));
    CHECK_FALSE(w_member(30, 1, stated_constant(1)));
    CHECK_FALSE(w_member(30, 1, 16));
    CHECK_THROWS(w_member(-1, 1, 8));
}
