#include "mqw/units.hpp"

#include <doctest.h>

#include <numeric>

using namespace mqw;

namespace {

// Least y >= 1 with d y^2 +- 1 a perfect square, by exhaustive scan.
PellSolution pell_oracle(long d) {
    for (long y = 1; y <= 1000; ++y) {
        Integer dy2 = Integer(d) * y * y;
        if (is_perfect_square(dy2 - 1)) return {d, isqrt(dy2 - 1), y, -1};
        if (is_perfect_square(dy2 + 1)) return {d, isqrt(dy2 + 1), y, 1};
    }
    FAIL("no Pell solution below y = 1000");
    return {};
}

Element one(const FieldSpec& f) { return Element::rational(1, f); }

}  // namespace

TEST_CASE("pell_fundamental matches the brute-force least solution") {
    auto s2 = pell_fundamental(2);
    CHECK(s2.x == 1);
    CHECK(s2.y == 1);
    CHECK(s2.norm_sign == -1);
    auto s3 = pell_fundamental(3);
    CHECK(s3.x == 2);
    CHECK(s3.y == 1);
    CHECK(s3.norm_sign == 1);
    auto s5 = pell_fundamental(5);
    CHECK(s5.x == 2);
    CHECK(s5.norm_sign == -1);

    for (long d : {2, 3, 5, 6, 7, 8, 10, 11, 12, 13, 15, 30, 31}) {
        auto got = pell_fundamental(d);
        auto want = pell_oracle(d);
        CHECK_MESSAGE(got.x == want.x, d);
        CHECK_MESSAGE(got.y == want.y, d);
        CHECK_MESSAGE(got.norm_sign == want.norm_sign, d);
        CHECK(got.x * got.x - got.d * got.y * got.y == got.norm_sign);
        auto u = pell_unit(got);
        // over Q(sqrt p : p | d) the norm is the quadratic norm raised to degree/2
        const bool odd_power = u.field().degree() == 2;
        CHECK_MESSAGE(u.norm() == (odd_power ? got.norm_sign : 1), d);
    }
    CHECK_THROWS_AS(pell_fundamental(9), std::invalid_argument);
    CHECK_THROWS_AS(pell_fundamental(1), std::invalid_argument);
}

TEST_CASE("roots_of_unity finds N = 24 over Q(i, sqrt2, sqrt3)") {
    auto r = roots_of_unity(200);
    CHECK(r.order_N == 24);
    CHECK(r.roots.size() == 24);
    CHECK(r.host_field == FieldSpec::make({2, 3}, true));

    // exponent oracle: a^2 = 1 mod m for all units a, over m <= 1000
    std::vector<unsigned> admissible;
    for (unsigned m = 1; m <= 1000; ++m) {
        bool ok = true;
        for (unsigned a = 1; a < m && ok; ++a)
            if (std::gcd(a, m) == 1 && (a * a) % m != 1) ok = false;
        if (ok) admissible.push_back(m);
    }
    CHECK(admissible == std::vector<unsigned>{1, 2, 3, 4, 6, 8, 12, 24});
    for (unsigned m : admissible) CHECK(admits_primitive_root(m));
    std::vector<unsigned> upto200(admissible.begin(), admissible.end());
    CHECK(r.admissible_orders == upto200);

    const auto f = r.host_field;
    const auto i = Element::imaginary_unit(f);
    CHECK(std::find(r.roots.begin(), r.roots.end(), i) != r.roots.end());
    CHECK(i * i == Element::rational(-1));
    auto z8 = primitive_root(8);
    auto sq = z8;
    for (int k = 0; k < 3; ++k) sq = sq * sq;
    CHECK(sq == one(f));
    CHECK_FALSE(z8.pow(4) == one(f));
    CHECK_THROWS_AS(roots_of_unity(10), std::invalid_argument);
}

TEST_CASE("root group: orders, closure, inverses") {
    auto r = roots_of_unity(200);
    const auto f = r.host_field;
    for (std::size_t k = 0; k < r.roots.size(); ++k) {
        const auto& w = r.roots[k];
        CHECK(w.pow(r.order_N) == one(f));
        for (unsigned m = 1; m < r.orders[k]; ++m)
            if (r.orders[k] % m == 0) CHECK_FALSE(w.pow(m) == one(f));
        CHECK(w.pow(r.orders[k]) == one(f));
        CHECK(std::find(r.roots.begin(), r.roots.end(), w.inverse()) != r.roots.end());
        for (const auto& v : r.roots) CHECK(std::find(r.roots.begin(), r.roots.end(), w * v) != r.roots.end());
        for (std::size_t j = 0; j < k; ++j) CHECK_FALSE(r.roots[j] == w);
    }
    // the closed forms agree with powers of zeta_24
    for (unsigned m : {1u, 2u, 3u, 4u, 6u, 8u, 12u, 24u}) CHECK(primitive_root(m) == r.roots[(24 / m) % 24]);
}

TEST_CASE("rou_boundary_check reports strict and boundary roots") {
    auto r = roots_of_unity(200);
    auto recs = rou_boundary_check(r);
    REQUIRE(recs.size() == 24);
    for (const auto& rec : recs) {
        CHECK(rec.real);
        CHECK(rec.in_closed);
    }
    // w = i
    CHECK(recs[6].t == Element::rational(2));
    CHECK(recs[6].strict);
    // w = -1
    CHECK(recs[12].t == Element::rational(0));
    CHECK_FALSE(recs[12].strict);
    // w = 1 gives 4
    CHECK(recs[0].t == Element::rational(4));
    CHECK_FALSE(recs[0].strict);
    // w = zeta_6 gives 3
    CHECK(recs[4].t == Element::rational(3));
    CHECK(recs[4].strict);
    int boundary = 0;
    for (const auto& rec : recs) boundary += rec.strict ? 0 : 1;
    CHECK(boundary == 2);
}

TEST_CASE("is_unit") {
    auto f2 = FieldSpec::make({2}, false);
    auto eps = one(f2) + Element::sqrt_prime(2, f2);
    auto w = is_unit(eps);
    REQUIRE(w);
    CHECK(w->norm_value == -1);
    CHECK(w->u * w->inverse == one(f2));
    CHECK(w->inverse.is_integral());

    CHECK_FALSE(is_unit(Element::rational(2)));
    CHECK_FALSE(is_unit(Element::rational(Rational(1, 2))));
    CHECK_FALSE(is_unit(Element(f2)));

    auto prod = primitive_root(8) * eps;
    auto pw = is_unit(prod);
    REQUIRE(pw);
    CHECK(pw->u * pw->inverse == one(prod.field()));
}

TEST_CASE("unit_power_in_K examples") {
    auto r = roots_of_unity(200);
    const auto f = r.host_field;
    auto wi = is_unit(Element::imaginary_unit(f));
    REQUIRE(wi);
    auto rec = unit_power_in_K(*wi, 24);
    CHECK(rec.power == one(f));
    CHECK(rec.passed());

    auto eps = one(f) + Element::sqrt_prime(2, f);
    auto wu = is_unit(primitive_root(8) * eps);
    REQUIRE(wu);
    auto rec2 = unit_power_in_K(*wu, 24);
    CHECK(rec2.passed());
    CHECK(rec2.power == eps.pow(48));

    auto f2 = FieldSpec::make({2}, false);
    auto wr = is_unit(one(f2) + Element::sqrt_prime(2, f2));
    REQUIRE(wr);
    for (unsigned N : {1u, 2u, 24u}) CHECK(unit_power_in_K(*wr, N).passed());

    // N = 1 is not enough for zeta_8: zeta_8^2 = i
    auto z = is_unit(primitive_root(8));
    REQUIRE(z);
    CHECK_FALSE(unit_power_in_K(*z, 1).in_real_subfield);
}

TEST_CASE("hasse_square_decompose examples") {
    auto r = roots_of_unity(200);
    const auto f = r.host_field;
    auto f2 = FieldSpec::make({2}, false);
    auto eps = one(f2) + Element::sqrt_prime(2, f2);

    auto real = hasse_square_decompose(*is_unit(eps), r);
    REQUIRE(real);
    CHECK(real->zeta == one(f));
    CHECK(real->w == eps * eps);

    auto hi = hasse_square_decompose(*is_unit(Element::imaginary_unit(f)), r);
    REQUIRE(hi);
    CHECK(hi->zeta == Element::rational(-1));
    CHECK(hi->w == Element::rational(1));

    auto hz = hasse_square_decompose(*is_unit(primitive_root(8) * eps.lift(f)), r);
    REQUIRE(hz);
    CHECK(hz->zeta == Element::imaginary_unit(f));
    CHECK(hz->w == eps * eps);
    // exhaustive: only zeta = +-i make u^2 / zeta real
    int real_quotients = 0;
    auto u2 = (primitive_root(8) * eps.lift(f)).pow(2);
    for (const auto& z : r.roots)
        if (!(u2 / z).has_imaginary_part()) ++real_quotients;
    CHECK(real_quotients == 2);
}

TEST_CASE("unit lemmas hold on the deterministic samples") {
    auto r = roots_of_unity(200);
    auto sample = default_unit_sample();
    REQUIRE(sample.size() == 50);
    for (const auto& u : sample) {
        CHECK(u.u * u.inverse == one(u.u.field()));
        CHECK(u.u.is_integral());
    }
    auto par = audit_unit_powers(sample, r.order_N);
    auto ser = audit_unit_powers_serial(sample, r.order_N);
    for (std::size_t j = 0; j < sample.size(); ++j) {
        CHECK(par[j].passed());
        CHECK(par[j].power == ser[j].power);
    }
    auto hs = audit_hasse(sample, r);
    for (std::size_t j = 0; j < sample.size(); ++j) {
        REQUIRE(hs[j]);
        CHECK(sample[j].u * sample[j].u == hs[j]->zeta * hs[j]->w);
    }

    // wider radicand list over Q(i, sqrt2, sqrt3, sqrt5, sqrt7)
    static const long wide[] = {2, 3, 5, 6, 7, 10, 15, 30};
    auto big = unit_sample(12, wide);
    CHECK(big.front().u.field() == FieldSpec::make({2, 3, 5, 7}, true));
    for (const auto& rec : audit_unit_powers(big, r.order_N)) CHECK(rec.passed());
    for (const auto& h : audit_hasse(big, r)) CHECK(h.has_value());
}
