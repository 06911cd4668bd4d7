#include "mqw/rational.hpp"

#include <stdexcept>

namespace mqw {

Integer isqrt(const Integer& n) {
    if (n < 0) throw std::domain_error("isqrt of negative integer " + n.get_str());
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool is_perfect_square(const Integer& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<Integer, unsigned>> factor(const Integer& n) {
    if (n <= 0) throw std::domain_error("factor expects a positive integer, got " + n.get_str());
    std::vector<std::pair<Integer, unsigned>> out;
    Integer m = n;
    auto strip = [&](const Integer& d) {
        unsigned e = 0;
        while (mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t())) {
            m /= d;
            ++e;
        }
        if (e) out.emplace_back(d, e);
    };
    strip(2);
    for (Integer d = 3; d * d <= m; d += 2) strip(d);
    if (m > 1) out.emplace_back(m, 1);
    return out;
}

SquarefreeSplit split_square(const Integer& n) {
    SquarefreeSplit s{1, 1};
    for (const auto& [p, e] : factor(n)) {
        s.root *= power(p, e / 2);
        if (e % 2) s.squarefree *= p;
    }
    return s;
}

bool is_squarefree(const Integer& n) {
    if (n <= 0) return false;
    for (const auto& pe : factor(n))
        if (pe.second > 1) return false;
    return true;
}

Integer factorial(unsigned n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Integer binomial(unsigned n, unsigned k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Integer power(const Integer& base, unsigned exponent) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

std::string to_fraction_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_display_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return to_fraction_string(q);
}

Integer parse_integer(std::string_view text) {
    std::string s(text);
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw std::invalid_argument("malformed integer '" + s + "'");
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("malformed integer '" + s + "'");
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s, 10);
}

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text));
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Integer floor_of(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Integer ceil_of(const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

}  // namespace mqw
