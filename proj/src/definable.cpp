#include "mqw/definable.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace mqw {

IntPolynomial poly_f(unsigned N) {
    if (N == 0) throw std::invalid_argument("poly_f needs N >= 1");
    // (x + y)^(2N) + (x - y)^(2N) keeps the even powers of y = sqrt(x^2 + 1) twice.
    const IntPolynomial y2({1, 0, 1});
    IntPolynomial sum;
    for (unsigned i = 0; i <= N; ++i) {
        std::vector<Integer> mono(2 * (N - i) + 1, 0);
        mono.back() = binomial(2 * N, 2 * i);
        sum += IntPolynomial(std::move(mono)) * y2.pow(i);
    }
    return Integer(2) * sum;
}

IntPolynomial delta(const IntPolynomial& f, const Integer& k) { return f.shifted(k) - f; }

IntPolynomial delta_iter(const IntPolynomial& f, const Integer& k, unsigned n) {
    IntPolynomial g = f;
    for (unsigned j = 0; j < n; ++j) g = delta(g, k);
    return g;
}

Integer leading_constant(unsigned N) { return factorial(2 * N) * power(2, 2 * N); }

Integer stated_constant(unsigned N) { return 2 * factorial(2 * N); }

std::array<Integer, 4> four_squares(const Integer& n) {
    if (n < 0) throw std::invalid_argument("four_squares of a negative integer");
    // Non-increasing search; every representation has a sorted form.
    for (Integer a = isqrt(n); a >= 0; --a) {
        const Integer r1 = n - a * a;
        for (Integer b = std::min(a, isqrt(r1)); b >= 0; --b) {
            const Integer r2 = r1 - b * b;
            for (Integer c = std::min(b, isqrt(r2)); c >= 0; --c) {
                const Integer r3 = r2 - c * c;
                const Integer d = isqrt(r3);
                if (d * d == r3 && d <= c) return {a, b, c, d};
                if (2 * c * c < r2) break;
            }
            if (3 * b * b < r1) break;
        }
    }
    throw std::logic_error("Lagrange decomposition not found for " + n.get_str());
}

WaringParams waring_g(unsigned k) {
    if (k < 2) throw std::invalid_argument("waring_g needs k >= 2");
    const Integer two_k = power(2, k);
    const Integer three_k = power(3, k);
    const Integer q = three_k / two_k;
    const Integer r = three_k % two_k;
    return WaringParams{k, two_k + q - 2, r + q <= two_k};
}

std::vector<Integer> waring_decompose(const Integer& m, unsigned k) {
    if (m < 0) throw std::invalid_argument("waring_decompose of a negative integer");
    if (k < 2) throw std::invalid_argument("waring_decompose needs k >= 2");
    std::vector<Integer> out;
    if (k == 2) {
        for (const auto& a : four_squares(m))
            if (a != 0) out.push_back(a);
        return out;
    }
    if (m > 10'000'000) throw std::invalid_argument("waring_decompose is a desk-scale dynamic program (m <= 1e7)");
    const auto limit = m.get_ui();
    std::vector<unsigned long> powers;
    for (unsigned long b = 1;; ++b) {
        const Integer p = power(b, k);
        if (p > m) break;
        powers.push_back(p.get_ui());
    }
    std::vector<unsigned> best(limit + 1, ~0u), last(limit + 1, 0);
    best[0] = 0;
    for (unsigned long v = 1; v <= limit; ++v)
        for (std::size_t b = 0; b < powers.size() && powers[b] <= v; ++b)
            if (best[v - powers[b]] + 1 < best[v]) {
                best[v] = best[v - powers[b]] + 1;
                last[v] = static_cast<unsigned>(b + 1);
            }
    for (unsigned long v = limit; v > 0; v -= powers[last[v] - 1]) out.emplace_back(last[v]);
    std::sort(out.begin(), out.end(), [](const Integer& a, const Integer& b) { return a > b; });
    return out;
}

namespace {

std::vector<Element> candidate_units(std::span<const UnitWitness> pool) {
    std::vector<Element> out;
    for (const auto& u : pool) {
        out.push_back(u.u);
        if (!(u.inverse == u.u)) out.push_back(u.inverse);
    }
    return out;
}

bool sums_to(const Element& a, const Element& b, const Element& x) {
    auto f = common_field(a.field(), b.field());
    if (!f) return false;
    const Element s = a.lift(*f) + b.lift(*f);
    return common_field(s.field(), x.field()) && s == x;
}

ChainPtr unit_pair_chain(const Element& x, const Element& u1, const Element& u2) {
    return std::make_shared<const WitnessChain>(WitnessChain{x, 0, UnitPair{u1, u2}});
}

}  // namespace

std::optional<ChainPtr> x0_witness(const Element& x, unsigned N, std::span<const UnitWitness> unit_pool) {
    const auto cands = candidate_units(unit_pool);
    const auto n = static_cast<long>(cands.size());
    std::vector<Element> powers(cands.size());
#pragma omp parallel for schedule(dynamic)
    for (long j = 0; j < n; ++j) powers[j] = cands[j].pow(2L * N);

    std::vector<long> partner(cands.size(), -1);
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i)
        for (long j = i; j < n; ++j)
            if (sums_to(powers[i], powers[j], x)) {
                partner[i] = j;
                break;
            }
    for (long i = 0; i < n; ++i)
        if (partner[i] >= 0) return unit_pair_chain(x, cands[i], cands[partner[i]]);
    return std::nullopt;
}

std::optional<ChainPtr> x0_witness_serial(const Element& x, unsigned N, std::span<const UnitWitness> unit_pool) {
    const auto cands = candidate_units(unit_pool);
    std::vector<Element> powers;
    for (const auto& c : cands) powers.push_back(c.pow(2L * N));
    for (std::size_t i = 0; i < cands.size(); ++i)
        for (std::size_t j = i; j < cands.size(); ++j)
            if (sums_to(powers[i], powers[j], x)) return unit_pair_chain(x, cands[i], cands[j]);
    return std::nullopt;
}

ChainPtr f_value_chain(unsigned N, const Integer& n) {
    const Integer radicand = n * n + 1;
    const FieldSpec field = field_for_radicand(radicand);
    const Element u = Element::rational(n, field) + sqrt_nat(radicand, field);
    const Element target = Element::rational(poly_f(N)(n));
    return unit_pair_chain(target, u, u.inverse());
}

ChainPtr difference_chain(unsigned N, const Integer& k, unsigned levels, const Integer& start) {
    std::map<std::pair<unsigned, Integer>, ChainPtr> memo;
    auto node = [&](auto&& self, unsigned level, const Integer& x) -> ChainPtr {
        auto key = std::make_pair(level, x);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        ChainPtr out;
        if (level == 0) {
            out = f_value_chain(N, x);
        } else {
            ChainPtr left = self(self, level - 1, x + k);
            ChainPtr right = self(self, level - 1, x);
            out = std::make_shared<const WitnessChain>(
                WitnessChain{left->target - right->target, static_cast<int>(level), Difference{left, right}});
        }
        memo.emplace(key, out);
        return out;
    };
    return node(node, levels, start);
}

namespace {

class ChainVerifier {
public:
    explicit ChainVerifier(unsigned N) : N_(N) {}

    bool operator()(const WitnessChain& c) {
        if (auto it = memo_.find(&c); it != memo_.end()) return it->second;
        const bool ok = in_ring_of_integers(c.target) && check(c);
        memo_.emplace(&c, ok);
        return ok;
    }

private:
    static bool in_ring_of_integers(const Element& x) { return !x.has_imaginary_part() && x.is_integral(); }

    static bool equal_values(const Element& a, const Element& b) {
        return common_field(a.field(), b.field()) && a == b;
    }

    bool check(const WitnessChain& c) {
        if (c.level == WitnessChain::kW) {
            const auto* w = std::get_if<WSum>(&c.node);
            if (!w) throw std::invalid_argument("W-level chain without a sum node");
            if (w->terms.size() > waring_g(2 * N_).g_value) return false;
            if (w->remainder < 0 || w->remainder > w->remainder_bound) return false;
            if (w->remainder_bound > leading_constant(N_)) return false;
            Element sum = Element::rational(w->remainder);
            for (const auto& t : w->terms) {
                if (!t) throw std::invalid_argument("null term in W chain");
                if (t->level != static_cast<int>(2 * N_) || !(*this)(*t)) return false;
                if (!common_field(sum.field(), t->target.field())) return false;
                sum += t->target;
            }
            return equal_values(sum, c.target);
        }
        if (c.level < 0) throw std::invalid_argument("negative chain level");
        if (c.level == 0) {
            const auto* p = std::get_if<UnitPair>(&c.node);
            if (!p) throw std::invalid_argument("level-0 chain without a unit pair");
            if (!is_unit(p->u1) || !is_unit(p->u2)) return false;
            return sums_to(p->u1.pow(2L * N_), p->u2.pow(2L * N_), c.target);
        }
        const auto* d = std::get_if<Difference>(&c.node);
        if (!d) throw std::invalid_argument("level-" + std::to_string(c.level) + " chain without a difference node");
        if (!d->left || !d->right) throw std::invalid_argument("difference node with a missing child");
        if (d->left->level != c.level - 1 || d->right->level != c.level - 1) return false;
        if (!(*this)(*d->left) || !(*this)(*d->right)) return false;
        if (!common_field(d->left->target.field(), d->right->target.field())) return false;
        return equal_values(d->left->target - d->right->target, c.target);
    }

    unsigned N_;
    std::unordered_map<const WitnessChain*, bool> memo_;
};

}  // namespace

bool verify_chain(const WitnessChain& chain, unsigned N) { return ChainVerifier(N)(chain); }

std::optional<ChainPtr> w_member(const Integer& x, unsigned N, const Integer& C) {
    if (x < 0) throw std::invalid_argument("w_member expects a natural number");
    if (C <= 0) throw std::invalid_argument("w_member needs a positive constant C");
    const unsigned k = 2 * N;
    const Integer m = x / C;
    const Integer remainder = x % C;
    const auto bases = waring_decompose(m, k);
    const auto g = waring_g(k).g_value;
    if (bases.size() > g) return std::nullopt;

    std::map<Integer, ChainPtr> by_base;
    auto term_for = [&](const Integer& base) -> std::optional<ChainPtr> {
        auto it = by_base.find(base);
        if (it == by_base.end()) it = by_base.emplace(base, difference_chain(N, base, k)).first;
        if (!(it->second->target == Element::rational(C * power(base, k)))) return std::nullopt;
        return it->second;
    };

    WSum sum;
    sum.remainder = remainder;
    sum.remainder_bound = C;
    for (const auto& b : bases) {
        auto t = term_for(b);
        if (!t) return std::nullopt;
        sum.terms.push_back(*t);
    }
    while (sum.terms.size() < g) sum.terms.push_back(*term_for(0));
    return std::make_shared<const WitnessChain>(
        WitnessChain{Element::rational(x), WitnessChain::kW, std::move(sum)});
}

}  // namespace mqw
