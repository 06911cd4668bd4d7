#include "mqw/units.hpp"

#include <numeric>
#include <stdexcept>

namespace mqw {

PellSolution pell_fundamental(const Integer& d) {
    if (d < 2 || is_perfect_square(d))
        throw std::invalid_argument("Pell equation needs a nonsquare d >= 2, got " + d.get_str());
    const Integer a0 = isqrt(d);
    Integer m = 0, den = 1, a = a0;
    Integer h1 = 1, h2 = 0, k1 = 0, k2 = 1;
    for (;;) {
        Integer h = a * h1 + h2;
        Integer k = a * k1 + k2;
        Integer v = h * h - d * k * k;
        if (v == 1 || v == -1) return PellSolution{d, h, k, v == 1 ? 1 : -1};
        h2 = h1, h1 = h;
        k2 = k1, k1 = k;
        m = den * a - m;
        den = (d - m * m) / den;
        a = (a0 + m) / den;
    }
}

Element pell_unit(const PellSolution& s) { return pell_unit(s, field_for_radicand(s.d)); }

Element pell_unit(const PellSolution& s, const FieldSpec& field) {
    return Element::rational(s.x, field) + Element::rational(s.y, field) * sqrt_nat(s.d, field);
}

bool admits_primitive_root(unsigned m) {
    for (unsigned a = 1; a < m; ++a)
        if (std::gcd(a, m) == 1 && (static_cast<unsigned long>(a) * a) % m != 1 % m) return false;
    return true;
}

FieldSpec roots_host_field() { return FieldSpec::make({2, 3}, true); }

Element primitive_root(unsigned m) {
    const FieldSpec f = roots_host_field();
    const Element one = Element::rational(1, f);
    const Element i = Element::imaginary_unit(f);
    const Element r2 = Element::sqrt_prime(2, f), r3 = Element::sqrt_prime(3, f);
    const Element r6 = r2 * r3;
    auto q = [&](long a, long b) { return Element::rational(Rational(a, b), f); };
    switch (m) {
        case 1: return one;
        case 2: return -one;
        case 3: return q(-1, 2) + q(1, 2) * r3 * i;
        case 4: return i;
        case 6: return q(1, 2) + q(1, 2) * r3 * i;
        case 8: return q(1, 2) * r2 * (one + i);
        case 12: return q(1, 2) * r3 + q(1, 2) * i;
        case 24: return q(1, 4) * (r6 + r2) + q(1, 4) * (r6 - r2) * i;
        default: throw std::invalid_argument("no closed form for a primitive " + std::to_string(m) + "-th root");
    }
}

RootsOfUnityReport roots_of_unity(unsigned bound) {
    if (bound < 24) throw std::invalid_argument("roots_of_unity needs a search bound >= 24");
    RootsOfUnityReport r;
    r.host_field = roots_host_field();
    unsigned lcm = 1;
    for (unsigned m = 1; m <= bound; ++m)
        if (admits_primitive_root(m)) {
            r.admissible_orders.push_back(m);
            lcm = std::lcm(lcm, m);
        }
    if (24 % lcm != 0) throw std::logic_error("admissible orders exceed the closed-form table");
    r.order_N = lcm;
    const Element zeta = primitive_root(lcm);
    Element w = Element::rational(1, r.host_field);
    for (unsigned k = 0; k < lcm; ++k) {
        r.roots.push_back(w);
        r.orders.push_back(lcm / std::gcd(k, lcm));
        w *= zeta;
    }
    return r;
}

namespace {

/// sign of every conjugate of a real element relative to the bounds lo, hi
struct ConjugateRange {
    bool closed = true, strict = true;
};

ConjugateRange conjugate_range(const Element& t, const Rational& lo, const Rational& hi) {
    ConjugateRange out;
    for (const auto& s : SignVector::all(t.field())) {
        const Element c = t.conjugate(s);
        const int below = real_sign(c - Element::rational(lo));
        const int above = real_sign(Element::rational(hi) - c);
        if (below < 0 || above < 0) out.closed = false;
        if (below <= 0 || above <= 0) out.strict = false;
    }
    return out;
}

}  // namespace

std::vector<BoundaryRecord> rou_boundary_check(const RootsOfUnityReport& report) {
    std::vector<BoundaryRecord> out;
    for (const auto& w : report.roots) {
        BoundaryRecord rec;
        rec.root = w;
        rec.t = Element::rational(2) + w + w.inverse();
        rec.real = !rec.t.has_imaginary_part();
        if (rec.real) {
            const Element t = *rec.t.restrict_to(rec.t.field().real_subfield());
            const auto range = conjugate_range(t, 0, 4);
            rec.in_closed = range.closed;
            rec.strict = range.strict;
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::optional<UnitWitness> is_unit(const Element& x) {
    if (x.is_zero() || !x.is_integral()) return std::nullopt;
    const Rational n = x.norm();
    if (n != 1 && n != -1) return std::nullopt;
    return UnitWitness{x, x.inverse(), n == 1 ? 1 : -1};
}

UnitPowerRecord unit_power_in_K(const UnitWitness& u, unsigned N) {
    UnitPowerRecord rec;
    rec.unit = u.u;
    rec.N = N;
    rec.power = u.u.pow(2L * N);
    auto real = rec.power.restrict_to(rec.power.field().real_subfield());
    rec.in_real_subfield = real.has_value();
    rec.is_unit = real && is_unit(*real).has_value();
    return rec;
}

std::optional<HasseFactorization> hasse_square_decompose(const UnitWitness& u, const RootsOfUnityReport& roots) {
    const FieldSpec work = compositum(u.u.field(), roots.host_field);
    const Element square = u.u.lift(work) * u.u.lift(work);
    const unsigned N = roots.order_N;
    std::optional<HasseFactorization> fallback;
    for (unsigned k = 0; k < N; ++k) {
        const Element w = square * roots.roots[(N - k) % N].lift(work);
        auto real = w.restrict_to(work.real_subfield());
        if (!real || !is_unit(*real)) continue;
        HasseFactorization h{roots.roots[k], k, *real};
        if (real_sign(*real) > 0) return h;
        if (!fallback) fallback = std::move(h);
    }
    return fallback;
}

std::vector<UnitWitness> unit_sample(std::size_t count, std::span<const long> pell_radicands) {
    if (pell_radicands.empty()) throw std::invalid_argument("unit_sample needs at least one Pell radicand");
    FieldSpec field = roots_host_field();
    for (long d : pell_radicands) field = compositum(field, field_for_radicand(d));

    std::vector<Element> eps, eps_inv;
    for (long d : pell_radicands) {
        const PellSolution s = pell_fundamental(d);
        eps.push_back(pell_unit(s, field));
        // (x + y sqrt d)^-1 = norm_sign * (x - y sqrt d)
        eps_inv.push_back(Element::rational(s.norm_sign, field) *
                          (Element::rational(s.x, field) - Element::rational(s.y, field) * sqrt_nat(s.d, field)));
    }
    const Element zeta = primitive_root(24).lift(field);
    const Element zeta_inv = zeta.pow(23);
    const std::size_t nd = pell_radicands.size();

    std::vector<UnitWitness> out;
    out.reserve(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
        const long a = static_cast<long>((7 * idx) % 24);
        const std::size_t d1 = idx % nd;
        const std::size_t d2 = nd == 1 ? d1 : (d1 + 1 + (idx / nd) % (nd - 1)) % nd;
        const long b1 = static_cast<long>(idx % 7) - 3;
        const long b2 = static_cast<long>((idx / 7) % 7) - 3;
        auto pw = [](const Element& x, const Element& xi, long e) { return e >= 0 ? x.pow(e) : xi.pow(-e); };
        Element u = zeta.pow(a) * pw(eps[d1], eps_inv[d1], b1) * pw(eps[d2], eps_inv[d2], b2);
        Element inv = zeta_inv.pow(a) * pw(eps_inv[d1], eps[d1], b1) * pw(eps_inv[d2], eps[d2], b2);
        const Rational n = u.norm();
        out.push_back(UnitWitness{std::move(u), std::move(inv), n == 1 ? 1 : -1});
    }
    return out;
}

std::vector<UnitWitness> default_unit_sample() {
    static const long ds[] = {2, 3, 6};
    return unit_sample(50, ds);
}

std::vector<UnitPowerRecord> audit_unit_powers(std::span<const UnitWitness> sample, unsigned N) {
    std::vector<UnitPowerRecord> out(sample.size());
    const auto n = static_cast<long>(sample.size());
#pragma omp parallel for schedule(dynamic)
    for (long j = 0; j < n; ++j) out[j] = unit_power_in_K(sample[j], N);
    return out;
}

std::vector<UnitPowerRecord> audit_unit_powers_serial(std::span<const UnitWitness> sample, unsigned N) {
    std::vector<UnitPowerRecord> out;
    out.reserve(sample.size());
    for (const auto& u : sample) out.push_back(unit_power_in_K(u, N));
    return out;
}

std::vector<std::optional<HasseFactorization>> audit_hasse(std::span<const UnitWitness> sample,
                                                           const RootsOfUnityReport& roots) {
    std::vector<std::optional<HasseFactorization>> out(sample.size());
    const auto n = static_cast<long>(sample.size());
#pragma omp parallel for schedule(dynamic)
    for (long j = 0; j < n; ++j) out[j] = hasse_square_decompose(sample[j], roots);
    return out;
}

std::vector<std::optional<HasseFactorization>> audit_hasse_serial(std::span<const UnitWitness> sample,
                                                                  const RootsOfUnityReport& roots) {
    std::vector<std::optional<HasseFactorization>> out;
    out.reserve(sample.size());
    for (const auto& u : sample) out.push_back(hasse_square_decompose(u, roots));
    return out;
}

}  // namespace mqw
