#include "mqw/enumerator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

namespace mqw {

namespace {

using Matrix = std::vector<std::vector<Rational>>;

/// Inverse by Gauss-Jordan elimination; nothing if singular.
std::optional<Matrix> invert(Matrix a) {
    const std::size_t n = a.size();
    Matrix inv(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return std::nullopt;
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        const Rational scale = 1 / a[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            a[col][j] *= scale;
            inv[col][j] *= scale;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const Rational f = a[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

bool singular(const Matrix& a) { return !invert(a).has_value(); }

/// Cheap floating-point rejection on order coordinates: true only when some
/// conjugate is outside [lower, upper] by far more than the rounding error.
class CoarseFilter {
public:
    CoarseFilter(const BoxQuery& q) : lower_(q.lower.get_d()), upper_(q.upper.get_d()) {
        const FieldSpec& f = q.order.field();
        n_ = f.degree();
        terms_.assign(n_, std::vector<double>(n_));
        for (std::size_t j = 0; j < n_; ++j)
            for (Mask a = 0; a < n_; ++a)
                terms_[j][a] = q.order.basis()[j].coefficient(a).get_d() * std::sqrt(f.radicand(a).get_d());
    }

    bool clearly_outside(std::span<const long> coords, std::vector<double>& scratch) const {
        scratch.assign(n_, 0.0);
        for (std::size_t j = 0; j < n_; ++j)
            if (coords[j] != 0)
                for (Mask a = 0; a < n_; ++a) scratch[a] += static_cast<double>(coords[j]) * terms_[j][a];
        double magnitude = 0;
        for (double t : scratch) magnitude += std::abs(t);
        const double slack = 1e-9 * (1 + magnitude + std::abs(lower_) + std::abs(upper_));
        for (Mask s = 0; s < n_; ++s) {
            double v = 0;
            for (Mask m = 0; m < n_; ++m) v += (std::popcount(m & s) & 1) ? -scratch[m] : scratch[m];
            if (v < lower_ - slack || v > upper_ + slack) return true;
        }
        return false;
    }

private:
    double lower_, upper_;
    std::size_t n_ = 0;
    std::vector<std::vector<double>> terms_;
};

struct Hit {
    std::vector<long> coords;
    Element value;
};

void sort_hits(std::vector<Hit>& hits) {
    std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.coords < b.coords; });
}

std::vector<Element> values_of(std::vector<Hit>&& hits) {
    std::vector<Element> out;
    out.reserve(hits.size());
    for (auto& h : hits) out.push_back(std::move(h.value));
    return out;
}

std::optional<Element> accept(const BoxQuery& q, const CoarseFilter& filter, std::span<const long> coords,
                              std::vector<double>& scratch) {
    if (filter.clearly_outside(coords, scratch)) return std::nullopt;
    Element x = q.order.combine(coords);
    if (!is_totally_between(x, q.lower, q.upper)) return std::nullopt;
    return x;
}

}  // namespace

OrderBasis OrderBasis::make(const FieldSpec& field, std::vector<Element> basis) {
    if (field.imaginary()) throw std::invalid_argument("order bases are defined over real fields only");
    const std::size_t n = field.degree();
    if (basis.size() != n) throw std::invalid_argument("order basis must have exactly degree elements");
    for (auto& b : basis) {
        b = b.lift(field);
        if (!b.is_integral()) throw std::invalid_argument("order basis element " + b.to_string() + " is not integral");
    }
    Matrix gram(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gram[i][j] = (basis[i] * basis[j]).trace();
    if (singular(gram)) throw std::invalid_argument("order basis is linearly dependent (singular trace form)");

    Matrix coords(n, std::vector<Rational>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t j = 0; j < n; ++j) coords[a][j] = basis[j].coefficient(static_cast<Mask>(a));
    OrderBasis ob;
    ob.field_ = field;
    ob.basis_ = std::move(basis);
    ob.to_order_ = *invert(coords);
    return ob;
}

Element OrderBasis::combine(std::span<const long> coords) const {
    Element x(field_);
    for (std::size_t j = 0; j < basis_.size(); ++j)
        if (coords[j] != 0) x += Element::rational(coords[j], field_) * basis_[j];
    return x;
}

OrderBasis default_order(const FieldSpec& field, bool maximal) {
    if (field.imaginary()) throw std::invalid_argument("default_order needs a real field, got " + field.to_string());
    if (maximal && field.primes().size() == 1 && field.primes()[0] % 4 == 1) {
        const std::int64_t p = field.primes()[0];
        Element one = Element::rational(1, field);
        Element omega = (one + Element::sqrt_prime(p, field)) * Element::rational(Rational(1, 2), field);
        return OrderBasis::make(field, {one, omega});
    }
    if (maximal && field.primes().size() > 1)
        throw std::invalid_argument("no classical maximal-order basis is available for " + field.to_string());
    std::vector<Element> basis;
    for (Mask m = 0; m < field.degree(); ++m) basis.push_back(Element::basis(field, field.label(m)));
    return OrderBasis::make(field, std::move(basis));
}

bool is_totally_between(const Element& x, const Rational& lower, const Rational& upper) {
    if (x.has_imaginary_part()) return false;
    const Element real = *x.restrict_to(x.field().real_subfield());
    const Element lo = Element::rational(lower), hi = Element::rational(upper);
    for (const auto& s : SignVector::all(real.field())) {
        const Element c = real.conjugate(s);
        if (real_sign(c - lo) <= 0 || real_sign(hi - c) <= 0) return false;
    }
    return true;
}

std::size_t CoordinateBox::volume() const {
    std::size_t v = 1;
    for (std::size_t j = 0; j < lo.size(); ++j) {
        if (hi[j] < lo[j]) return 0;
        v *= static_cast<std::size_t>(hi[j] - lo[j] + 1);
    }
    return v;
}

CoordinateBox coordinate_bounds(const BoxQuery& q) {
    if (!(q.lower < q.upper)) throw std::invalid_argument("box query needs lower < upper");
    const FieldSpec& f = q.order.field();
    const std::size_t n = f.degree();
    // Each conjugate is sum_A chi_s(A) c_A sqrt(m_A). Averaging with the
    // characters gives c_0 in (lower, upper) and |c_A| sqrt(m_A) < (upper - lower)/2.
    std::vector<Interval> radical(n);
    radical[0] = {q.lower, q.upper};
    const Rational half_width = (q.upper - q.lower) / 2;
    for (Mask a = 1; a < n; ++a) {
        const Rational r = half_width / Rational(isqrt(f.radicand(a)));
        radical[a] = {-r, r};
    }
    CoordinateBox box;
    const auto& t = q.order.radical_to_order();
    for (std::size_t j = 0; j < n; ++j) {
        Interval z = Interval::point(0);
        for (Mask a = 0; a < n; ++a)
            if (t[j][a] != 0) z = z + t[j][a] * radical[a];
        box.lo.push_back(ceil_of(z.lo).get_si());
        box.hi.push_back(floor_of(z.hi).get_si());
    }
    return box;
}

std::vector<Element> totally_bounded_box(const BoxQuery& q) {
    const CoordinateBox box = coordinate_bounds(q);
    const std::size_t volume = box.volume();
    const std::size_t rank = box.lo.size();
    if (volume > (std::size_t{1} << 32)) throw std::invalid_argument("coordinate box too large to scan");
    const CoarseFilter filter(q);

    std::vector<Hit> hits;
    const auto total = static_cast<long long>(volume);
#pragma omp parallel
    {
        std::vector<Hit> local;
        std::vector<long> coords(rank);
        std::vector<double> scratch;
#pragma omp for schedule(dynamic, 256) nowait
        for (long long idx = 0; idx < total; ++idx) {
            auto rem = static_cast<std::size_t>(idx);
            for (std::size_t j = rank; j-- > 0;) {
                const auto span = static_cast<std::size_t>(box.hi[j] - box.lo[j] + 1);
                coords[j] = box.lo[j] + static_cast<long>(rem % span);
                rem /= span;
            }
            if (auto x = accept(q, filter, coords, scratch)) local.push_back({coords, std::move(*x)});
        }
#pragma omp critical(mqw_box_merge)
        hits.insert(hits.end(), std::make_move_iterator(local.begin()), std::make_move_iterator(local.end()));
    }
    sort_hits(hits);
    return values_of(std::move(hits));
}

std::vector<Element> totally_bounded_box_reference(const BoxQuery& q) {
    if (!(q.lower < q.upper)) throw std::invalid_argument("box query needs lower < upper");
    const Rational t = std::max(abs(q.lower), abs(q.upper));
    const std::size_t rank = q.order.rank();
    const long bound = ceil_of(t * Rational(static_cast<unsigned long>(q.order.field().degree()))).get_si();
    const CoarseFilter filter(q);

    std::vector<Hit> hits;
    std::vector<long> coords(rank, -bound);
    std::vector<double> scratch;
    for (;;) {
        if (auto x = accept(q, filter, coords, scratch)) hits.push_back({coords, std::move(*x)});
        std::size_t j = rank;
        while (j > 0 && coords[j - 1] == bound) coords[--j] = -bound;
        if (j == 0) break;
        ++coords[j - 1];
    }
    return values_of(std::move(hits));
}

bool is_galois_closed(std::span<const Element> set) {
    for (const auto& x : set)
        for (const auto& s : SignVector::all(x.field()))
            if (std::find(set.begin(), set.end(), x.conjugate(s)) == set.end()) return false;
    return true;
}

std::vector<Element> natural_range(long lo, long hi) {
    std::vector<Element> out;
    for (long v = lo; v <= hi; ++v) out.push_back(Element::integer(v));
    return out;
}

namespace {

std::optional<Integer> as_natural(const Element& x) {
    auto q = x.as_rational();
    if (!q || q->get_den() != 1 || *q < 0) return std::nullopt;
    return q->get_num();
}

/// Four squares of certified domain values summing to n, largest first.
std::optional<std::array<Integer, 4>> certified_four_squares(const Integer& n, const std::vector<Integer>& certified) {
    auto in_domain = [&](const Integer& v) { return std::binary_search(certified.begin(), certified.end(), v); };
    auto quick = four_squares(n);
    if (std::all_of(quick.begin(), quick.end(), in_domain)) return quick;
    const std::size_t m = certified.size();
    for (std::size_t a = m; a-- > 0;)
        for (std::size_t b = a + 1; b-- > 0;)
            for (std::size_t c = b + 1; c-- > 0;)
                for (std::size_t d = c + 1; d-- > 0;) {
                    const auto& A = certified[a];
                    const auto& B = certified[b];
                    const auto& C = certified[c];
                    const auto& D = certified[d];
                    if (A * A + B * B + C * C + D * D == n) return std::array<Integer, 4>{A, B, C, D};
                }
    return std::nullopt;
}

}  // namespace

std::vector<FamilyMember> family_set(const Integer& p, const Integer& q, unsigned N, std::span<const Element> pool,
                                     std::span<const Element> witness_domain) {
    // W-certified naturals from the witness domain
    const Integer C = leading_constant(N);
    std::vector<Integer> candidates;
    for (const auto& w : witness_domain)
        if (auto v = as_natural(w)) candidates.push_back(*v);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    std::vector<Integer> certified;
    for (const auto& v : candidates) {
        auto chain = w_member(v, N, C);
        if (chain && verify_chain(**chain, N)) certified.push_back(v);
    }

    std::vector<std::optional<FamilyMember>> found(pool.size());
    std::vector<char> violated(pool.size(), 0);
    const auto n = static_cast<long>(pool.size());
#pragma omp parallel for schedule(dynamic)
    for (long j = 0; j < n; ++j) {
        const Element px_el = Element::rational(p) * pool[j];
        auto px = as_natural(px_el);
        if (!px || *px == 0 || *px == q || *px > q) continue;
        auto s1 = certified_four_squares(*px, certified);
        auto s2 = s1 ? certified_four_squares(q - *px, certified) : std::nullopt;
        if (!s1 || !s2) continue;
        violated[j] = !is_totally_between(px_el, 0, q);
        found[j] = FamilyMember{pool[j], *px, *s1, *s2};
    }
    for (long j = 0; j < n; ++j)
        if (violated[j]) throw std::logic_error("family member " + pool[j].to_string() + " violates 0 << px << q");
    std::vector<FamilyMember> out;
    for (auto& f : found)
        if (f) out.push_back(std::move(*f));
    return out;
}

}  // namespace mqw
