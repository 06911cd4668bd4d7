#include "mqw/element.hpp"

#include <stdexcept>

namespace mqw {

namespace {

std::vector<Integer> radicand_table(const FieldSpec& f) {
    std::vector<Integer> r(f.degree());
    for (Mask m = 0; m < f.degree(); ++m) r[m] = f.radicand(m & f.real_bits());
    return r;
}

/// Multiplication-by-x matrix: column j holds the coordinates of x * b_j.
std::vector<std::vector<Rational>> multiplication_matrix(const Element& x) {
    const FieldSpec& f = x.field();
    const std::size_t n = f.degree();
    const auto rad = radicand_table(f);
    const Mask ib = f.i_bit();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n, 0));
    for (Mask a = 0; a < n; ++a) {
        const Rational& xa = x.coefficient(a);
        if (xa == 0) continue;
        for (Mask j = 0; j < n; ++j) {
            Rational v = xa * rad[a & j];
            if ((a & j & ib) != 0) v = -v;
            m[a ^ j][j] += v;
        }
    }
    return m;
}

/// Characteristic polynomial via reduction to upper Hessenberg form.
RatPolynomial hessenberg_char_poly(std::vector<std::vector<Rational>> h) {
    const std::size_t n = h.size();
    for (std::size_t m = 1; m + 1 < n; ++m) {
        std::size_t pivot = m;
        while (pivot < n && h[pivot][m - 1] == 0) ++pivot;
        if (pivot == n) continue;
        if (pivot != m) {
            std::swap(h[pivot], h[m]);
            for (auto& row : h) std::swap(row[pivot], row[m]);
        }
        for (std::size_t i = m + 1; i < n; ++i) {
            if (h[i][m - 1] == 0) continue;
            Rational u = h[i][m - 1] / h[m][m - 1];
            for (std::size_t j = 0; j < n; ++j) h[i][j] -= u * h[m][j];
            for (std::size_t j = 0; j < n; ++j) h[j][m] += u * h[j][i];
        }
    }
    // p_k is the characteristic polynomial of the leading k x k block.
    std::vector<RatPolynomial> p(n + 1);
    p[0] = RatPolynomial::constant(1);
    for (std::size_t k = 1; k <= n; ++k) {
        p[k] = RatPolynomial::linear(-h[k - 1][k - 1]) * p[k - 1];
        Rational t = 1;
        for (std::size_t i = k - 1; i-- > 0;) {
            t *= h[i + 1][i];
            if (t == 0) break;
            p[k] -= (h[i][k - 1] * t) * p[i];
        }
    }
    return p[n];
}

}  // namespace

Element::Element(FieldSpec field) : field_(std::move(field)), c_(field_.degree(), 0) {}

Element::Element(FieldSpec field, std::vector<Rational> coefficients)
    : field_(std::move(field)), c_(std::move(coefficients)) {
    if (c_.size() != field_.degree())
        throw std::invalid_argument("coefficient vector length does not match degree of " + field_.to_string());
    for (auto& q : c_) q.canonicalize();
}

Element Element::rational(const Rational& q, const FieldSpec& field) {
    Element e(field);
    e.c_[0] = q;
    e.c_[0].canonicalize();
    return e;
}

Element Element::basis(const FieldSpec& field, const BasisLabel& label, const Rational& coefficient) {
    auto mask = field.mask_of(label);
    if (!mask) throw std::invalid_argument("label " + label.to_string() + " is not a basis label of " + field.to_string());
    Element e(field);
    e.c_[*mask] = coefficient;
    return e;
}

Element Element::sqrt_prime(std::int64_t p, const FieldSpec& field) {
    return basis(field, BasisLabel{p, false});
}

Element Element::imaginary_unit(const FieldSpec& field) {
    return basis(field, BasisLabel{1, true});
}

Rational Element::coefficient(const BasisLabel& label) const {
    auto mask = field_.mask_of(label);
    if (!mask) return 0;
    return c_[*mask];
}

bool Element::is_zero() const {
    for (const auto& q : c_)
        if (q != 0) return false;
    return true;
}

bool Element::is_rational() const {
    for (std::size_t m = 1; m < c_.size(); ++m)
        if (c_[m] != 0) return false;
    return true;
}

std::optional<Rational> Element::as_rational() const {
    if (!is_rational()) return std::nullopt;
    return c_[0];
}

bool Element::has_imaginary_part() const {
    const Mask ib = field_.i_bit();
    if (!ib) return false;
    for (Mask m = 0; m < c_.size(); ++m)
        if ((m & ib) && c_[m] != 0) return true;
    return false;
}

Element Element::lift(const FieldSpec& super) const {
    if (super == field_) return *this;
    if (!super.contains(field_))
        throw std::invalid_argument(field_.to_string() + " is not a subfield of " + super.to_string());
    Element out(super);
    for (Mask m = 0; m < c_.size(); ++m)
        if (c_[m] != 0) out.c_[field_.lift_mask(m, super)] = c_[m];
    return out;
}

std::optional<Element> Element::restrict_to(const FieldSpec& sub) const {
    if (sub == field_) return *this;
    if (!field_.contains(sub)) return std::nullopt;
    Element out(sub);
    std::vector<bool> covered(c_.size(), false);
    for (Mask m = 0; m < sub.degree(); ++m) {
        Mask big = sub.lift_mask(m, field_);
        out.c_[m] = c_[big];
        covered[big] = true;
    }
    for (Mask m = 0; m < c_.size(); ++m)
        if (!covered[m] && c_[m] != 0) return std::nullopt;
    return out;
}

Element Element::conjugate(const SignVector& s) const {
    if (!(s.field() == field_))
        throw std::invalid_argument("sign vector for " + s.field().to_string() + " applied to element of " +
                                    field_.to_string());
    Element out = *this;
    for (Mask m = 0; m < c_.size(); ++m)
        if (s.sign_of(m) < 0) out.c_[m] = -out.c_[m];
    return out;
}

ComplexInterval Element::embed(const SignVector& s, unsigned bits) const {
    if (bits < 16) bits = 16;
    const Element y = conjugate(s);
    const Mask ib = field_.i_bit();
    ComplexInterval z = ComplexInterval::point(0);
    for (Mask m = 0; m < c_.size(); ++m) {
        if (y.c_[m] == 0) continue;
        Interval term = y.c_[m] * sqrt_enclosure(field_.radicand(m & field_.real_bits()), bits);
        if (m & ib)
            z.im = z.im + term;
        else
            z.re = z.re + term;
    }
    return z;
}

RatPolynomial Element::char_poly() const { return hessenberg_char_poly(multiplication_matrix(*this)); }

Rational Element::norm() const {
    // Multiply by the conjugate under each generator flip in turn; after the
    // last generator the running product is the full conjugate product.
    Element y = *this;
    for (std::size_t g = 0; g < field_.generator_count(); ++g)
        y *= y.conjugate(SignVector(field_, Mask{1} << g));
    return y.c_[0];
}

Rational Element::trace() const { return Rational(static_cast<unsigned long>(field_.degree())) * c_[0]; }

bool Element::is_integral() const {
    const RatPolynomial cp = char_poly();
    for (const auto& a : cp.coefficients())
        if (a.get_den() != 1) return false;
    return true;
}

Element Element::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    Element y = *this;
    Element num = rational(1, field_);
    for (std::size_t g = 0; g < field_.generator_count(); ++g) {
        Element c = y.conjugate(SignVector(field_, Mask{1} << g));
        num *= c;
        y *= c;
    }
    const Rational inv = 1 / y.c_[0];
    for (auto& q : num.c_) q *= inv;
    return num;
}

Element Element::pow(long exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    Element result = rational(1, field_);
    Element base = *this;
    auto e = static_cast<unsigned long>(exponent);
    while (e) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

Element Element::operator-() const {
    Element out = *this;
    for (auto& q : out.c_) q = -q;
    return out;
}

Element& Element::operator+=(const Element& o) {
    if (o.field_ == field_) {
        for (std::size_t m = 0; m < c_.size(); ++m) c_[m] += o.c_[m];
        return *this;
    }
    auto [a, b] = coerce(*this, o);
    return *this = a += b;
}

Element& Element::operator-=(const Element& o) {
    if (o.field_ == field_) {
        for (std::size_t m = 0; m < c_.size(); ++m) c_[m] -= o.c_[m];
        return *this;
    }
    auto [a, b] = coerce(*this, o);
    return *this = a -= b;
}

Element& Element::operator*=(const Element& o) {
    if (!(o.field_ == field_)) {
        auto [a, b] = coerce(*this, o);
        return *this = a *= b;
    }
    const std::size_t n = c_.size();
    const auto rad = radicand_table(field_);
    const Mask ib = field_.i_bit();
    std::vector<Rational> out(n, 0);
    Rational t;
    for (Mask a = 0; a < n; ++a) {
        if (c_[a] == 0) continue;
        for (Mask b = 0; b < n; ++b) {
            if (o.c_[b] == 0) continue;
            t = c_[a] * o.c_[b];
            if (rad[a & b] != 1) t *= rad[a & b];
            if (a & b & ib)
                out[a ^ b] -= t;
            else
                out[a ^ b] += t;
        }
    }
    c_ = std::move(out);
    return *this;
}

std::string Element::to_string() const {
    std::string s;
    for (Mask m = 0; m < c_.size(); ++m) {
        const Rational& q = c_[m];
        if (q == 0) continue;
        Rational mag = abs(q);
        if (s.empty())
            s += q < 0 ? "-" : "";
        else
            s += q < 0 ? " - " : " + ";
        const Integer r = field_.radicand(m & field_.real_bits());
        std::string label;
        if (m & field_.i_bit()) label = "i";
        if (r != 1) label += (label.empty() ? "" : "*") + ("sqrt(" + r.get_str() + ")");
        if (label.empty())
            s += to_display_string(mag);
        else if (mag == 1)
            s += label;
        else
            s += to_display_string(mag) + "*" + label;
    }
    return s.empty() ? "0" : s;
}

bool operator==(const Element& a, const Element& b) {
    if (a.field_ == b.field_) return a.c_ == b.c_;
    auto f = common_field(a.field_, b.field_);
    if (!f) return false;
    return a.lift(*f).c_ == b.lift(*f).c_;
}

std::pair<Element, Element> coerce(const Element& a, const Element& b) {
    if (a.field() == b.field()) return {a, b};
    auto f = common_field(a.field(), b.field());
    if (!f)
        throw std::invalid_argument("cannot coerce between incomparable fields " + a.field().to_string() + " and " +
                                    b.field().to_string());
    return {a.lift(*f), b.lift(*f)};
}

Element operator+(const Element& a, const Element& b) {
    Element r = a;
    return r += b;
}
Element operator-(const Element& a, const Element& b) {
    Element r = a;
    return r -= b;
}
Element operator*(const Element& a, const Element& b) {
    Element r = a;
    return r *= b;
}
Element operator/(const Element& a, const Element& b) {
    auto [x, y] = coerce(a, b);
    return x * y.inverse();
}

Element arith(ArithOp op, const Element& a, const Element& b) {
    switch (op) {
        case ArithOp::add: return a + b;
        case ArithOp::sub: return a - b;
        case ArithOp::mul: return a * b;
        case ArithOp::div: return a / b;
    }
    throw std::invalid_argument("unknown arithmetic operation");
}

int real_sign(const Element& x) {
    if (x.has_imaginary_part()) throw std::domain_error("real_sign of a non-real element " + x.to_string());
    if (x.is_zero()) return 0;
    const SignVector id = SignVector::identity(x.field());
    for (unsigned bits = 64;; bits *= 2) {
        Interval v = x.embed(id, bits).re;
        if (v.strictly_positive()) return 1;
        if (v.strictly_negative()) return -1;
    }
}

Element sqrt_nat(const Integer& m, const FieldSpec& field) {
    if (m <= 0) throw std::invalid_argument("sqrt_nat expects a positive integer, got " + m.get_str());
    const auto split = split_square(m);
    for (const auto& [p, e] : factor(split.squarefree))
        if (!field.prime_index(p.get_si()))
            throw std::invalid_argument("sqrt(" + m.get_str() + ") needs sqrt" + p.get_str() + ", missing from " +
                                        field.to_string());
    return Element::basis(field, BasisLabel{split.squarefree, false}, split.root);
}

}  // namespace mqw
