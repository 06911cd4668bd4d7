// Dense univariate polynomials over exact coefficient rings.
#pragma once

#include "mqw/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace mqw {

/// Coefficients a_0..a_deg, trailing zeros trimmed (the zero polynomial is empty).
template <typename T>
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<T> coefficients) : c_(std::move(coefficients)) { trim(); }

    static Polynomial constant(const T& a) { return Polynomial(std::vector<T>{a}); }
    static Polynomial x() { return Polynomial(std::vector<T>{T(0), T(1)}); }
    /// x + a
    static Polynomial linear(const T& a) { return Polynomial(std::vector<T>{a, T(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T>& coefficients() const { return c_; }
    T coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
    T leading() const { return c_.empty() ? T(0) : c_.back(); }

    T operator()(const T& x) const {
        T acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    /// p(x + k), by Horner's scheme in the polynomial ring.
    Polynomial shifted(const T& k) const {
        Polynomial acc;
        const Polynomial step = linear(k);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * step + constant(*it);
        return acc;
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<T> out(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(out));
    }
    friend Polynomial operator*(const T& s, const Polynomial& p) {
        std::vector<T> out = p.c_;
        for (auto& v : out) v *= s;
        return Polynomial(std::move(out));
    }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    Polynomial pow(unsigned e) const {
        Polynomial result = constant(T(1)), base = *this;
        while (e) {
            if (e & 1) result = result * base;
            base = base * base;
            e >>= 1;
        }
        return result;
    }

    /// "16*x^4 + 16*x^2 + 2"
    std::string to_string(const std::string& var = "x") const {
        if (c_.empty()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            const T& a = c_[static_cast<std::size_t>(i)];
            if (a == 0) continue;
            T mag = a < 0 ? T(-a) : a;
            if (s.empty())
                s += a < 0 ? "-" : "";
            else
                s += a < 0 ? " - " : " + ";
            std::string coef = to_display(mag);
            if (i == 0)
                s += coef;
            else {
                if (mag != 1) s += coef + "*";
                s += var;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    static std::string to_display(const Integer& v) { return v.get_str(); }
    static std::string to_display(const Rational& v) { return to_display_string(v); }

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<T> c_;
};

using IntPolynomial = Polynomial<Integer>;
using RatPolynomial = Polynomial<Rational>;

}  // namespace mqw
