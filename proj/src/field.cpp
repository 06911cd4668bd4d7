#include "mqw/field.hpp"

#include <algorithm>
#include <stdexcept>

namespace mqw {

namespace {
// Degree 2^16 is far past desk scale; larger towers are rejected early.
constexpr std::size_t kMaxGenerators = 16;
}  // namespace

std::string BasisLabel::to_string() const {
    return with_i ? "i*" + radicand.get_str() : radicand.get_str();
}

BasisLabel BasisLabel::parse(const std::string& text) {
    BasisLabel out;
    std::string rest = text;
    if (rest == "i") {
        out.with_i = true;
        return out;
    }
    if (rest.rfind("i*", 0) == 0) {
        out.with_i = true;
        rest = rest.substr(2);
    }
    out.radicand = parse_integer(rest);
    if (!is_squarefree(out.radicand))
        throw std::invalid_argument("basis label '" + text + "' is not a squarefree radicand");
    return out;
}

FieldSpec FieldSpec::make(std::vector<std::int64_t> primes, bool imaginary) {
    std::sort(primes.begin(), primes.end());
    for (std::size_t j = 0; j < primes.size(); ++j) {
        if (!is_prime(primes[j]))
            throw std::invalid_argument(std::to_string(primes[j]) + " is not prime");
        if (j > 0 && primes[j] == primes[j - 1])
            throw std::invalid_argument("duplicate prime " + std::to_string(primes[j]));
    }
    if (primes.size() + (imaginary ? 1 : 0) > kMaxGenerators)
        throw std::invalid_argument("too many generators for an exact dense basis");
    return FieldSpec(std::move(primes), imaginary);
}

bool FieldSpec::contains(const FieldSpec& sub) const {
    if (sub.imaginary_ && !imaginary_) return false;
    return std::includes(primes_.begin(), primes_.end(), sub.primes_.begin(), sub.primes_.end());
}

std::optional<std::size_t> FieldSpec::prime_index(std::int64_t p) const {
    auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
    if (it == primes_.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - primes_.begin());
}

Mask FieldSpec::lift_mask(Mask mask, const FieldSpec& super) const {
    Mask out = 0;
    for (std::size_t j = 0; j < primes_.size(); ++j)
        if (mask & (Mask{1} << j)) out |= Mask{1} << *super.prime_index(primes_[j]);
    if (mask & i_bit()) out |= super.i_bit();
    return out;
}

Integer FieldSpec::radicand(Mask mask) const {
    Integer m = 1;
    for (std::size_t j = 0; j < primes_.size(); ++j)
        if (mask & (Mask{1} << j)) m *= primes_[j];
    return m;
}

BasisLabel FieldSpec::label(Mask mask) const {
    return BasisLabel{radicand(mask), (mask & i_bit()) != 0};
}

std::optional<Mask> FieldSpec::mask_of(const BasisLabel& label) const {
    if (label.with_i && !imaginary_) return std::nullopt;
    Mask mask = label.with_i ? i_bit() : 0;
    Integer m = label.radicand;
    if (m <= 0) return std::nullopt;
    for (std::size_t j = 0; j < primes_.size(); ++j) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(primes_[j]))) {
            m /= primes_[j];
            mask |= Mask{1} << j;
        }
    }
    if (m != 1) return std::nullopt;
    return mask;
}

std::string FieldSpec::to_string() const {
    if (primes_.empty() && !imaginary_) return "Q";
    std::string s = "Q(";
    bool first = true;
    if (imaginary_) {
        s += "i";
        first = false;
    }
    for (auto p : primes_) {
        if (!first) s += ",";
        s += "sqrt" + std::to_string(p);
        first = false;
    }
    return s + ")";
}

std::optional<FieldSpec> common_field(const FieldSpec& a, const FieldSpec& b) {
    if (a.contains(b)) return a;
    if (b.contains(a)) return b;
    return std::nullopt;
}

FieldSpec compositum(const FieldSpec& a, const FieldSpec& b) {
    std::vector<std::int64_t> primes;
    std::set_union(a.primes().begin(), a.primes().end(), b.primes().begin(), b.primes().end(),
                   std::back_inserter(primes));
    return FieldSpec::make(std::move(primes), a.imaginary() || b.imaginary());
}

FieldSpec field_for_radicand(const Integer& n, bool imaginary) {
    std::vector<std::int64_t> primes;
    for (const auto& [p, e] : factor(n))
        if (e % 2) primes.push_back(p.get_si());
    return FieldSpec::make(std::move(primes), imaginary);
}

SignVector::SignVector(FieldSpec field, Mask flipped) : field_(std::move(field)), flipped_(flipped) {
    if (flipped_ >> field_.generator_count())
        throw std::invalid_argument("sign vector flips a generator outside " + field_.to_string());
}

std::vector<SignVector> SignVector::all(const FieldSpec& field) {
    std::vector<SignVector> out;
    out.reserve(field.degree());
    for (Mask m = 0; m < field.degree(); ++m) out.emplace_back(field, m);
    return out;
}

SignVector SignVector::flipping_prime(std::int64_t p) const {
    auto j = field_.prime_index(p);
    if (!j) throw std::invalid_argument("sqrt" + std::to_string(p) + " is not a generator of " + field_.to_string());
    return SignVector(field_, flipped_ ^ (Mask{1} << *j));
}

SignVector SignVector::flipping_i() const {
    if (!field_.imaginary()) throw std::invalid_argument("i is not a generator of " + field_.to_string());
    return SignVector(field_, flipped_ ^ field_.i_bit());
}

SignVector SignVector::compose(const SignVector& other) const {
    if (!(field_ == other.field_)) throw std::invalid_argument("composing sign vectors of different fields");
    return SignVector(field_, flipped_ ^ other.flipped_);
}

}  // namespace mqw
