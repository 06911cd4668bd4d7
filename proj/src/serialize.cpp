#include "mqw/serialize.hpp"

#include <stdexcept>

namespace mqw {

nlohmann::json field_to_json(const FieldSpec& f) {
    return {{"primes", f.primes()}, {"i", f.imaginary()}};
}

FieldSpec field_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("primes"))
        throw std::invalid_argument("field JSON must be an object with \"primes\"");
    return FieldSpec::make(j.at("primes").get<std::vector<std::int64_t>>(), j.value("i", false));
}

nlohmann::json element_to_json(const Element& x) {
    nlohmann::json coeffs = nlohmann::json::object();
    const FieldSpec& f = x.field();
    for (Mask m = 0; m < f.degree(); ++m)
        if (x.coefficient(m) != 0) coeffs[f.label(m).to_string()] = to_fraction_string(x.coefficient(m));
    return {{"field", field_to_json(f)}, {"coeffs", coeffs}};
}

Element element_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("field"))
        throw std::invalid_argument("element JSON must be an object with \"field\"");
    const FieldSpec f = field_from_json(j.at("field"));
    Element x(f);
    if (!j.contains("coeffs")) return x;
    for (const auto& [key, value] : j.at("coeffs").items()) {
        const BasisLabel label = BasisLabel::parse(key);
        if (!f.mask_of(label)) throw std::invalid_argument("label '" + key + "' is not valid for " + f.to_string());
        Rational q = value.is_string() ? parse_rational(value.get<std::string>())
                                       : Rational(value.get<long>());
        x += Element::basis(f, label, q);
    }
    return x;
}

std::string serialize_element(const Element& x) { return element_to_json(x).dump(); }

Element deserialize_element(const std::string& text) { return element_from_json(nlohmann::json::parse(text)); }

nlohmann::json chain_to_json(const WitnessChain& chain) {
    nlohmann::json j;
    j["level"] = chain.level == WitnessChain::kW ? nlohmann::json("W") : nlohmann::json(chain.level);
    j["target"] = chain.target.to_string();
    if (const auto* p = std::get_if<UnitPair>(&chain.node)) {
        j["kind"] = "units";
        j["u1"] = p->u1.to_string();
        j["u2"] = p->u2.to_string();
    } else if (const auto* d = std::get_if<Difference>(&chain.node)) {
        j["kind"] = "difference";
        j["left"] = d->left ? chain_to_json(*d->left) : nlohmann::json();
        j["right"] = d->right ? chain_to_json(*d->right) : nlohmann::json();
    } else {
        const auto& w = std::get<WSum>(chain.node);
        j["kind"] = "w";
        j["remainder"] = w.remainder.get_str();
        j["remainder_bound"] = w.remainder_bound.get_str();
        auto& terms = j["terms"] = nlohmann::json::array();
        for (const auto& t : w.terms) terms.push_back(t ? chain_to_json(*t) : nlohmann::json());
    }
    return j;
}

}  // namespace mqw
