// JSON encodings of fields and elements.
//
//   {"field":{"primes":[2,3],"i":true},"coeffs":{"1":"3/1","i*6":"-1/2"}}
//
// Only nonzero coefficients appear; keys are basis labels and values are
// "num/den" strings. Objects are key-sorted, so dump(parse(dump(x))) is
// byte-identical to dump(x).
#pragma once

#include "mqw/definable.hpp"
#include "mqw/element.hpp"

#include <json.hpp>

#include <string>

namespace mqw {

nlohmann::json field_to_json(const FieldSpec& f);
FieldSpec field_from_json(const nlohmann::json& j);

nlohmann::json element_to_json(const Element& x);
Element element_from_json(const nlohmann::json& j);

std::string serialize_element(const Element& x);
Element deserialize_element(const std::string& text);

/// Nested derivation: {"level":..,"target":..,"kind":"units"|"difference"|"w",...}.
/// Shared subtrees are written out at every occurrence.
nlohmann::json chain_to_json(const WitnessChain& chain);

}  // namespace mqw
