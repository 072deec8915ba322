#pragma once

#include <string>

#include "json.hpp"

#include "hallforge/hall.hpp"

namespace hallforge::io {

using json = nlohmann::ordered_json;

// "0", "[1,1:1]", "(3/2)*[1,0:0] + (1/2*sqrt(2))*[0,1:0]"
std::string element_str(const hall::Element& e);
std::string tensor2_str(const hall::Tensor2& t);
std::string tensorr_str(const hall::TensorR& t);

// {"a":"3/2","b":"0"} — rationals as strings, never floats
json coef_json(const hall::Coef& c);
hall::Coef coef_from_json(const json& j, std::uint64_t q);

// [{"class":"1,1:1","a":"1","b":"0"}, ...] in canonical class order
json element_json(const hall::Element& e);
hall::Element element_from_json(const json& j, std::uint64_t q);

}  // namespace hallforge::io
