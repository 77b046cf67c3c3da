#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "dacscanon/canonical.hpp"

namespace dacs {

using json = nlohmann::ordered_json;
using SystemVariant = std::variant<Dacs, Odecs2>;

Rational parse_rational(const std::string& s);  // ParseError, ZeroDenominator
std::string format_rational(const Rational& q);

// Matrices are arrays of rows of rational strings.  A zero-size dimension
// that the rows cannot express is taken from `shape` when given.
RatMatrix matrix_from_json(const json& j, const json* shape = nullptr);
json matrix_to_json(const RatMatrix& M);

SystemVariant system_from_json(const json& j);  // ParseError, DimensionError
json system_to_json(const Dacs& d);
json system_to_json(const Odecs2& o);
SystemVariant parse_system(const std::string& path);
json load_json(const std::string& path);  // ParseError

json transform_to_json(const ExFbTransform& t);
json transform_to_json(const EmTransform& t);
json transform_to_json(const MorseTransform& t);
std::variant<ExFbTransform, EmTransform> transform_from_json(const json& j);

json indices_to_json(const EmcfIndices& e);
json indices_to_json(const FbcfIndices& f);
json dims_to_json(const BlockDims& d);

}  // namespace dacs
