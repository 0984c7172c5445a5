#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "convexlab/pl_convex.hpp"

namespace convexlab {

// Malformed function spec. `where` is a JSON-pointer-like location.
class SpecError : public std::invalid_argument {
 public:
  SpecError(const std::string& where, const std::string& what)
      : std::invalid_argument(where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// Function spec text format:
//   {"kind": "indicator", "z": 1.0}
//   {"kind": "linear", "a": 2.0}
//   {"kind": "triangle", "z": 1.0, "a": 2.0}
//   {"kind": "pl", "knots": [[0, 0], [1, 0.5]], "tail_slope": 2.0}
// Numbers may also be strings ("1/3", "0.1" read exactly, "inf" where +inf
// is meaningful). An optional "class" is "geometric" (default) or
// "nonnegative".
PLConvex1D parse_function_spec(const nlohmann::json& j, const std::string& where = "$");

// Emits the most specific kind that describes f. Values that are not exact
// doubles are written as "p/q" strings so the spec re-parses to the same f.
nlohmann::json to_function_spec(const PLConvex1D& f);

nlohmann::json rational_to_json(const Rational& q);
Rational rational_from_json(const nlohmann::json& j, const std::string& where);

}  // namespace convexlab
