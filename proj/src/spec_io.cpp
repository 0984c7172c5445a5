#include "convexlab/spec_io.hpp"

#include <cmath>

#include "convexlab/extremal.hpp"

namespace convexlab {

using nlohmann::json;

json rational_to_json(const Rational& q) {
  if (is_double_exact(q)) return q.get_d();
  return to_string(q);
}

Rational rational_from_json(const json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number()) return to_rational(j.get<double>());
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    throw SpecError(where, e.what());
  }
  throw SpecError(where, "expected a number or a rational string");
}

namespace {

bool is_inf_token(const json& j) {
  return j.is_string() && (j == "inf" || j == "+inf" || j == "Infinity");
}

ExactValue extended_from_json(const json& j, const std::string& where) {
  if (is_inf_token(j)) return ExactValue::infinity();
  Rational q = rational_from_json(j, where);
  if (q < 0) throw SpecError(where, "negative value");
  return ExactValue(q);
}

Rational nonnegative_from_json(const json& j, const std::string& where) {
  Rational q = rational_from_json(j, where);
  if (q < 0) throw SpecError(where, "negative value");
  return q;
}

const json& field(const json& j, const char* name, const std::string& where) {
  if (!j.contains(name)) throw SpecError(where, std::string("missing field \"") + name + "\"");
  return j.at(name);
}

}  // namespace

PLConvex1D parse_function_spec(const json& j, const std::string& where) {
  if (!j.is_object()) throw SpecError(where, "function spec must be an object");
  const std::string kind = [&] {
    const json& k = field(j, "kind", where);
    if (!k.is_string()) throw SpecError(where + ".kind", "must be a string");
    return k.get<std::string>();
  }();
  ClassTag tag = ClassTag::Geometric;
  if (j.contains("class")) {
    const json& c = j.at("class");
    if (c == "geometric") {
      tag = ClassTag::Geometric;
    } else if (c == "nonnegative") {
      tag = ClassTag::NonNegative;
    } else {
      throw SpecError(where + ".class", "expected \"geometric\" or \"nonnegative\"");
    }
  }

  try {
    if (kind == "indicator") {
      const ExactValue z = extended_from_json(field(j, "z", where), where + ".z");
      return z.is_infinite() ? make_zero() : make_indicator(z.value());
    }
    if (kind == "linear") {
      return make_linear(nonnegative_from_json(field(j, "a", where), where + ".a"));
    }
    if (kind == "triangle") {
      return make_triangle(nonnegative_from_json(field(j, "z", where), where + ".z"),
                           nonnegative_from_json(field(j, "a", where), where + ".a"));
    }
    if (kind == "pl") {
      const json& ks = field(j, "knots", where);
      if (!ks.is_array() || ks.empty()) throw SpecError(where + ".knots", "must be a non-empty array");
      std::vector<Knot> knots;
      for (std::size_t i = 0; i < ks.size(); ++i) {
        const std::string at = where + ".knots[" + std::to_string(i) + "]";
        if (!ks[i].is_array() || ks[i].size() != 2) throw SpecError(at, "knot must be [x, v]");
        knots.push_back({rational_from_json(ks[i][0], at + "[0]"), rational_from_json(ks[i][1], at + "[1]")});
      }
      const ExactValue tail = extended_from_json(field(j, "tail_slope", where), where + ".tail_slope");
      return PLConvex1D(std::move(knots), tail, tag);
    }
  } catch (const SpecError&) {
    throw;
  } catch (const std::exception& e) {
    throw SpecError(where, e.what());
  }
  throw SpecError(where + ".kind", "unknown kind \"" + kind + "\"");
}

json to_function_spec(const PLConvex1D& f) {
  const auto& ks = f.knots();
  if (f.tag() == ClassTag::Geometric) {
    if (ks.size() == 1 && !f.bounded_domain()) {
      return {{"kind", "linear"}, {"a", rational_to_json(f.tail_slope().value())}};
    }
    if (f.is_indicator() && f.bounded_domain()) {
      return {{"kind", "indicator"}, {"z", rational_to_json(ks.back().x)}};
    }
    if (ks.size() == 2 && f.bounded_domain()) {
      return {{"kind", "triangle"},
              {"z", rational_to_json(ks[1].x)},
              {"a", rational_to_json(ks[1].v / ks[1].x)}};
    }
  }
  json knots = json::array();
  for (const auto& k : ks) knots.push_back(json::array({rational_to_json(k.x), rational_to_json(k.v)}));
  json out = {{"kind", "pl"},
              {"knots", knots},
              {"tail_slope", f.bounded_domain() ? json("inf") : rational_to_json(f.tail_slope().value())}};
  if (f.tag() == ClassTag::NonNegative) out["class"] = "nonnegative";
  return out;
}

}  // namespace convexlab
