#include <gtest/gtest.h>

#include "convexlab/extremal.hpp"
#include "convexlab/spec_io.hpp"
#include "support/generators.hpp"

using namespace convexlab;
using nlohmann::json;

TEST(SpecIo, ParsesKinds) {
  EXPECT_EQ(parse_function_spec(json::parse(R"({"kind":"indicator","z":"inf"})")), make_zero());
  EXPECT_EQ(parse_function_spec(json::parse(R"({"kind":"indicator","z":0})")), make_indicator(0));
  EXPECT_EQ(parse_function_spec(json::parse(R"({"kind":"linear","a":"0.1"})")), make_linear(Rational(1, 10)));
  EXPECT_EQ(parse_function_spec(json::parse(R"({"kind":"triangle","z":2,"a":3})")), make_triangle(2, 3));
  EXPECT_EQ(parse_function_spec(json::parse(R"({"kind":"pl","knots":[[0,0],[1,"1/2"]],"tail_slope":2})")),
            PLConvex1D({{0, 0}, {1, Rational(1, 2)}}, ExactValue(Rational(2))));
}

TEST(SpecIo, ErrorsCarryLocation) {
  auto where = [](const char* text) {
    try {
      parse_function_spec(json::parse(text));
    } catch (const SpecError& e) {
      return e.where();
    }
    return std::string("no error");
  };
  EXPECT_EQ(where(R"({"kind":"pl","knots":[[0,0],[1]],"tail_slope":1})"), "$.knots[1]");
  EXPECT_EQ(where(R"({"kind":"linear"})"), "$");
  EXPECT_EQ(where(R"({"kind":"blob"})"), "$.kind");
  EXPECT_EQ(where(R"({"kind":"linear","a":-1})"), "$.a");
  EXPECT_EQ(where(R"({"kind":"linear","a":1,"class":"weird"})"), "$.class");
  EXPECT_EQ(where(R"({"kind":"pl","knots":[[0,0],[1,2],[2,3]],"tail_slope":5})"), "$");
}

TEST(SpecIo, RoundTripRandom) {
  convexlab::testing::Rng rng(8);
  for (int it = 0; it < 100; ++it) {
    const PLConvex1D f = convexlab::testing::random_pl(rng);
    const json j = to_function_spec(f);
    EXPECT_EQ(parse_function_spec(json::parse(j.dump())), f) << j.dump();
  }
}

TEST(SpecIo, EmitsMostSpecificKind) {
  EXPECT_EQ(to_function_spec(make_linear(2)).at("kind"), "linear");
  EXPECT_EQ(to_function_spec(make_indicator(2)).at("kind"), "indicator");
  EXPECT_EQ(to_function_spec(make_triangle(2, 3)).at("kind"), "triangle");
  EXPECT_EQ(to_function_spec(make_linear(Rational(1, 3))).at("a"), "1/3");
  EXPECT_EQ(rational_from_json(json("2/4"), "$"), Rational(1, 2));
}
