#include <gtest/gtest.h>

#include "convexlab/extremal.hpp"
#include "convexlab/pl_convex.hpp"
#include "support/generators.hpp"

using namespace convexlab;
using convexlab::testing::random_pl;
using convexlab::testing::Rng;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

}  // namespace

TEST(Rational, ParsesDecimalsExactly) {
  EXPECT_EQ(parse_rational("0.1"), q(1, 10));
  EXPECT_EQ(parse_rational("-2/6"), q(-1, 3));
  EXPECT_EQ(parse_rational("3"), q(3));
  EXPECT_EQ(to_string(q(6, 4)), "3/2");
  EXPECT_THROW(parse_rational("x1"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}

TEST(Rational, DoubleRoundTrip) {
  for (double v : {0.0, 0.5, 1e-300, 123456.789, 3.0e17}) {
    EXPECT_EQ(to_double(to_rational(v)), v);
    EXPECT_TRUE(is_double_exact(to_rational(v)));
  }
  EXPECT_FALSE(is_double_exact(q(1, 3)));
}

TEST(Extended, RejectsNegativeAndZeroTimesInf) {
  EXPECT_THROW(ExactValue(q(-1)), ExtendedArithmeticError);
  EXPECT_THROW(Rational(0) * ExactValue::infinity(), ExtendedArithmeticError);
  EXPECT_TRUE((q(2) * ExactValue::infinity()).is_infinite());
  EXPECT_LT(ExactValue(q(5)), ExactValue::infinity());
  EXPECT_EQ(ExactValue(q(1)) + ExactValue(q(1, 2)), ExactValue(q(3, 2)));
}

TEST(PLConvex1D, CanonicalFormDropsCollinearKnots) {
  PLConvex1D f({{0, 0}, {1, 1}, {2, 2}, {3, 3}}, ExactValue(q(1)));
  EXPECT_EQ(f, make_linear(1));
  EXPECT_EQ(f.knots().size(), 1u);
}

TEST(PLConvex1D, RejectsInvalidInput) {
  EXPECT_THROW(PLConvex1D({{0, 0}, {1, 2}, {2, 3}}, ExactValue(q(5))), InvalidFunction);  // concave kink
  EXPECT_THROW(PLConvex1D({{0, 0}, {2, 1}, {1, 3}}, ExactValue(q(5))), InvalidFunction);  // unsorted
  EXPECT_THROW(PLConvex1D({{0, 1}}, ExactValue(q(1))), InvalidFunction);                  // geometric f(0) != 0
  EXPECT_THROW(PLConvex1D({{0, 0}, {1, 1}}, ExactValue(q(1, 2))), InvalidFunction);       // tail bends down
  EXPECT_NO_THROW(PLConvex1D({{0, 1}, {1, 1}}, ExactValue(q(1)), ClassTag::NonNegative));
}

TEST(PLConvex1D, EvalAndDerivatives) {
  const PLConvex1D t = make_triangle(2, 3);
  EXPECT_EQ(t.eval(q(1)), ExactValue(q(3)));
  EXPECT_EQ(t.eval(q(2)), ExactValue(q(6)));
  EXPECT_TRUE(t.eval(q(5, 2)).is_infinite());
  EXPECT_EQ(t.right_derivative_at_zero(), ExactValue(q(3)));
  EXPECT_EQ(t.zero_set_end(), ExactValue(q(0)));
  EXPECT_EQ(t.domain_end(), ExactValue(q(2)));
  EXPECT_TRUE(make_indicator(0).right_derivative_at_zero().is_infinite());
  EXPECT_TRUE(make_zero().zero_set_end().is_infinite());
  EXPECT_EQ(make_indicator(q(3, 2)).zero_set_end(), ExactValue(q(3, 2)));
  EXPECT_TRUE(make_indicator(4).is_indicator());
  EXPECT_FALSE(make_linear(1).is_indicator());
  EXPECT_DOUBLE_EQ(t.eval(1.5).to_double(), 4.5);
}

TEST(PLConvex1D, TriangleConventions) {
  EXPECT_EQ(make_triangle(2, 3), make_triangle_by_endpoint(2, 6));
  EXPECT_EQ(make_triangle(2, 3), sup2(make_linear(3), make_indicator(2)));
}

TEST(Lattice, SupAndMeetOfExtremes) {
  const PLConvex1D f = make_linear(2);
  EXPECT_EQ(sup2(f, make_zero()), f);
  EXPECT_EQ(sup2(f, make_indicator(0)), make_indicator(0));
  EXPECT_EQ(hat_inf2(f, make_zero()), make_zero());
  EXPECT_EQ(hat_inf2(f, make_indicator(0)), f);
}

TEST(Lattice, SupFindsTailCrossing) {
  const PLConvex1D f({{0, 0}, {4, 0}}, ExactValue(q(3, 4)));
  const PLConvex1D g({{0, 0}, {2, 0}}, ExactValue(q(1, 2)));
  const PLConvex1D want({{0, 0}, {2, 0}, {8, 3}}, ExactValue(q(3, 4)));
  EXPECT_EQ(sup2(f, g), want);
  EXPECT_EQ(sup2(g, f), want);
}

TEST(Lattice, MeetOfTwoIndicatorsAndLines) {
  EXPECT_EQ(hat_inf2(make_indicator(1), make_indicator(3)), make_indicator(3));
  EXPECT_EQ(sup2(make_indicator(1), make_indicator(3)), make_indicator(1));
  EXPECT_EQ(hat_inf2(make_linear(1), make_linear(4)), make_linear(1));
  // The hull of the two epigraphs is bounded below by the ray from (1, 0) with slope 1.
  EXPECT_EQ(hat_inf2(make_linear(1), make_indicator(1)), PLConvex1D({{0, 0}, {1, 0}}, ExactValue(q(1))));
}

TEST(Order, FindViolationIsExact) {
  const PLConvex1D f = make_linear(2);
  const PLConvex1D g = make_linear(1);
  EXPECT_TRUE(leq(g, f));
  EXPECT_FALSE(leq(f, g));
  EXPECT_TRUE(leq(f, g, 2));
  EXPECT_FALSE(leq(f, g, q(199, 100)));
  EXPECT_TRUE(find_violation(f, g, 1).has_value());
  EXPECT_TRUE(leq(make_linear(5), make_indicator(0)));
  EXPECT_FALSE(leq(make_linear(1), make_zero(), 1000));
}

TEST(Transforms, ScaleAndDilate) {
  const PLConvex1D f = make_triangle(2, 3);
  EXPECT_EQ(compose_dilate(f, 2), make_triangle(4, q(3, 2)));
  EXPECT_EQ(scale(f, 2), make_triangle(2, 6));
  EXPECT_THROW(scale(f, 0), std::invalid_argument);
}

// Properties over random functions.

class PLProperty : public ::testing::TestWithParam<int> {};

TEST_P(PLProperty, LatticeLaws) {
  Rng rng(static_cast<std::uint64_t>(GetParam()) * 7919 + 1);
  for (int it = 0; it < 20; ++it) {
    const PLConvex1D f = random_pl(rng), g = random_pl(rng);
    const PLConvex1D s = sup2(f, g), m = hat_inf2(f, g);
    EXPECT_EQ(s, sup2(g, f));
    EXPECT_EQ(m, hat_inf2(g, f));
    EXPECT_TRUE(leq(f, s) && leq(g, s));
    EXPECT_TRUE(leq(m, f) && leq(m, g));
    EXPECT_EQ(sup2(f, f), f);
    EXPECT_EQ(hat_inf2(f, f), f);
    EXPECT_EQ(hat_inf2(f, s), f);  // absorption
    EXPECT_EQ(sup2(f, m), f);
  }
}

TEST_P(PLProperty, MeetIsGreatestConvexMinorant) {
  Rng rng(static_cast<std::uint64_t>(GetParam()) * 104729 + 5);
  for (int it = 0; it < 20; ++it) {
    const PLConvex1D f = random_pl(rng), g = random_pl(rng);
    const PLConvex1D m = hat_inf2(f, g);
    // Any convex h below both is below m: test with h = meet scaled down and
    // with random h that happen to lie below both.
    const PLConvex1D h = random_pl(rng);
    if (leq(h, f) && leq(h, g)) EXPECT_TRUE(leq(h, m));
    // Pointwise m <= min(f, g) at every merged breakpoint.
    for (const Rational& x : merged_breakpoints(f, g)) {
      const ExactValue mf = f.eval(x) < g.eval(x) ? f.eval(x) : g.eval(x);
      EXPECT_LE(m.eval(x), mf);
    }
  }
}

TEST_P(PLProperty, DilationAndScalingCompose) {
  Rng rng(static_cast<std::uint64_t>(GetParam()) * 31 + 11);
  for (int it = 0; it < 20; ++it) {
    const PLConvex1D f = random_pl(rng);
    const Rational a = convexlab::testing::small_rational(rng), l = convexlab::testing::small_rational(rng);
    EXPECT_EQ(compose_dilate(compose_dilate(f, a), 1 / a), f);
    EXPECT_EQ(scale(scale(f, l), 1 / l), f);
    for (const Knot& k : f.knots()) {
      EXPECT_EQ(compose_dilate(f, a).eval(k.x * a), ExactValue(k.v));
      EXPECT_EQ(scale(f, l).eval(k.x), l * ExactValue(k.v));
    }
    const auto bp = merged_breakpoints(f, compose_dilate(f, a));
    for (std::size_t i = 1; i < bp.size(); ++i) EXPECT_LT(bp[i - 1], bp[i]);
  }
}

TEST_P(PLProperty, ScaledCopyDominates) {
  Rng rng(static_cast<std::uint64_t>(GetParam()) * 977 + 3);
  for (int it = 0; it < 20; ++it) {
    const PLConvex1D f = random_pl(rng);
    EXPECT_TRUE(leq(f, scale(f, 2)));
    EXPECT_TRUE(leq(scale(f, 2), f, 2));
    if (!f.is_indicator()) EXPECT_FALSE(leq(scale(f, 2), f, q(3, 2)));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, PLProperty, ::testing::Range(0, 5));
