#include <gtest/gtest.h>

#include <cmath>

#include "convexlab/extremal.hpp"
#include "convexlab/transforms.hpp"
#include "support/generators.hpp"

using namespace convexlab;
using convexlab::testing::comparable_pair;
using convexlab::testing::random_pl;
using convexlab::testing::Rng;
using convexlab::testing::small_rational;

TEST(Legendre, ExtremalPairs) {
  EXPECT_EQ(legendre(make_linear(3)), make_indicator(3));
  EXPECT_EQ(legendre(make_indicator(2)), make_linear(2));
  EXPECT_EQ(legendre(make_zero()), make_indicator(0));
  EXPECT_EQ(legendre(make_indicator(0)), make_zero());
}

TEST(Legendre, Triangle) {
  // sup over y in [0, 2] of (x - 3) y
  EXPECT_EQ(legendre(make_triangle(2, 3)), PLConvex1D({{0, 0}, {3, 0}}, ExactValue(Rational(2))));
}

TEST(GeometricDual, ExtremalPairs) {
  EXPECT_EQ(a_transform(make_linear(4)), make_linear(Rational(1, 4)));
  EXPECT_EQ(a_transform(make_indicator(2)), make_indicator(Rational(1, 2)));
  EXPECT_EQ(a_transform(make_zero()), make_indicator(0));
  EXPECT_EQ(a_transform(make_indicator(0)), make_zero());
}

TEST(Gauge, ExchangesIndicatorsAndLines) {
  EXPECT_EQ(j_transform(make_indicator(4), true), make_linear(Rational(1, 4)));
  EXPECT_EQ(j_transform(make_linear(2), true), make_indicator(Rational(1, 2)));
  EXPECT_EQ(j_transform(make_zero()), make_zero());
  EXPECT_EQ(j_transform(make_indicator(0)), make_indicator(0));
  EXPECT_EQ(j_transform(make_triangle(2, 3), true), make_triangle(Rational(1, 3), Rational(1, 2)));
}

TEST(Gauge, ParametricMatchesClosedForm) {
  // J(l_2) = 1_[0, 1/2]
  EXPECT_NEAR(j_parametric(make_linear(2), 0.25), 0.0, 1e-12);
  EXPECT_TRUE(std::isinf(j_parametric(make_linear(2), 0.75)));
  // J(1_[0,4]) = l_{1/4}
  EXPECT_NEAR(j_parametric(make_indicator(4), 3.0), 0.75, 1e-9);
}

TEST(UpperEnvelope, DropsDominatedLines) {
  const PLConvex1D f = upper_envelope({{0, 0}, {1, -1}, {Rational(1, 2), -1}, {3, -5}}, ExactValue::infinity());
  EXPECT_EQ(f, PLConvex1D({{0, 0}, {1, 0}, {2, 1}}, ExactValue(Rational(3))));
}

TEST(CheckPoints, CoverDomain) {
  const auto xs = j_check_points(make_triangle(2, 3));
  EXPECT_EQ(xs.size(), 64u);
  for (std::size_t i = 1; i < xs.size(); ++i) EXPECT_LT(xs[i - 1], xs[i]);
  EXPECT_TRUE(j_agrees(1.0, 1.0 + 1e-8));
  EXPECT_FALSE(j_agrees(1.0, 1.01));
  EXPECT_TRUE(j_agrees(INFINITY, INFINITY));
}

class TransformProperty : public ::testing::TestWithParam<int> {};

TEST_P(TransformProperty, Involutions) {
  Rng rng(static_cast<std::uint64_t>(GetParam()) + 100);
  for (int it = 0; it < 20; ++it) {
    const PLConvex1D f = random_pl(rng);
    EXPECT_EQ(legendre(legendre(f)), f) << describe(f);
    EXPECT_EQ(a_transform(a_transform(f)), f) << describe(f);
    EXPECT_EQ(j_transform(j_transform(f)), f) << describe(f);
  }
}

TEST_P(TransformProperty, Commute) {
  Rng rng(static_cast<std::uint64_t>(GetParam()) + 200);
  for (int it = 0; it < 20; ++it) {
    const PLConvex1D f = random_pl(rng);
    EXPECT_EQ(legendre(a_transform(f)), a_transform(legendre(f))) << describe(f);
    EXPECT_NO_THROW(j_transform(f, true)) << describe(f);
  }
}

TEST_P(TransformProperty, OrderLaws) {
  Rng rng(static_cast<std::uint64_t>(GetParam()) + 300);
  for (int it = 0; it < 20; ++it) {
    const auto [f, g] = comparable_pair(rng);
    ASSERT_TRUE(leq(f, g));
    EXPECT_TRUE(leq(legendre(g), legendre(f)));
    EXPECT_TRUE(leq(a_transform(g), a_transform(f)));
    EXPECT_TRUE(leq(j_transform(f), j_transform(g)));
  }
}

TEST_P(TransformProperty, Homogeneity) {
  Rng rng(static_cast<std::uint64_t>(GetParam()) + 400);
  for (int it = 0; it < 10; ++it) {
    const PLConvex1D f = random_pl(rng);
    const Rational l = small_rational(rng);
    // A(l f) = (Af) / l, A(f(. / l)) = (Af)(l .), L(l f) = l (Lf)(. / l)
    EXPECT_EQ(a_transform(scale(f, l)), scale(a_transform(f), 1 / l));
    EXPECT_EQ(a_transform(compose_dilate(f, l)), compose_dilate(a_transform(f), 1 / l));
    EXPECT_EQ(legendre(scale(f, l)), scale(compose_dilate(legendre(f), l), l));
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, TransformProperty, ::testing::Range(0, 5));
