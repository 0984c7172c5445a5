#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "convexlab/extremal.hpp"
#include "convexlab/stability.hpp"
#include "support/generators.hpp"

using namespace convexlab;
using convexlab::testing::random_pl;
using convexlab::testing::Rng;

TEST(Ptilde, LinearAndIndicatorsHaveNoWitness) {
  const AlmostOrderConstant k(2.0);
  EXPECT_FALSE(ptilde_witness_search(make_linear(3), k));
  EXPECT_FALSE(ptilde_witness_search(make_indicator(2), k));
  EXPECT_FALSE(ptilde_witness_search(make_zero(), k));
  EXPECT_FALSE(ptilde_witness_search(make_indicator(0), k));
  EXPECT_TRUE(almost_linear_bounds(make_linear(3), k));
  EXPECT_THROW(almost_linear_bounds(make_indicator(1), k), ClassificationError);
}

TEST(Ptilde, TriangleFails) {
  const AlmostOrderConstant k(2.0);
  const PLConvex1D f = make_triangle(2, 1);
  const auto w = ptilde_witness_search(f, k);
  ASSERT_TRUE(w);
  EXPECT_TRUE(leq(f, sup2(w->g, w->h)));
  EXPECT_FALSE(leq(f, w->g, k.power(3)));
  EXPECT_FALSE(leq(f, w->h, k.power(3)));
  EXPECT_FALSE(almost_linear_bounds(f, k));
}

TEST(Ptilde, NearlyLinearPasses) {
  const AlmostOrderConstant k(1.5);
  // slopes 1 then 3: f(x) <= 3x <= C~^3 x
  const PLConvex1D f({{0, 0}, {1, 1}}, ExactValue(Rational(3)));
  EXPECT_TRUE(almost_linear_bounds(f, k));
  EXPECT_FALSE(ptilde_witness_search(f, k));
}

class PtildeProperty : public ::testing::TestWithParam<double> {};

// Without a witness a non-indicator must be almost linear; a witness must be
// a genuine certificate.
TEST_P(PtildeProperty, WitnessOrAlmostLinear) {
  const AlmostOrderConstant k(GetParam());
  Rng rng(static_cast<std::uint64_t>(GetParam() * 1000));
  for (int it = 0; it < 100; ++it) {
    const PLConvex1D f = random_pl(rng);
    if (f.is_indicator()) continue;
    const auto w = ptilde_witness_search(f, k);
    if (!w) {
      EXPECT_TRUE(almost_linear_bounds(f, k)) << describe(f);
      continue;
    }
    EXPECT_TRUE(leq(f, sup2(w->g, w->h))) << describe(f);
    EXPECT_FALSE(leq(f, w->g, k.power(3))) << describe(f);
    EXPECT_FALSE(leq(f, w->h, k.power(3))) << describe(f);
  }
}

INSTANTIATE_TEST_SUITE_P(Constants, PtildeProperty, ::testing::Values(1.1, 1.5, 2.0, 4.0));

TEST(MonotoneEnvelope, RunningMaximum) {
  const std::vector<Sample> s{{0, 1}, {1, 3}, {2, 2}, {3, 2.5}, {4, 5}};
  const auto g = monotone_envelope(s);
  const std::vector<double> want{1, 3, 3, 3, 5};
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(g[i].v, want[i]);
  EXPECT_FALSE(c_monotone_violation(s, 1.5));
  EXPECT_TRUE(c_monotone_violation(s, 1.4));
  EXPECT_THROW(monotone_envelope(s, 1.4), std::invalid_argument);
}

TEST(MonotoneEnvelope, SandwichOnRandomSets) {
  Rng rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int it = 0; it < 50; ++it) {
    const double c = 1.0 + 2.0 * u(rng);
    std::vector<Sample> s;
    double m = u(rng);
    for (int i = 0; i < 40; ++i) {
      m += u(rng) * (u(rng) < 0.3 ? 1.0 : 0.0);
      s.push_back({static_cast<double>(i), m * std::pow(c, u(rng) - 0.5)});
    }
    const auto g = monotone_envelope(s, c);
    for (std::size_t i = 0; i < s.size(); ++i) {
      EXPECT_LE(s[i].v, g[i].v);
      EXPECT_LE(g[i].v / c, s[i].v * (1 + 1e-12));
      if (i > 0) EXPECT_LE(g[i - 1].v, g[i].v);
    }
  }
}

namespace {

std::vector<QuasiLinearSample> quasi_samples(Rng& rng, double c, double beta, bool jitter) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<QuasiLinearSample> out;
  for (int xi = -1; xi <= 1; ++xi) {
    for (int ai = 0; ai <= 4; ++ai) {
      Eigen::VectorXd x(1);
      x << xi;
      const double a = 0.5 * ai;
      const double j = jitter ? std::pow(c, u(rng) - 0.5) : 1.0;
      out.push_back({x, a, beta * a * j});
    }
  }
  return out;
}

}  // namespace

TEST(QuasiLinear, ExactScalingRecoversBeta) {
  Rng rng(3);
  const auto r = quasi_linear_sandwich(quasi_samples(rng, 1.5, 2.5, false), 1.5);
  ASSERT_TRUE(r.ok);
  EXPECT_NEAR(r.beta, 2.5, 1e-12);
  EXPECT_NEAR(r.spread, 1.0, 1e-12);
}

TEST(QuasiLinear, JitteredWithinConstant) {
  Rng rng(4);
  for (double c : {1.1, 1.5, 2.0}) {
    const auto r = quasi_linear_sandwich(quasi_samples(rng, c, 0.75, true), c);
    ASSERT_TRUE(r.ok);
    EXPECT_LE(r.spread, c * (1 + 1e-12));
    EXPECT_GE(r.beta, 0.75 / std::sqrt(c));
    EXPECT_LE(r.beta, 0.75 * std::sqrt(c));
  }
}

TEST(QuasiLinear, FlagsNonzeroAtZeroAndBrokenTriples) {
  Rng rng(5);
  auto s = quasi_samples(rng, 1.5, 1.0, false);
  s[0].h = 0.3;  // a = 0
  EXPECT_FALSE(quasi_linear_sandwich(s, 1.5).ok);
  auto t = quasi_samples(rng, 1.5, 1.0, false);
  t[2].h *= 10;  // a middle sample far off the line
  const auto r = quasi_linear_sandwich(t, 1.5);
  EXPECT_FALSE(r.ok);
  ASSERT_TRUE(r.violation);
}

TEST(HyersUlam, RecoversSlopeOfJitteredLine) {
  Rng rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int it = 0; it < 20; ++it) {
    const double slope = 4 * u(rng), eps = 0.05;
    std::vector<Sample> s;
    for (int k = -32; k <= 32; ++k) s.push_back({0.25 * k, slope * 0.25 * k + eps / 3 * u(rng)});
    const auto r = hyers_ulam_approx(s, eps);
    ASSERT_FALSE(r.violation);
    EXPECT_LE(r.sup_error, eps);
    EXPECT_NEAR(r.slope, slope, eps / 0.25);
    EXPECT_EQ(r.n, 5);
  }
}

TEST(HyersUlam, ReportsDefect) {
  std::vector<Sample> s;
  for (int k = -4; k <= 4; ++k) s.push_back({1.0 * k, 1.0 * k * k});
  const auto r = hyers_ulam_approx(s, 0.5);
  ASSERT_TRUE(r.violation);
  EXPECT_GT(r.violation->defect, 0.5);
  EXPECT_THROW(hyers_ulam_approx({{0, 0}, {1, 1}}, 0.1), std::invalid_argument);
  EXPECT_THROW(hyers_ulam_approx({{-1, 0}, {0, 0}, {2, 1}}, 0.1), std::invalid_argument);
}

TEST(Exponent, PurePowers) {
  for (double gamma : {-1.0, 1.0, 0.5}) {
    std::vector<std::pair<double, double>> s;
    for (int k = -8; k <= 8; ++k) s.emplace_back(std::ldexp(1.0, k), 3.0 * std::pow(std::ldexp(1.0, k), gamma));
    const auto e = estimate_exponent(s);
    EXPECT_NEAR(e.gamma, gamma, 1e-9);
    EXPECT_NEAR(e.cauchy_defect, std::log(3.0), 1e-9);
  }
}

TEST(Exponent, JitterBound) {
  Rng rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double c = 2.0;
  std::vector<std::pair<double, double>> s;
  for (int k = -16; k <= 16; ++k) {
    const double z = std::ldexp(1.0, k);
    s.emplace_back(z, std::pow(c, u(rng) - 0.5) / z);
  }
  const auto e = estimate_exponent(s);
  // defect <= 3/2 log C~ spread over 2^n rho = 2^4 * log 2 in log-scale
  EXPECT_LE(std::fabs(e.gamma + 1.0), 1.5 * std::log(c) / (16 * std::log(2.0)));
}

TEST(Exponent, RejectsBadGrid) {
  EXPECT_THROW(estimate_exponent({{0.5, 1}, {1, 1}, {3, 1}}), std::invalid_argument);
  EXPECT_THROW(estimate_exponent({{0.5, 0}, {1, 1}, {2, 1}}), std::invalid_argument);
}
