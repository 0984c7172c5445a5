#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "convexlab/delta.hpp"

using namespace convexlab;

namespace {

// T(D_theta + c) = D_{A theta + b} + beta c u, u in [C^-1/2, C^1/2].
DeltaCorpus affine_corpus(const Eigen::Matrix2d& A, const Eigen::Vector2d& b, double beta, double c, unsigned seed,
                          bool cubic = false) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  DeltaCorpus t;
  for (int i = -2; i <= 2; ++i) {
    for (int j = -2; j <= 2; ++j) {
      for (double val : {0.0, 0.5, 1.0, 2.0}) {
        Eigen::VectorXd th(2);
        th << 0.5 * i, 0.25 * j;
        Eigen::VectorXd img = A * th + b;
        if (cubic) img(0) = th(0) * th(0) * th(0);
        t.domain.push_back(make_delta(th, val));
        t.codomain.push_back({{make_delta(img, beta * val * std::pow(c, u(rng) - 0.5))}});
        t.mapping.push_back(t.mapping.size());
      }
    }
  }
  return t;
}

}  // namespace

TEST(Delta, Evaluate) {
  const DeltaFunction d = make_delta(1.5, 2.0);
  Eigen::VectorXd x(1);
  x << 1.5;
  EXPECT_EQ(d.eval(x), 2.0);
  x << 1.0;
  EXPECT_TRUE(std::isinf(d.eval(x)));
}

TEST(DeltaStructure, RecoversAffineMapAndScaling) {
  Eigen::Matrix2d A;
  A << 2, 1, -1, 0.5;
  const Eigen::Vector2d b(0.25, -3);
  for (double c : {1.1, 1.5, 2.0}) {
    const auto r = check_delta_structure(affine_corpus(A, b, 1.75, c, 7), AlmostOrderConstant(c));
    ASSERT_TRUE(r.ok()) << to_json(r).dump();
    EXPECT_LE((r.A - A).cwiseAbs().maxCoeff(), 1e-6);
    EXPECT_LE((r.b - b).cwiseAbs().maxCoeff(), 1e-6);
    EXPECT_GE(r.beta, 1.75 / std::sqrt(c));
    EXPECT_LE(r.beta, 1.75 * std::sqrt(c));
  }
}

TEST(DeltaStructure, FlagsNonAffinePointMap) {
  const auto r = check_delta_structure(affine_corpus(Eigen::Matrix2d::Identity(), Eigen::Vector2d::Zero(), 1.0, 1.5, 1, true),
                                       AlmostOrderConstant(1.5));
  EXPECT_FALSE(r.affine_ok);
  EXPECT_FALSE(r.ok());
  EXPECT_GT(r.residual, 1e-3);
}

TEST(DeltaStructure, FlagsNonDeltaImagesAndSplitFibres) {
  DeltaCorpus t = affine_corpus(Eigen::Matrix2d::Identity(), Eigen::Vector2d::Zero(), 1.0, 1.5, 1);
  t.codomain[0].atoms.push_back(make_delta(Eigen::VectorXd::Ones(2) * 9, 1.0));
  EXPECT_FALSE(check_delta_structure(t, AlmostOrderConstant(1.5)).violations.empty());

  DeltaCorpus s = affine_corpus(Eigen::Matrix2d::Identity(), Eigen::Vector2d::Zero(), 1.0, 1.5, 1);
  s.codomain[1].atoms[0].theta(0) += 0.1;  // same base point as codomain[0], other image point
  const auto r = check_delta_structure(s, AlmostOrderConstant(1.5));
  ASSERT_FALSE(r.violations.empty());
  EXPECT_NE(r.violations.front().find("split"), std::string::npos);
}

TEST(DeltaStructure, QuasiLinearHypothesisFailure) {
  DeltaCorpus t = affine_corpus(Eigen::Matrix2d::Identity(), Eigen::Vector2d::Zero(), 1.0, 1.1, 2);
  t.codomain[2].atoms[0].value *= 5;  // value 1.0 sample, far off the line through its neighbours
  const auto r = check_delta_structure(t, AlmostOrderConstant(1.1));
  EXPECT_TRUE(r.affine_ok);
  EXPECT_FALSE(r.psi.ok);
  EXPECT_FALSE(r.ok());
}
