#include <gtest/gtest.h>

#include <cmath>

#include "convexlab/corpus.hpp"
#include "convexlab/order_checks.hpp"
#include "convexlab/stability.hpp"
#include "convexlab/transforms.hpp"
#include "support/generators.hpp"

using namespace convexlab;

namespace {

std::vector<PLConvex1D> small_corpus(bool triangles = false) {
  CorpusSpec s;
  s.half_range = 4;
  s.triangles = triangles;
  return build_corpus(s);
}

Corpus1D exact(BaseTransform b, bool triangles = false) {
  return corpus_from_map(small_corpus(triangles), [b](const PLConvex1D& f) { return apply_base(b, f); },
                         to_string(b));
}

}  // namespace

TEST(Corpus, DefaultLayout) {
  const auto c = build_corpus(CorpusSpec{});
  EXPECT_EQ(c.size(), 68u);
  EXPECT_EQ(c[0], make_zero());
  EXPECT_EQ(c[1], make_indicator(0));
  EXPECT_EQ(c[2], make_indicator(Rational(1, 65536)));
  CorpusSpec bad;
  bad.ratio = 1;
  EXPECT_THROW(build_corpus(bad), ConfigurationError);
}

TEST(Corpus, LatticeTriplesAreClosed) {
  const auto c = small_corpus(true);
  const auto triples = designate_lattice_triples(c);
  ASSERT_FALSE(triples.empty());
  for (const auto& t : triples) {
    EXPECT_EQ(sup2(c[t.i], c[t.j]), c[static_cast<std::size_t>(t.sup)]);
    EXPECT_EQ(hat_inf2(c[t.i], c[t.j]), c[static_cast<std::size_t>(t.inf)]);
  }
}

TEST(Corpus, ValidateRejectsNonBijection) {
  Corpus1D t = exact(BaseTransform::Identity);
  t.mapping[1] = t.mapping[0];
  EXPECT_THROW(t.validate(), ConfigurationError);
  EXPECT_THROW(check_almost_preserving(t, AlmostOrderConstant(2.0)), ConfigurationError);
}

TEST(OrderCheckers, ExactTransformsCertifyAtOne) {
  const auto k = AlmostOrderConstant::exact();
  EXPECT_TRUE(check_almost_preserving(exact(BaseTransform::Identity, true), k).empty());
  EXPECT_TRUE(check_almost_preserving(exact(BaseTransform::Gauge, true), k).empty());
  EXPECT_TRUE(check_almost_reversing(exact(BaseTransform::Legendre, true), k).empty());
  EXPECT_TRUE(check_almost_reversing(exact(BaseTransform::A, true), k).empty());
  EXPECT_TRUE(check_inverse_conditions(exact(BaseTransform::Gauge, true), k).empty());
}

TEST(OrderCheckers, WrongOrientationIsCaught) {
  const auto k = AlmostOrderConstant(2.0);
  EXPECT_FALSE(check_almost_preserving(exact(BaseTransform::Legendre), k).empty());
  EXPECT_FALSE(check_almost_reversing(exact(BaseTransform::Gauge), k).empty());
}

TEST(OrderCheckers, LatticeStability) {
  const auto k = AlmostOrderConstant::exact();
  Corpus1D id = exact(BaseTransform::Identity, true);
  id.lattice_triples = designate_lattice_triples(id.domain);
  EXPECT_TRUE(check_lattice_stability(id, k).empty());
  Corpus1D a = exact(BaseTransform::A, true);
  a.lattice_triples = id.lattice_triples;
  EXPECT_TRUE(check_lattice_stability(a, k, true).empty());
  EXPECT_FALSE(check_lattice_stability(a, AlmostOrderConstant(1.5), false).empty());
  Corpus1D none = exact(BaseTransform::Identity);
  EXPECT_THROW(check_lattice_stability(none, k), ConfigurationError);
}

TEST(OrderCheckers, ResultsIndependentOfThreadSchedule) {
  Corpus1D t = fuzz_transform({3, BaseTransform::Identity, 1}, AlmostOrderConstant(2.0), small_corpus());
  // Swap two images to force violations, then compare repeated runs.
  std::swap(t.mapping[3], t.mapping[9]);
  const auto a = check_almost_preserving(t, AlmostOrderConstant(2.0));
  ASSERT_FALSE(a.empty());
  for (int rep = 0; rep < 3; ++rep) {
    const auto b = check_almost_preserving(t, AlmostOrderConstant(2.0));
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].i, b[i].i);
      EXPECT_EQ(a[i].j, b[i].j);
      EXPECT_EQ(a[i].witness, b[i].witness);
    }
  }
}

TEST(Extremes, Fixed) {
  EXPECT_TRUE(check_extremes(exact(BaseTransform::Gauge)));
  Corpus1D t = exact(BaseTransform::Identity);
  std::swap(t.mapping[0], t.mapping[1]);
  EXPECT_FALSE(check_extremes(t));
}

TEST(Jitter, BoundsAndDeterminism) {
  for (double c : {1.1, 1.5, 2.0}) {
    const AlmostOrderConstant k(c);
    Jitter a(9, k), b(9, k);
    EXPECT_LE(a.hi() / a.lo(), k.big());
    for (int i = 0; i < 200; ++i) {
      const Rational x = a.next();
      EXPECT_EQ(x, b.next());
      EXPECT_GE(x, a.lo());
      EXPECT_LE(x, a.hi());
    }
  }
}

TEST(RatioRange, Exact) {
  const auto r = ratio_range(PLConvex1D({{0, 0}, {1, 1}}, ExactValue(Rational(2))), make_linear(1));
  EXPECT_TRUE(r.constrained);
  EXPECT_TRUE(r.compatible);
  EXPECT_EQ(r.lo, 1);
  EXPECT_EQ(r.hi, 2);
  EXPECT_FALSE(ratio_range(make_indicator(1), make_indicator(1)).constrained);
  EXPECT_FALSE(ratio_range(make_indicator(1), make_indicator(2)).compatible);
  EXPECT_FALSE(ratio_range(make_linear(1), make_zero()).compatible);
}

TEST(Classify, ExactBases) {
  const auto k = AlmostOrderConstant(1.5);
  EXPECT_EQ(classify(exact(BaseTransform::Identity), k).type, Classification::IdentityType);
  EXPECT_EQ(classify(exact(BaseTransform::Gauge), k).type, Classification::GaugeType);
  EXPECT_EQ(classify_reversing(exact(BaseTransform::Legendre), k).type, Classification::ReversingLegendreType);
  EXPECT_EQ(classify_reversing(exact(BaseTransform::A), k).type, Classification::ReversingAType);
}

TEST(Classify, GaugeDilation) {
  // T f = (Jf)(2x): indicator 1_[0,z] maps to l_{1/(2z)}, so phi(z) = 1/(2z).
  const Corpus1D t = corpus_from_map(small_corpus(), [](const PLConvex1D& f) { return compose_dilate(j_transform(f), 2); },
                                     "J(2x)");
  const auto r = classify(t, AlmostOrderConstant(1.5));
  ASSERT_EQ(r.type, Classification::GaugeType);
  for (const auto& [z, phi] : r.samples.phi_exact) EXPECT_EQ(phi, 1 / (2 * z));
  const SandwichFit s = fit_sandwich(t, r, AlmostOrderConstant(1.5));
  EXPECT_TRUE(s.certified);
  EXPECT_TRUE(s.alpha_exact);
  EXPECT_EQ(s.alpha, 2);
  EXPECT_EQ(s.c, 1);
  EXPECT_EQ(s.big_c, ExactValue(Rational(1)));
}

TEST(Classify, SplitIndicatorImagesAreInconsistent) {
  Corpus1D t = exact(BaseTransform::Identity);
  // send one indicator to a linear function
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t.domain[i] == make_indicator(1)) t.codomain[t.mapping[i]] = make_linear(1);
  }
  const auto r = classify(t, AlmostOrderConstant(1.5));
  EXPECT_EQ(r.type, Classification::Inconsistent);
  EXPECT_FALSE(r.diagnostics.empty());
}

TEST(Fuzz, DeterministicPerSeed) {
  const AlmostOrderConstant k(1.5);
  const auto dom = small_corpus();
  const Corpus1D a = fuzz_transform({42, BaseTransform::Gauge, 1}, k, dom);
  const Corpus1D b = fuzz_transform({42, BaseTransform::Gauge, 1}, k, dom);
  const Corpus1D c = fuzz_transform({43, BaseTransform::Gauge, 1}, k, dom);
  EXPECT_EQ(a.codomain, b.codomain);
  EXPECT_EQ(a.mapping, b.mapping);
  EXPECT_NE(a.mapping, c.mapping);
}

TEST(Fuzz, ImagesWithinJitterOfBase) {
  const AlmostOrderConstant k(2.0);
  const auto dom = small_corpus();
  const Corpus1D t = fuzz_transform({5, BaseTransform::Identity, Rational(3, 2)}, k, dom);
  for (std::size_t i = 0; i < t.size(); ++i) {
    const PLConvex1D ref = compose_dilate(t.domain[i], Rational(3, 2));
    EXPECT_TRUE(leq(t.image(i), ref, k.big()));
    EXPECT_TRUE(leq(ref, t.image(i), k.big()));
  }
}

TEST(Analyze, FuzzedPipeline) {
  for (auto base : {BaseTransform::Identity, BaseTransform::Gauge, BaseTransform::Legendre, BaseTransform::A}) {
    const AlmostOrderConstant k(1.5);
    CorpusSpec spec;
    const Corpus1D t = fuzz_transform({11, base, 1}, k, build_corpus(spec));
    const StabilityReport r = analyze(t, k, is_reversing(base), spec.describe());
    const Classification want[] = {Classification::IdentityType, Classification::GaugeType,
                                   Classification::ReversingLegendreType, Classification::ReversingAType};
    EXPECT_EQ(r.classification, want[static_cast<int>(base)]) << to_string(base);
    EXPECT_TRUE(r.violations.empty());
    ASSERT_TRUE(r.exponent);
    const bool gauge_like = base == BaseTransform::Gauge || base == BaseTransform::Legendre;
    EXPECT_NEAR(r.exponent->gamma, gauge_like ? -1.0 : 1.0, 0.05);
    ASSERT_TRUE(r.sandwich);
    EXPECT_TRUE(r.sandwich->certified);
    EXPECT_LE(r.sandwich->ratio, 1.5 * 1.5);
    const auto j = to_json(r);
    EXPECT_EQ(j.at("classification"), to_string(r.classification));
  }
}

TEST(Analyze, BrokenTransformIsInconsistent) {
  const AlmostOrderConstant k(1.5);
  Corpus1D t = exact(BaseTransform::Identity);
  std::swap(t.mapping[4], t.mapping[7]);
  const StabilityReport r = analyze(t, k, false, "swapped");
  EXPECT_EQ(r.classification, Classification::Inconsistent);
  EXPECT_FALSE(r.violations.empty());
}

TEST(BaseTransforms, ParseAndApply) {
  EXPECT_EQ(parse_base("j"), BaseTransform::Gauge);
  EXPECT_THROW(parse_base("moreau"), std::invalid_argument);
  EXPECT_TRUE(is_reversing(BaseTransform::A));
  EXPECT_EQ(apply_base(BaseTransform::Legendre, make_linear(2)), make_indicator(2));
}
