#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "convexlab/almost_order.hpp"
#include "convexlab/corpus.hpp"
#include "convexlab/extremal.hpp"
#include "convexlab/order_checks.hpp"

namespace convexlab {

enum class Classification { IdentityType, GaugeType, ReversingLegendreType, ReversingAType, Inconsistent };
enum class BaseTransform { Identity, Gauge, Legendre, A };

const char* to_string(Classification c);
const char* to_string(BaseTransform b);
BaseTransform parse_base(const std::string& s);

bool is_reversing(BaseTransform b);

// ---------------------------------------------------------------------------
// Hyers-Ulam and exponents

struct HuViolation {
  std::size_t i = 0;
  std::size_t j = 0;
  double defect = 0.0;  // |f(x_i + x_j) - f(x_i) - f(x_j)|
};

struct HyersUlamResult {
  double delta = 0.0;          // grid spacing: x_k = k delta, k = -K..K
  std::vector<double> x;
  std::vector<double> g;       // 2^-n f(2^n x) at the largest in-range n per point
  int n = 0;                   // the n used at x = +-delta
  double slope = 0.0;          // (g(delta) - g(-delta)) / (2 delta)
  double sup_error = 0.0;      // max |f - g| over the grid
  std::optional<HuViolation> violation;
};

// samples: a symmetric uniform grid containing 0. Verifies the additive
// defect on every in-range pair; on failure only `violation` is set.
HyersUlamResult hyers_ulam_approx(const std::vector<Sample>& samples, double eps);

struct ExponentEstimate {
  double gamma = 0.0;
  double cauchy_defect = 0.0;  // max |h(s+t) - h(s) - h(t)|, h(s) = log phi(e^s)
  double sup_error = 0.0;      // Hyers-Ulam deviation of h from its additive part
  int n = 0;
};

// phi samples (z, phi(z)) on a multiplicative grid z = rho^k, k = -K..K
// (any order). Throws std::invalid_argument on non-positive samples or a
// non-geometric grid.
ExponentEstimate estimate_exponent(const std::vector<std::pair<double, double>>& samples);

// ---------------------------------------------------------------------------
// Classification and sandwich

struct IndicatorMap {
  std::vector<std::pair<double, double>> phi;  // z -> phi(z)
  std::vector<std::pair<double, double>> c;    // a -> c(a)
  // Exact counterparts, used for dilation fitting.
  std::vector<std::pair<Rational, Rational>> phi_exact;
  std::vector<std::pair<Rational, Rational>> c_exact;
};

struct ClassificationResult {
  Classification type = Classification::Inconsistent;
  IndicatorMap samples;
  std::vector<std::string> diagnostics;
};

// Inspects the images of the indicators 1_[0,z] (0 < z < inf) and linear
// functions l_a (a > 0) in the corpus.
ClassificationResult classify(const Corpus1D& t, const AlmostOrderConstant& k);

// Composes with the geometric dual (which is homogeneous) and classifies the
// result: identity type means T behaves like the dual itself, gauge type like
// the Legendre transform.
ClassificationResult classify_reversing(const Corpus1D& t, const AlmostOrderConstant& k);

// A o T as a corpus transform (same domain).
Corpus1D compose_with_dual(const Corpus1D& t);

struct RatioRange {
  Rational lo = 0;
  Rational hi = 0;
  bool constrained = false;  // false when num and den agree on {0, +inf}
  bool compatible = true;    // false when a zero or infinity is unmatched
};

// Infimum and supremum of num(x) / den(x) over points where either is finite
// and positive; exact for PL inputs.
RatioRange ratio_range(const PLConvex1D& num, const PLConvex1D& den);

struct SandwichFit {
  Rational alpha = 1;
  Rational c = 0;
  ExactValue big_c = ExactValue(Rational(0));
  bool alpha_exact = false;  // every indicator ratio agreed
  bool certified = false;    // re-verified with leq on every corpus function
  bool flagged = false;      // C / c > C~^10 or unbounded
  double ratio = 0.0;        // C / c
  double ctilde7 = 0.0;      // C~^7, reported alongside
  std::vector<std::string> diagnostics;
};

// IdentityType compares Tf with f(x / alpha); GaugeType with (Jf)(x / alpha).
SandwichFit fit_sandwich(const Corpus1D& t, const ClassificationResult& cls, const AlmostOrderConstant& k);

// ---------------------------------------------------------------------------
// Fuzzing and the full pipeline

// Deterministic jitter in [C~^-1/2, C~^1/2], clamped so every ratio of two
// draws is at most C~ exactly.
class Jitter {
 public:
  Jitter(std::uint64_t seed, const AlmostOrderConstant& k);
  Rational next();
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }

 private:
  std::mt19937_64 rng_;
  double ctilde_;
  Rational lo_, hi_;
};

struct FuzzConfig {
  std::uint64_t seed = 0;
  BaseTransform base = BaseTransform::Identity;
  Rational alpha = 1;
};

// T f = kappa(f) * (B f)(x / alpha), codomain shuffled by the seed; checked
// with the matching order checker before return.
class FuzzConstructionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

Corpus1D fuzz_transform(const FuzzConfig& cfg, const AlmostOrderConstant& k, const std::vector<PLConvex1D>& domain);

PLConvex1D apply_base(BaseTransform b, const PLConvex1D& f);

struct StabilityReport {
  Classification classification = Classification::Inconsistent;
  std::string corpus;
  Provenance provenance;
  double ctilde = 1.0;
  bool reversing = false;
  std::vector<ConditionViolation> violations;
  std::vector<ConditionViolation> inverse_violations;
  std::vector<ConditionViolation> lattice_violations;
  std::optional<bool> extremes_ok;
  ClassificationResult classification_detail;
  std::optional<SandwichFit> sandwich;
  std::optional<ExponentEstimate> exponent;
  std::vector<std::string> diagnostics;
};

// Runs the order checkers, classification, exponent estimate and sandwich
// fit. Checker violations make the classification Inconsistent.
StabilityReport analyze(const Corpus1D& t, const AlmostOrderConstant& k, bool reversing,
                        const std::string& corpus_description);

nlohmann::json to_json(const StabilityReport& r);
nlohmann::json to_json(const ConditionViolation& v);

}  // namespace convexlab
