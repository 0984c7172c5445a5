#pragma once

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "convexlab/almost_order.hpp"
#include "convexlab/pl_convex.hpp"

namespace convexlab {

class ClassificationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// 1_{[0,z]}: 0 on [0,z], +inf beyond. z = 0 gives 1_{0}, the maximal element.
PLConvex1D make_indicator(const Rational& z);
// The zero function, i.e. the indicator of the whole half-line.
PLConvex1D make_zero();
// l_a(x) = a x.
PLConvex1D make_linear(const Rational& a);
// max(l_a, 1_{[0,z]}): slope a on [0,z]. This is the one-dimensional
// convention; make_triangle_by_endpoint takes the value at z instead.
PLConvex1D make_triangle(const Rational& z, const Rational& a);
PLConvex1D make_triangle_by_endpoint(const Rational& z, const Rational& c);

// D_theta + c: value c at theta, +inf elsewhere.
struct DeltaFunction {
  Eigen::VectorXd theta;
  double value = 0.0;

  double eval(const Eigen::VectorXd& x) const;
};

DeltaFunction make_delta(double theta, double c);
DeltaFunction make_delta(Eigen::VectorXd theta, double c);

// Failure certificate for relative property P~ at a given C~:
// max(g, h) >= f while neither g nor h dominates c~^3 f.
struct WitnessPair {
  PLConvex1D g;  // linear
  PLConvex1D h;  // indicator
  Rational slope;
  Rational support;
};

// Searches the (linear, indicator) witness family. An empty result means f
// passes P~ relative to that family, not that it has P~ outright.
std::optional<WitnessPair> ptilde_witness_search(const PLConvex1D& f,
                                                 const AlmostOrderConstant& k);

// Checks f'(0+) z <= f(z) <= C~^3 f'(0+) z for every z >= 0 (so a bounded
// effective domain fails). Throws ClassificationError for indicators.
bool almost_linear_bounds(const PLConvex1D& f, const AlmostOrderConstant& k);

struct Sample {
  double x;
  double v;
};

// Running maximum g(x) = max_{y <= x} f(y) over ascending samples.
std::vector<Sample> monotone_envelope(const std::vector<Sample>& samples);

// First pair (i, j), i < j, with f(x_i) > C f(x_j); empty if C-monotone.
std::optional<std::pair<std::size_t, std::size_t>> c_monotone_violation(
    const std::vector<Sample>& samples, double c);

// Validates C-monotonicity and returns the running maximum, which then
// satisfies g / C <= f <= g. Throws std::invalid_argument otherwise.
std::vector<Sample> monotone_envelope(const std::vector<Sample>& samples, double c);

struct QuasiLinearSample {
  Eigen::VectorXd x;
  double a = 0.0;
  double h = 0.0;
};

struct TripleViolation {
  std::size_t first = 0;   // endpoint
  std::size_t second = 0;  // endpoint
  std::size_t middle = 0;  // the convex combination
  double lambda = 0.0;
  std::string what;
};

struct QuasiLinearResult {
  double c_prime = 0.0;  // smallest C' with a/C' <= h <= C' a on the samples
  double spread = 0.0;   // max(h/a) / min(h/a): the constant after the best rescaling
  double beta = 0.0;     // geometric midpoint of the ratio range
  bool ok = false;
  std::optional<TripleViolation> violation;
};

// Verifies h(x,0) = 0 and the two-sided quasi convex-combination inequality
// with constant C on every collinear sample triple, then fits C'.
QuasiLinearResult quasi_linear_sandwich(const std::vector<QuasiLinearSample>& samples, double c);

}  // namespace convexlab
