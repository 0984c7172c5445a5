#pragma once

#include <stdexcept>
#include <vector>

#include "convexlab/pl_convex.hpp"

namespace convexlab {

class TransformConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An affine function x -> slope * x + intercept.
struct Line {
  Rational slope;
  Rational intercept;
};

// Upper envelope of finitely many lines, restricted to [0, domain_end].
// The result must be non-negative with value 0 at the origin (geometric).
PLConvex1D upper_envelope(std::vector<Line> lines, const ExactValue& domain_end);

// Legendre transform restricted to the half-line: sup_{y >= 0} (x*y - f(y)).
PLConvex1D legendre(const PLConvex1D& f);

// Geometric duality. On the polar of the zero set [0, z0] the value is
//   sup over y with f(y) > 0 of (x*y - 1) / f(y),
// where points with f(y) = +inf contribute 0 (so sup of the empty set is 0),
// and +inf outside the polar.
PLConvex1D a_transform(const PLConvex1D& f);

// Gauge transform, computed as legendre(a_transform(f)). When `cross_check`
// is set the result is compared against j_parametric at 64 log-spaced
// points and a TransformConsistencyError is thrown on disagreement.
PLConvex1D j_transform(const PLConvex1D& f, bool cross_check = false);

// Pointwise evaluation of the gauge transform straight from its parametric
// description: the infimum of t / f(x) over x, t in [0,1] with
// y = t * x / f(x). Equivalently y / sup{x : y * f(x) <= x}. Found by
// bracketing and bisection on double evaluations of f; independent of the
// legendre/a_transform route.
double j_parametric(const PLConvex1D& f, double y);

// Sample points used by the cross-check.
std::vector<double> j_check_points(const PLConvex1D& f, int count = 64);

// Relative agreement used by the cross-check (both infinite counts as equal).
bool j_agrees(double composed, double parametric, double rel_tol = 1e-6);

}  // namespace convexlab
