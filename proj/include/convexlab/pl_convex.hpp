#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "convexlab/extended_value.hpp"
#include "convexlab/rational.hpp"

namespace convexlab {

// Cvx0 (geometric: f(0) = 0) or Cvx+ restricted to a half-line window.
enum class ClassTag { Geometric, NonNegative };

const char* to_string(ClassTag tag);

class InvalidFunction : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Knot {
  Rational x;
  Rational v;
  friend bool operator==(const Knot&, const Knot&) = default;
};

// Exact, lower semicontinuous, piecewise-linear convex function on [0, inf)
// with values in [0, +inf].
//
// The function interpolates the knots linearly and continues past the last
// knot with `tail_slope`; an infinite tail slope means the effective domain
// is [0, x_last] and the function is +inf beyond it. Instances are always in
// canonical form (no collinear knots, no knot made redundant by the tail), so
// operator== is equality of functions.
class PLConvex1D {
 public:
  PLConvex1D(std::vector<Knot> knots, ExactValue tail_slope,
             ClassTag tag = ClassTag::Geometric);

  const std::vector<Knot>& knots() const { return knots_; }
  const ExactValue& tail_slope() const { return tail_slope_; }
  ClassTag tag() const { return tag_; }

  bool bounded_domain() const { return tail_slope_.is_infinite(); }
  // Right end of the effective domain: x_last, or +inf.
  ExactValue domain_end() const;

  ExactValue eval(const Rational& x) const;
  ExtendedValue eval(double x) const;

  // Slope of the affine piece starting at x = 0 (the right derivative at 0).
  // +inf for functions finite only at the origin.
  ExactValue right_derivative_at_zero() const;

  // Slope of the piece that starts at knot i (i == last: the tail).
  ExactValue slope_after(std::size_t i) const;

  // All finite values are zero: 1_{[0,z]} for some z in [0, +inf].
  bool is_indicator() const;
  // Right end of the zero set {f = 0}; +inf when f vanishes on [0, inf).
  // Precondition: f(0) == 0.
  ExactValue zero_set_end() const;

  friend bool operator==(const PLConvex1D&, const PLConvex1D&) = default;

 private:
  std::vector<Knot> knots_;
  ExactValue tail_slope_;
  ClassTag tag_;
};

// Drops collinear interior knots and a last knot that lies on the tail ray.
// Validates ordering, non-negativity and convexity; throws InvalidFunction.
std::vector<Knot> canonical_knots(std::vector<Knot> knots, const ExactValue& tail_slope);

ExactValue eval(const PLConvex1D& f, const Rational& x);
ExtendedValue eval(const PLConvex1D& f, double x);

// Pointwise maximum. Effective domain is the intersection of domains.
PLConvex1D sup2(const PLConvex1D& f, const PLConvex1D& g);

// Largest convex lsc minorant of min(f, g): the lower convex envelope of the
// union of epigraphs.
PLConvex1D hat_inf2(const PLConvex1D& f, const PLConvex1D& g);

// Some x with f(x) > factor * g(x), if one exists. Decided exactly on the
// union of breakpoints plus the tails. +inf on the right absorbs any factor;
// a positive value against g(x) = 0 is a violation for every factor.
std::optional<Rational> find_violation(const PLConvex1D& f, const PLConvex1D& g,
                                       const Rational& factor);

// f <= factor * g everywhere on [0, inf). factor must be positive.
bool leq(const PLConvex1D& f, const PLConvex1D& g, const Rational& factor = Rational(1));

// lambda * f
PLConvex1D scale(const PLConvex1D& f, const Rational& lambda);
// x -> f(x / alpha)
PLConvex1D compose_dilate(const PLConvex1D& f, const Rational& alpha);

// Union of knot abscissae of f and g, ascending, no duplicates.
std::vector<Rational> merged_breakpoints(const PLConvex1D& f, const PLConvex1D& g);

std::string describe(const PLConvex1D& f);

}  // namespace convexlab
