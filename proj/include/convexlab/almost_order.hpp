#pragma once

#include <stdexcept>

#include "convexlab/rational.hpp"

namespace convexlab {

// The slack constant C~ > 1 of the almost order preserving/reversing
// conditions, together with c~ = 1/C~. Both are held exactly so that
// comparisons such as f <= c~ g are decided without rounding.
class AlmostOrderConstant {
 public:
  explicit AlmostOrderConstant(double ctilde) : big_(to_rational(ctilde)) {
    if (!(ctilde > 1.0)) throw std::invalid_argument("almost-order constant must exceed 1");
    small_ = Rational(1) / big_;
  }

  // The order preserving limit C~ = 1. Only used to certify exact transforms.
  static AlmostOrderConstant exact() { return AlmostOrderConstant(); }

  double value() const { return big_.get_d(); }
  const Rational& big() const { return big_; }
  const Rational& small() const { return small_; }

  // C~^e for any integer e (negative powers are powers of c~).
  Rational power(int e) const {
    Rational r(1);
    const Rational& base = e >= 0 ? big_ : small_;
    for (int i = 0; i < (e >= 0 ? e : -e); ++i) r *= base;
    return r;
  }

 private:
  AlmostOrderConstant() : big_(1), small_(1) {}
  Rational big_;
  Rational small_;
};

}  // namespace convexlab
