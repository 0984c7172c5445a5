#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <type_traits>

#include "convexlab/rational.hpp"

namespace convexlab {

class ExtendedArithmeticError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A non-negative value or +infinity. The codomain of every function handled
// by the library. Negative values are not representable.
template <class T>
class Extended {
 public:
  Extended() = default;
  Extended(T v) : value_(std::move(v)) {  // NOLINT(google-explicit-constructor)
    if (value_ < 0) throw ExtendedArithmeticError("negative extended value");
  }

  static Extended infinity() {
    Extended e;
    e.infinite_ = true;
    return e;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  // Precondition: is_finite().
  const T& value() const {
    if (infinite_) throw ExtendedArithmeticError("value() of +inf");
    return value_;
  }

  friend Extended operator+(const Extended& a, const Extended& b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Extended(T(a.value_ + b.value_));
  }

  // Positive scaling. 0 * inf is rejected.
  friend Extended operator*(const T& s, const Extended& a) {
    if (s < 0) throw ExtendedArithmeticError("negative scale factor");
    if (a.infinite_) {
      if (s == 0) throw ExtendedArithmeticError("0 * inf is undefined");
      return infinity();
    }
    return Extended(T(s * a.value_));
  }

  friend bool operator==(const Extended& a, const Extended& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend bool operator<(const Extended& a, const Extended& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const Extended& a, const Extended& b) { return !(b < a); }
  friend bool operator>(const Extended& a, const Extended& b) { return b < a; }
  friend bool operator>=(const Extended& a, const Extended& b) { return !(a < b); }

  double to_double() const {
    if (infinite_) return std::numeric_limits<double>::infinity();
    if constexpr (std::is_same_v<T, Rational>) {
      return value_.get_d();
    } else {
      return static_cast<double>(value_);
    }
  }

 private:
  T value_{0};
  bool infinite_ = false;
};

using ExtendedValue = Extended<double>;
using ExactValue = Extended<Rational>;

inline ExtendedValue from_double(double v) {
  if (std::isinf(v) && v > 0) return ExtendedValue::infinity();
  if (std::isnan(v)) throw ExtendedArithmeticError("NaN is not an extended value");
  return ExtendedValue(v);
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Extended<T>& e) {
  if (e.is_infinite()) return os << "inf";
  if constexpr (std::is_same_v<T, Rational>) {
    return os << to_string(e.value());
  } else {
    return os << e.value();
  }
}

}  // namespace convexlab
