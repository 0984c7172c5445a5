#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace convexlab {

// Exact scalar used by the one-dimensional piecewise-linear calculus.
using Rational = mpq_class;

// Every finite double is a dyadic rational, so this conversion is exact.
Rational to_rational(double v);

double to_double(const Rational& q);

// Accepts "3", "-2/7", "0.25" (decimal literals are parsed exactly, i.e.
// "0.1" is 1/10 and not the nearest double).
Rational parse_rational(std::string_view text);

// Canonical "p/q" or "p" form.
std::string to_string(const Rational& q);

// True when q is exactly representable as a double.
bool is_double_exact(const Rational& q);

inline Rational rabs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace convexlab
