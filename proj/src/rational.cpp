#include "convexlab/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace convexlab {

Rational to_rational(double v) {
  if (!std::isfinite(v)) throw std::domain_error("to_rational: non-finite value");
  Rational q(v);
  q.canonicalize();
  return q;
}

double to_double(const Rational& q) { return q.get_d(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  const auto dot = s.find('.');
  const auto exp = s.find_first_of("eE");
  if (dot == std::string::npos && exp == std::string::npos) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
  }

  // Decimal literal: mantissa digits over a power of ten, then exponent.
  std::string mantissa = exp == std::string::npos ? s : s.substr(0, exp);
  long exponent = 0;
  if (exp != std::string::npos) {
    try {
      exponent = std::stol(s.substr(exp + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad exponent in literal: " + s);
    }
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
    negative = mantissa[0] == '-';
    mantissa = mantissa.substr(1);
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false;
  for (char c : mantissa) {
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("bad decimal literal: " + s);
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
    } else {
      throw std::invalid_argument("bad decimal literal: " + s);
    }
  }
  if (digits.empty()) throw std::invalid_argument("bad decimal literal: " + s);
  mpz_class num(digits, 10);
  const long shift = exponent - frac_digits;
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
  Rational q = shift >= 0 ? Rational(num * ten_pow) : Rational(num, ten_pow);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

bool is_double_exact(const Rational& q) {
  const double d = q.get_d();
  if (!std::isfinite(d)) return false;
  return Rational(d) == q;
}

}  // namespace convexlab
