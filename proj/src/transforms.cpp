#include "convexlab/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace convexlab {

PLConvex1D upper_envelope(std::vector<Line> lines, const ExactValue& domain_end) {
  if (lines.empty()) throw std::invalid_argument("upper_envelope: no lines");
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    return a.slope < b.slope || (a.slope == b.slope && a.intercept < b.intercept);
  });
  // Keep the highest line of each slope.
  std::vector<Line> uniq;
  for (auto& l : lines) {
    if (!uniq.empty() && uniq.back().slope == l.slope) {
      uniq.back() = std::move(l);
    } else {
      uniq.push_back(std::move(l));
    }
  }

  std::size_t cur = 0;
  for (std::size_t i = 1; i < uniq.size(); ++i) {
    if (uniq[i].intercept >= uniq[cur].intercept) cur = i;
  }

  std::vector<Knot> knots{{Rational(0), uniq[cur].intercept}};
  while (true) {
    std::optional<std::size_t> next;
    Rational next_x;
    for (std::size_t j = cur + 1; j < uniq.size(); ++j) {
      Rational x = (uniq[cur].intercept - uniq[j].intercept) / (uniq[j].slope - uniq[cur].slope);
      if (!next || x <= next_x) {
        next = j;
        next_x = std::move(x);
      }
    }
    if (!next) break;
    if (domain_end.is_finite() && next_x >= domain_end.value()) break;
    if (next_x > knots.back().x) {
      knots.push_back({next_x, uniq[*next].slope * next_x + uniq[*next].intercept});
    }
    cur = *next;
  }

  if (domain_end.is_infinite()) {
    return PLConvex1D(std::move(knots), ExactValue(uniq[cur].slope));
  }
  const Rational& end = domain_end.value();
  if (knots.back().x < end) {
    knots.push_back({end, uniq[cur].slope * end + uniq[cur].intercept});
  }
  return PLConvex1D(std::move(knots), ExactValue::infinity());
}

namespace {

void require_geometric(const PLConvex1D& f, const char* op) {
  if (f.tag() != ClassTag::Geometric) {
    throw std::invalid_argument(std::string(op) + ": input must be geometric");
  }
}

}  // namespace

PLConvex1D legendre(const PLConvex1D& f) {
  require_geometric(f, "legendre");
  std::vector<Line> lines;
  lines.reserve(f.knots().size());
  for (const auto& k : f.knots()) lines.push_back({k.x, Rational(-k.v)});
  // Slopes x beyond the tail slope make x*y - f(y) unbounded.
  return upper_envelope(std::move(lines), f.tail_slope());
}

PLConvex1D a_transform(const PLConvex1D& f) {
  require_geometric(f, "a_transform");
  const ExactValue z0 = f.zero_set_end();
  ExactValue polar_end;
  if (z0.is_infinite()) {
    polar_end = ExactValue(Rational(0));
  } else if (z0.value() == 0) {
    polar_end = ExactValue::infinity();
  } else {
    polar_end = ExactValue(Rational(1) / z0.value());
  }

  // (x*y - 1)/f(y) is a Moebius function of y on every affine piece, so the
  // sup over a piece sits at a knot or in the y -> inf limit x/m.
  std::vector<Line> lines{{Rational(0), Rational(0)}};
  for (const auto& k : f.knots()) {
    if (k.v > 0) lines.push_back({k.x / k.v, Rational(-1) / k.v});
  }
  if (f.tail_slope().is_finite() && f.tail_slope().value() > 0) {
    lines.push_back({Rational(1) / f.tail_slope().value(), Rational(0)});
  }
  return upper_envelope(std::move(lines), polar_end);
}

std::vector<double> j_check_points(const PLConvex1D&, int count) {
  std::vector<double> ys;
  ys.reserve(count);
  for (int k = 0; k < count; ++k) {
    ys.push_back(std::pow(10.0, -3.0 + 6.0 * k / (count - 1)));
  }
  return ys;
}

bool j_agrees(double composed, double parametric, double rel_tol) {
  if (std::isinf(composed) || std::isinf(parametric)) {
    return std::isinf(composed) && std::isinf(parametric);
  }
  const double scale = std::max(std::fabs(composed), std::fabs(parametric));
  return std::fabs(composed - parametric) <= rel_tol * scale + 1e-12;
}

double j_parametric(const PLConvex1D& f, double y) {
  if (y < 0) throw std::domain_error("j_parametric: negative argument");
  if (y == 0) return 0.0;

  std::vector<double> xs;
  std::vector<double> vs;
  for (const auto& k : f.knots()) {
    xs.push_back(k.x.get_d());
    vs.push_back(k.v.get_d());
  }
  const bool bounded = f.bounded_domain();
  const double tail = bounded ? 0.0 : f.tail_slope().value().get_d();
  auto value = [&](double x) {
    if (x >= xs.back()) {
      if (x == xs.back()) return vs.back();
      if (bounded) return std::numeric_limits<double>::infinity();
      return vs.back() + tail * (x - xs.back());
    }
    const auto i = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
    const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return vs[i - 1] + t * (vs[i] - vs[i - 1]);
  };
  // {x : y f(x) <= x} is an interval [0, x*] because y f(x) - x is convex
  // and vanishes at the origin.
  auto inside = [&](double x) {
    const double v = value(x);
    return std::isfinite(v) && y * v <= x;
  };

  double lo = 0.0;
  double hi = 1.0;
  while (inside(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e300) return 0.0;
  }
  for (int it = 0; it < 1100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (inside(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (lo > 0 && hi - lo <= 1e-15 * hi) break;
  }
  if (lo == 0.0) return std::numeric_limits<double>::infinity();
  return y / lo;
}

PLConvex1D j_transform(const PLConvex1D& f, bool cross_check) {
  PLConvex1D j = legendre(a_transform(f));
  if (cross_check) {
    for (double y : j_check_points(f)) {
      const double composed = j.eval(y).to_double();
      const double direct = j_parametric(f, y);
      if (!j_agrees(composed, direct)) {
        std::ostringstream os;
        os.precision(17);
        os << "j_transform: composition and parametric formula disagree at y = " << y
           << " (" << composed << " vs " << direct << ") for " << describe(f);
        throw TransformConsistencyError(os.str());
      }
    }
  }
  return j;
}

}  // namespace convexlab
