#include "convexlab/pl_convex.hpp"

#include <algorithm>
#include <sstream>

namespace convexlab {

namespace {

Rational chord(const Knot& a, const Knot& b) { return (b.v - a.v) / (b.x - a.x); }

// Value at x of the piece that starts at knot i.
Rational affine_at(const Knot& k, const Rational& slope, const Rational& x) {
  return k.v + slope * (x - k.x);
}

}  // namespace

const char* to_string(ClassTag tag) {
  return tag == ClassTag::Geometric ? "geometric" : "nonnegative";
}

std::vector<Knot> canonical_knots(std::vector<Knot> knots, const ExactValue& tail_slope) {
  if (knots.empty()) throw InvalidFunction("a function needs at least one knot");
  if (knots.front().x != 0) throw InvalidFunction("first knot must sit at x = 0");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (knots[i].v < 0) throw InvalidFunction("negative value at knot " + std::to_string(i));
    if (i > 0 && !(knots[i - 1].x < knots[i].x)) {
      throw InvalidFunction("knot abscissae must be strictly ascending");
    }
  }

  std::vector<Knot> out;
  out.reserve(knots.size());
  for (auto& k : knots) {
    while (out.size() >= 2) {
      const Rational left = chord(out[out.size() - 2], out.back());
      const Rational right = chord(out.back(), k);
      if (left > right) throw InvalidFunction("chord slopes decrease: not convex");
      if (left == right) {
        out.pop_back();
      } else {
        break;
      }
    }
    out.push_back(std::move(k));
  }

  if (out.size() >= 2 && tail_slope.is_finite()) {
    const Rational last = chord(out[out.size() - 2], out.back());
    if (last > tail_slope.value()) throw InvalidFunction("tail slope below last chord slope");
    if (last == tail_slope.value()) out.pop_back();
  }
  return out;
}

PLConvex1D::PLConvex1D(std::vector<Knot> knots, ExactValue tail_slope, ClassTag tag)
    : knots_(canonical_knots(std::move(knots), tail_slope)),
      tail_slope_(std::move(tail_slope)),
      tag_(tag) {
  if (tag_ == ClassTag::Geometric && knots_.front().v != 0) {
    throw InvalidFunction("geometric function must vanish at the origin");
  }
}

ExactValue PLConvex1D::domain_end() const {
  if (bounded_domain()) return ExactValue(knots_.back().x);
  return ExactValue::infinity();
}

ExactValue PLConvex1D::slope_after(std::size_t i) const {
  if (i + 1 >= knots_.size()) return tail_slope_;
  const Rational s = chord(knots_[i], knots_[i + 1]);
  if (s < 0) {
    // Only reachable for NonNegative functions; callers that need signed
    // slopes use chord() on the knots directly.
    throw ExtendedArithmeticError("negative slope is not an extended value");
  }
  return ExactValue(s);
}

ExactValue PLConvex1D::right_derivative_at_zero() const { return slope_after(0); }

bool PLConvex1D::is_indicator() const {
  for (const auto& k : knots_) {
    if (k.v != 0) return false;
  }
  return tail_slope_.is_infinite() || tail_slope_.value() == 0;
}

ExactValue PLConvex1D::zero_set_end() const {
  if (knots_.front().v != 0) throw InvalidFunction("zero_set_end: f(0) != 0");
  std::size_t i = 0;
  while (i + 1 < knots_.size() && knots_[i + 1].v == 0) ++i;
  if (i + 1 == knots_.size() && tail_slope_.is_finite() && tail_slope_.value() == 0) {
    return ExactValue::infinity();
  }
  return ExactValue(knots_[i].x);
}

ExactValue PLConvex1D::eval(const Rational& x) const {
  if (x < 0) throw std::domain_error("eval: negative argument");
  const Knot& last = knots_.back();
  if (x >= last.x) {
    if (x == last.x) return ExactValue(last.v);
    if (tail_slope_.is_infinite()) return ExactValue::infinity();
    return ExactValue(affine_at(last, tail_slope_.value(), x));
  }
  auto it = std::upper_bound(knots_.begin(), knots_.end(), x,
                             [](const Rational& v, const Knot& k) { return v < k.x; });
  const Knot& right = *it;
  const Knot& left = *(it - 1);
  const Rational value = affine_at(left, chord(left, right), x);
  return ExactValue(value < 0 ? Rational(0) : value);
}

ExtendedValue PLConvex1D::eval(double x) const {
  if (x < 0) throw std::domain_error("eval: negative argument");
  return from_double(eval(to_rational(x)).to_double());
}

ExactValue eval(const PLConvex1D& f, const Rational& x) { return f.eval(x); }
ExtendedValue eval(const PLConvex1D& f, double x) { return f.eval(x); }

std::vector<Rational> merged_breakpoints(const PLConvex1D& f, const PLConvex1D& g) {
  std::vector<Rational> xs;
  xs.reserve(f.knots().size() + g.knots().size());
  for (const auto& k : f.knots()) xs.push_back(k.x);
  for (const auto& k : g.knots()) xs.push_back(k.x);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

namespace {

void require_same_tag(const PLConvex1D& f, const PLConvex1D& g, const char* op) {
  if (f.tag() != g.tag()) throw InvalidFunction(std::string(op) + ": class tags differ");
}

// Signed tail slope (finite tails only).
const Rational& tail_of(const PLConvex1D& f) { return f.tail_slope().value(); }

}  // namespace

PLConvex1D sup2(const PLConvex1D& f, const PLConvex1D& g) {
  require_same_tag(f, g, "sup2");
  const ExactValue end = std::min(f.domain_end(), g.domain_end());

  std::vector<Rational> xs;
  for (auto& x : merged_breakpoints(f, g)) {
    if (ExactValue(x) <= end) xs.push_back(x);
  }
  if (end.is_finite() && xs.back() != end.value()) xs.push_back(end.value());

  auto diff = [&](const Rational& x) -> Rational { return f.eval(x).value() - g.eval(x).value(); };

  std::vector<Rational> points;
  points.push_back(xs.front());
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const Rational da = diff(xs[i - 1]);
    const Rational db = diff(xs[i]);
    if ((da < 0 && db > 0) || (da > 0 && db < 0)) {
      points.push_back(xs[i - 1] + (xs[i] - xs[i - 1]) * da / (da - db));
    }
    points.push_back(xs[i]);
  }

  ExactValue tail = ExactValue::infinity();
  if (end.is_infinite()) {
    const Rational& x = xs.back();
    const Rational d = diff(x);
    const Rational dm = tail_of(f) - tail_of(g);
    if ((d < 0 && dm > 0) || (d > 0 && dm < 0)) points.push_back(x - d / dm);
    tail = std::max(f.tail_slope(), g.tail_slope());
  }

  std::vector<Knot> knots;
  knots.reserve(points.size());
  for (auto& x : points) {
    knots.push_back({x, std::max(f.eval(x), g.eval(x)).value()});
  }
  return PLConvex1D(std::move(knots), tail, f.tag());
}

PLConvex1D hat_inf2(const PLConvex1D& f, const PLConvex1D& g) {
  require_same_tag(f, g, "hat_inf2");

  std::vector<Knot> pts;
  pts.insert(pts.end(), f.knots().begin(), f.knots().end());
  pts.insert(pts.end(), g.knots().begin(), g.knots().end());
  std::sort(pts.begin(), pts.end(), [](const Knot& a, const Knot& b) {
    return a.x < b.x || (a.x == b.x && a.v < b.v);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Knot& a, const Knot& b) { return a.x == b.x; }),
            pts.end());

  // Recession slope of the envelope: the flattest unbounded tail.
  std::optional<Rational> ray;
  for (const auto* h : {&f, &g}) {
    if (!h->bounded_domain() && (!ray || tail_of(*h) < *ray)) ray = tail_of(*h);
  }
  if (ray) {
    // Leftmost point touched by the supporting line of slope `ray`; nothing to
    // its right survives in the envelope.
    std::size_t best = 0;
    Rational best_val = pts[0].v - *ray * pts[0].x;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      Rational val = pts[i].v - *ray * pts[i].x;
      if (val < best_val) {
        best_val = std::move(val);
        best = i;
      }
    }
    pts.resize(best + 1);
  }

  // Monotone-chain lower hull.
  std::vector<Knot> hull;
  for (auto& p : pts) {
    while (hull.size() >= 2) {
      const Knot& a = hull[hull.size() - 2];
      const Knot& b = hull.back();
      // Remove b when it lies on or above segment a-p.
      const Rational cross = (b.x - a.x) * (p.v - a.v) - (b.v - a.v) * (p.x - a.x);
      if (cross <= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }

  ExactValue tail = ray ? ExactValue(*ray) : ExactValue::infinity();
  return PLConvex1D(std::move(hull), tail, f.tag());
}

std::optional<Rational> find_violation(const PLConvex1D& f, const PLConvex1D& g,
                                       const Rational& factor) {
  if (factor <= 0) throw std::invalid_argument("leq: factor must be positive");
  const ExactValue fend = f.domain_end();
  const ExactValue gend = g.domain_end();
  if (fend < gend) {
    // f = +inf on (fend, gend] while g is finite there.
    if (gend.is_infinite()) return fend.value() + 1;
    return (fend.value() + gend.value()) / 2;
  }

  std::vector<Rational> xs;
  for (auto& x : merged_breakpoints(f, g)) {
    if (ExactValue(x) <= gend) xs.push_back(x);
  }
  if (gend.is_finite() && xs.back() != gend.value()) xs.push_back(gend.value());

  for (const auto& x : xs) {
    if (f.eval(x).value() > factor * g.eval(x).value()) return x;
  }
  if (gend.is_infinite()) {
    const Rational& x = xs.back();
    const Rational slack = factor * g.eval(x).value() - f.eval(x).value();
    const Rational dm = tail_of(f) - factor * tail_of(g);
    if (dm > 0) return x + slack / dm + 1;
  }
  return std::nullopt;
}

bool leq(const PLConvex1D& f, const PLConvex1D& g, const Rational& factor) {
  return !find_violation(f, g, factor).has_value();
}

PLConvex1D scale(const PLConvex1D& f, const Rational& lambda) {
  if (lambda <= 0) throw std::invalid_argument("scale: lambda must be positive");
  std::vector<Knot> knots = f.knots();
  for (auto& k : knots) k.v *= lambda;
  ExactValue tail = f.tail_slope().is_infinite() ? f.tail_slope()
                                                 : ExactValue(f.tail_slope().value() * lambda);
  return PLConvex1D(std::move(knots), tail, f.tag());
}

PLConvex1D compose_dilate(const PLConvex1D& f, const Rational& alpha) {
  if (alpha <= 0) throw std::invalid_argument("compose_dilate: alpha must be positive");
  std::vector<Knot> knots = f.knots();
  for (auto& k : knots) k.x *= alpha;
  ExactValue tail = f.tail_slope().is_infinite() ? f.tail_slope()
                                                 : ExactValue(f.tail_slope().value() / alpha);
  return PLConvex1D(std::move(knots), tail, f.tag());
}

std::string describe(const PLConvex1D& f) {
  std::ostringstream os;
  os << to_string(f.tag()) << " knots[";
  for (std::size_t i = 0; i < f.knots().size(); ++i) {
    if (i) os << ", ";
    os << "(" << to_string(f.knots()[i].x) << "," << to_string(f.knots()[i].v) << ")";
  }
  os << "] tail " << f.tail_slope();
  return os.str();
}

}  // namespace convexlab
