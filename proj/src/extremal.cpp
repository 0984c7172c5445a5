#include "convexlab/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace convexlab {

PLConvex1D make_indicator(const Rational& z) {
  if (z < 0) throw std::invalid_argument("make_indicator: negative support");
  if (z == 0) return PLConvex1D({{0, 0}}, ExactValue::infinity());
  return PLConvex1D({{0, 0}, {z, 0}}, ExactValue::infinity());
}

PLConvex1D make_zero() { return PLConvex1D({{0, 0}}, ExactValue(Rational(0))); }

PLConvex1D make_linear(const Rational& a) {
  if (a < 0) throw std::invalid_argument("make_linear: negative slope");
  return PLConvex1D({{0, 0}}, ExactValue(a));
}

PLConvex1D make_triangle(const Rational& z, const Rational& a) {
  if (z <= 0) throw std::invalid_argument("make_triangle: base must be positive");
  if (a < 0) throw std::invalid_argument("make_triangle: negative slope");
  return PLConvex1D({{0, 0}, {z, a * z}}, ExactValue::infinity());
}

PLConvex1D make_triangle_by_endpoint(const Rational& z, const Rational& c) {
  if (z <= 0) throw std::invalid_argument("make_triangle_by_endpoint: base must be positive");
  return make_triangle(z, c / z);
}

double DeltaFunction::eval(const Eigen::VectorXd& x) const {
  if (x.size() != theta.size()) throw std::invalid_argument("DeltaFunction: dimension mismatch");
  return x == theta ? value : std::numeric_limits<double>::infinity();
}

DeltaFunction make_delta(double theta, double c) {
  Eigen::VectorXd t(1);
  t << theta;
  return make_delta(std::move(t), c);
}

DeltaFunction make_delta(Eigen::VectorXd theta, double c) {
  if (!(c >= 0) || !std::isfinite(c)) throw std::invalid_argument("make_delta: c must be finite and >= 0");
  if (!theta.allFinite()) throw std::invalid_argument("make_delta: theta must be finite");
  return DeltaFunction{std::move(theta), c};
}

// ---------------------------------------------------------------------------
// Relative property P~

namespace {

// Where the line of slope r through the origin meets f on its increasing
// part, if it does (f convex, geometric).
std::optional<Rational> meet_ray(const PLConvex1D& f, const Rational& r) {
  const auto& ks = f.knots();
  for (std::size_t i = 0; i < ks.size(); ++i) {
    const bool last = i + 1 == ks.size();
    if (last && f.bounded_domain()) break;
    const Rational s = last ? f.tail_slope().value() : (ks[i + 1].v - ks[i].v) / (ks[i + 1].x - ks[i].x);
    if (s == r) continue;
    Rational x = (ks[i].v - s * ks[i].x) / (r - s);
    if (x <= ks[i].x || x <= 0) continue;
    if (!last && x > ks[i + 1].x) continue;
    return x;
  }
  return std::nullopt;
}

}  // namespace

std::optional<WitnessPair> ptilde_witness_search(const PLConvex1D& f,
                                                 const AlmostOrderConstant& k) {
  if (f.tag() != ClassTag::Geometric) throw std::invalid_argument("ptilde: f must be geometric");
  const Rational big3 = k.power(3);
  const Rational small3 = k.power(-3);

  std::vector<Rational> probes;
  for (const auto& kn : f.knots()) {
    if (kn.x > 0) probes.push_back(kn.x);
  }
  const Rational xlast = f.knots().back().x;
  if (!f.bounded_domain()) {
    probes.push_back(xlast + 1);
    probes.push_back(2 * xlast + 1);
  }

  std::vector<Rational> xs = probes;
  for (const auto& p : probes) {
    xs.push_back(p * small3);
    xs.push_back(p * big3);
    // The chord through (p, f(p)) scaled by c~^3 meets f at a support endpoint
    // that splits f.
    const ExactValue fp = f.eval(p);
    if (fp.is_finite() && fp.value() > 0) {
      if (auto x = meet_ray(f, small3 * fp.value() / p)) xs.push_back(*x);
    }
  }
  double lo = 1e-3;
  double hi = 1e3;
  if (!probes.empty()) {
    lo = std::min(lo, probes.front().get_d() / 100.0);
    hi = std::max(hi, probes.back().get_d() * 100.0);
  }
  for (int i = 0; i < 33; ++i) {
    xs.push_back(to_rational(lo * std::pow(hi / lo, i / 32.0)));
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  for (const auto& x : xs) {
    if (x <= 0) continue;
    const ExactValue fx = f.eval(x);
    if (fx.is_infinite() || fx.value() == 0) continue;
    // f(t)/t is nondecreasing, so f(x)/x is the least slope whose line
    // covers f on [0,x]; larger slopes only make g dominate more.
    const Rational a = fx.value() / x;
    PLConvex1D g = make_linear(a);
    PLConvex1D h = make_indicator(x);
    if (!leq(f, sup2(g, h))) continue;
    if (leq(f, g, big3)) continue;
    if (leq(f, h, big3)) continue;
    return WitnessPair{std::move(g), std::move(h), a, x};
  }
  return std::nullopt;
}

bool almost_linear_bounds(const PLConvex1D& f, const AlmostOrderConstant& k) {
  if (f.is_indicator()) throw ClassificationError("almost_linear_bounds: f is an indicator");
  if (f.tag() != ClassTag::Geometric) throw std::invalid_argument("almost_linear_bounds: f must be geometric");
  const ExactValue d0 = f.right_derivative_at_zero();
  if (d0.is_infinite() || d0.value() == 0) return false;
  if (f.bounded_domain()) return false;
  const Rational upper = k.power(3) * d0.value();
  for (const auto& kn : f.knots()) {
    if (kn.v < d0.value() * kn.x || kn.v > upper * kn.x) return false;
  }
  return f.tail_slope().value() <= upper;
}

// ---------------------------------------------------------------------------
// Almost-monotone lemma

namespace {

void require_ascending(const std::vector<Sample>& samples) {
  for (std::size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i - 1].x < samples[i].x)) {
      throw std::invalid_argument("monotone_envelope: x values must be strictly ascending");
    }
  }
}

}  // namespace

std::vector<Sample> monotone_envelope(const std::vector<Sample>& samples) {
  require_ascending(samples);
  std::vector<Sample> g;
  g.reserve(samples.size());
  double run = -std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    run = std::max(run, s.v);
    g.push_back({s.x, run});
  }
  return g;
}

std::optional<std::pair<std::size_t, std::size_t>> c_monotone_violation(
    const std::vector<Sample>& samples, double c) {
  // Comparing each point against the running maximum of its prefix finds
  // the first violating j; its partner is where that maximum was reached.
  std::size_t argmax = 0;
  for (std::size_t j = 1; j < samples.size(); ++j) {
    if (samples[j - 1].v > samples[argmax].v) argmax = j - 1;
    if (samples[argmax].v > c * samples[j].v) return std::make_pair(argmax, j);
  }
  return std::nullopt;
}

std::vector<Sample> monotone_envelope(const std::vector<Sample>& samples, double c) {
  require_ascending(samples);
  if (!(c >= 1)) throw std::invalid_argument("monotone_envelope: C must be >= 1");
  if (auto bad = c_monotone_violation(samples, c)) {
    throw std::invalid_argument("monotone_envelope: input is not C-monotone at pair (" +
                                std::to_string(bad->first) + ", " + std::to_string(bad->second) + ")");
  }
  return monotone_envelope(samples);
}

// ---------------------------------------------------------------------------
// Quasi-linear height lemma

namespace {

Eigen::VectorXd lift(const QuasiLinearSample& s) {
  Eigen::VectorXd p(s.x.size() + 1);
  p << s.x, s.a;
  return p;
}

// lambda with m = lambda p + (1 - lambda) q and 0 < lambda < 1, if any.
std::optional<double> combination(const Eigen::VectorXd& p, const Eigen::VectorXd& q,
                                  const Eigen::VectorXd& m) {
  const Eigen::VectorXd d = p - q;
  Eigen::Index axis = 0;
  d.cwiseAbs().maxCoeff(&axis);
  if (d(axis) == 0) return std::nullopt;
  const double lambda = (m(axis) - q(axis)) / d(axis);
  if (!(lambda > 0 && lambda < 1)) return std::nullopt;
  const double scale = 1.0 + p.cwiseAbs().maxCoeff() + q.cwiseAbs().maxCoeff();
  if ((lambda * p + (1 - lambda) * q - m).cwiseAbs().maxCoeff() > 1e-9 * scale) return std::nullopt;
  return lambda;
}

}  // namespace

QuasiLinearResult quasi_linear_sandwich(const std::vector<QuasiLinearSample>& samples, double c) {
  if (!(c > 1)) throw std::invalid_argument("quasi_linear_sandwich: C must exceed 1");
  QuasiLinearResult out;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].a < 0 || samples[i].h < 0) throw std::invalid_argument("quasi_linear_sandwich: negative sample");
    if (samples[i].a == 0 && std::fabs(samples[i].h) > 1e-12) {
      out.violation = TripleViolation{i, i, i, 0.0, "h(x, 0) != 0"};
      return out;
    }
  }

  std::vector<Eigen::VectorXd> pts;
  pts.reserve(samples.size());
  for (const auto& s : samples) pts.push_back(lift(s));

  const std::size_t n = samples.size();
  // First violation per endpoint i; the smallest i wins so the reported
  // triple does not depend on the thread schedule.
  std::vector<std::optional<TripleViolation>> found(n);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n && !found[i]; ++j) {
      for (std::size_t m = 0; m < n; ++m) {
        if (m == i || m == j) continue;
        const auto lambda = combination(pts[i], pts[j], pts[m]);
        if (!lambda) continue;
        const double mix = *lambda * samples[i].h + (1 - *lambda) * samples[j].h;
        const double hm = samples[m].h;
        const double slack = 1e-12 * (1.0 + mix);
        if (mix / c > hm + slack || hm > c * mix + slack) {
          found[i] = TripleViolation{i, j, m, *lambda, "quasi convex-combination inequality fails"};
          break;
        }
      }
    }
  }
  for (auto& v : found) {
    if (v) {
      out.violation = std::move(v);
      return out;
    }
  }

  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& s : samples) {
    if (s.a == 0) continue;
    const double r = s.h / s.a;
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  if (hi == 0.0 && std::isinf(lo)) {
    // Only a = 0 samples: nothing constrains the slope.
    out.c_prime = 1.0;
    out.spread = 1.0;
    out.beta = 1.0;
    out.ok = true;
    return out;
  }
  if (lo == 0.0) {
    out.c_prime = std::numeric_limits<double>::infinity();
    out.spread = std::numeric_limits<double>::infinity();
    return out;
  }
  out.c_prime = std::max(hi, 1.0 / lo);
  out.spread = hi / lo;
  out.beta = std::sqrt(hi * lo);
  out.ok = std::isfinite(out.c_prime);
  return out;
}

}  // namespace convexlab
