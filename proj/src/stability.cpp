#include "convexlab/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "convexlab/spec_io.hpp"
#include "convexlab/transforms.hpp"

namespace convexlab {

const char* to_string(Classification c) {
  switch (c) {
    case Classification::IdentityType: return "IdentityType";
    case Classification::GaugeType: return "GaugeType";
    case Classification::ReversingLegendreType: return "ReversingLegendreType";
    case Classification::ReversingAType: return "ReversingAType";
    case Classification::Inconsistent: return "Inconsistent";
  }
  return "?";
}

const char* to_string(BaseTransform b) {
  switch (b) {
    case BaseTransform::Identity: return "identity";
    case BaseTransform::Gauge: return "gauge";
    case BaseTransform::Legendre: return "legendre";
    case BaseTransform::A: return "a";
  }
  return "?";
}

BaseTransform parse_base(const std::string& s) {
  if (s == "identity") return BaseTransform::Identity;
  if (s == "gauge" || s == "j") return BaseTransform::Gauge;
  if (s == "legendre") return BaseTransform::Legendre;
  if (s == "a") return BaseTransform::A;
  throw std::invalid_argument("unknown base transform \"" + s + "\"");
}

bool is_reversing(BaseTransform b) { return b == BaseTransform::Legendre || b == BaseTransform::A; }

// ---------------------------------------------------------------------------
// Hyers-Ulam

HyersUlamResult hyers_ulam_approx(const std::vector<Sample>& samples, double eps) {
  const std::size_t n = samples.size();
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("hyers_ulam_approx: need an odd number (>= 3) of samples");
  if (!(eps >= 0)) throw std::invalid_argument("hyers_ulam_approx: eps must be >= 0");
  const long K = static_cast<long>(n - 1) / 2;
  const double delta = samples[static_cast<std::size_t>(K) + 1].x;
  if (!(delta > 0)) throw std::invalid_argument("hyers_ulam_approx: samples must ascend");
  for (std::size_t i = 0; i < n; ++i) {
    const double expect = static_cast<double>(static_cast<long>(i) - K) * delta;
    if (std::fabs(samples[i].x - expect) > 1e-9 * delta * (1.0 + std::fabs(expect / delta))) {
      throw std::invalid_argument("hyers_ulam_approx: samples must form a symmetric uniform grid through 0");
    }
    if (!std::isfinite(samples[i].v)) throw std::invalid_argument("hyers_ulam_approx: non-finite sample");
  }
  auto f = [&](long k) { return samples[static_cast<std::size_t>(k + K)].v; };

  HyersUlamResult out;
  out.delta = delta;
  for (long a = -K; a <= K; ++a) {
    for (long b = -K; b <= K; ++b) {
      if (a + b < -K || a + b > K) continue;
      const double d = std::fabs(f(a + b) - f(a) - f(b));
      const double scale = std::fabs(f(a + b)) + std::fabs(f(a)) + std::fabs(f(b));
      if (d > eps + 1e-12 * (1.0 + scale)) {
        out.violation = HuViolation{static_cast<std::size_t>(a + K), static_cast<std::size_t>(b + K), d};
        return out;
      }
    }
  }

  out.x.resize(n);
  out.g.resize(n);
  for (long k = -K; k <= K; ++k) {
    const auto i = static_cast<std::size_t>(k + K);
    out.x[i] = samples[i].x;
    if (k == 0) {
      out.g[i] = 0.0;  // 2^-n f(0) -> 0
    } else {
      int m = 0;
      while ((std::labs(k) << (m + 1)) <= K) ++m;
      out.g[i] = f(k << m) / std::ldexp(1.0, m);
      if (std::labs(k) == 1) out.n = m;
    }
    out.sup_error = std::max(out.sup_error, std::fabs(samples[i].v - out.g[i]));
  }
  out.slope = (out.g[static_cast<std::size_t>(K) + 1] - out.g[static_cast<std::size_t>(K) - 1]) / (2.0 * delta);
  return out;
}

ExponentEstimate estimate_exponent(const std::vector<std::pair<double, double>>& samples) {
  auto sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("estimate_exponent: need an odd number (>= 3) of samples");
  for (const auto& [z, p] : sorted) {
    if (!(z > 0) || !(p > 0) || !std::isfinite(z) || !std::isfinite(p)) {
      throw std::invalid_argument("estimate_exponent: samples must be positive and finite");
    }
  }
  const long K = static_cast<long>(n - 1) / 2;
  const double delta = std::log(sorted[static_cast<std::size_t>(K) + 1].first);
  if (std::fabs(std::log(sorted[static_cast<std::size_t>(K)].first)) > 1e-9 || !(delta > 0)) {
    throw std::invalid_argument("estimate_exponent: grid must be z = rho^k, k = -K..K");
  }
  std::vector<Sample> h(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = std::log(sorted[i].first);
    const double expect = static_cast<double>(static_cast<long>(i) - K) * delta;
    if (std::fabs(s - expect) > 1e-9 * (1.0 + std::fabs(expect))) {
      throw std::invalid_argument("estimate_exponent: grid must be z = rho^k, k = -K..K");
    }
    h[i] = {expect, std::log(sorted[i].second)};
  }
  ExponentEstimate out;
  for (long a = -K; a <= K; ++a) {
    for (long b = -K; b <= K; ++b) {
      if (a + b < -K || a + b > K) continue;
      const double d = h[static_cast<std::size_t>(a + b + K)].v - h[static_cast<std::size_t>(a + K)].v -
                       h[static_cast<std::size_t>(b + K)].v;
      out.cauchy_defect = std::max(out.cauchy_defect, std::fabs(d));
    }
  }
  const HyersUlamResult hu = hyers_ulam_approx(h, out.cauchy_defect * (1 + 1e-12) + 1e-300);
  if (hu.violation) throw std::logic_error("estimate_exponent: defect bound did not verify");
  out.gamma = hu.slope;
  out.sup_error = hu.sup_error;
  out.n = hu.n;
  return out;
}

// ---------------------------------------------------------------------------
// Classification

namespace {

bool is_finite_indicator(const PLConvex1D& f) {
  return f.tag() == ClassTag::Geometric && f.is_indicator() && f.bounded_domain() && f.knots().back().x > 0;
}

bool is_positive_linear(const PLConvex1D& f) {
  return f.tag() == ClassTag::Geometric && f.knots().size() == 1 && !f.bounded_domain() && f.tail_slope().value() > 0;
}

}  // namespace

ClassificationResult classify(const Corpus1D& t, const AlmostOrderConstant& k) {
  t.validate();
  ClassificationResult out;
  std::optional<std::size_t> first_ind, first_lin;
  bool broken = false;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const PLConvex1D& f = t.domain[i];
    if (!is_finite_indicator(f)) continue;
    const Rational z = f.knots().back().x;
    const PLConvex1D& img = t.image(i);
    Rational phi;
    if (is_finite_indicator(img)) {
      phi = img.knots().back().x;
      if (!first_ind) first_ind = i;
    } else if (!img.is_indicator() && almost_linear_bounds(img, k)) {
      phi = img.right_derivative_at_zero().value();
      if (!first_lin) first_lin = i;
    } else {
      out.diagnostics.push_back("image of 1_[0," + to_string(z) + "] is neither an indicator nor almost linear: " +
                                describe(img));
      broken = true;
      continue;
    }
    out.samples.phi_exact.emplace_back(z, phi);
    out.samples.phi.emplace_back(z.get_d(), phi.get_d());
  }
  if (first_ind && first_lin) {
    out.diagnostics.push_back("indicator images split: " + describe(t.domain[*first_ind]) + " -> indicator, " +
                              describe(t.domain[*first_lin]) + " -> almost linear");
    broken = true;
  }
  if (!first_ind && !first_lin) {
    out.diagnostics.push_back("corpus has no finite indicators");
    broken = true;
  }
  if (broken) return out;
  out.type = first_ind ? Classification::IdentityType : Classification::GaugeType;

  for (std::size_t i = 0; i < t.size(); ++i) {
    const PLConvex1D& f = t.domain[i];
    if (!is_positive_linear(f)) continue;
    const Rational a = f.tail_slope().value();
    const PLConvex1D& img = t.image(i);
    std::optional<Rational> c;
    if (out.type == Classification::IdentityType) {
      const ExactValue d = img.right_derivative_at_zero();
      if (!img.is_indicator() && d.is_finite() && d.value() > 0) c = d.value();
    } else if (is_finite_indicator(img)) {
      c = img.knots().back().x;
    }
    if (!c) {
      out.diagnostics.push_back("image of l_" + to_string(a) + " does not fit the type: " + describe(img));
      out.type = Classification::Inconsistent;
      continue;
    }
    out.samples.c_exact.emplace_back(a, *c);
    out.samples.c.emplace_back(a.get_d(), c->get_d());
  }
  return out;
}

Corpus1D compose_with_dual(const Corpus1D& t) {
  Corpus1D s = t;
  for (auto& g : s.codomain) g = a_transform(g);
  s.provenance.generator = "A o (" + t.provenance.generator + ")";
  return s;
}

ClassificationResult classify_reversing(const Corpus1D& t, const AlmostOrderConstant& k) {
  ClassificationResult r = classify(compose_with_dual(t), k);
  if (r.type == Classification::IdentityType) {
    r.type = Classification::ReversingAType;
  } else if (r.type == Classification::GaugeType) {
    r.type = Classification::ReversingLegendreType;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Sandwich

RatioRange ratio_range(const PLConvex1D& num, const PLConvex1D& den) {
  RatioRange r;
  auto include = [&](const Rational& q) {
    if (!r.constrained) {
      r.lo = r.hi = q;
      r.constrained = true;
    } else {
      r.lo = std::min(r.lo, q);
      r.hi = std::max(r.hi, q);
    }
  };
  if (!(num.domain_end() == den.domain_end())) {
    r.compatible = false;
    return r;
  }
  const ExactValue end = num.domain_end();
  std::vector<Rational> xs;
  for (const auto& x : merged_breakpoints(num, den)) {
    if (end.is_infinite() || x <= end.value()) xs.push_back(x);
  }
  // Slopes of the affine pieces on either side of x.
  auto side_slopes = [](const PLConvex1D& f, const Rational& x, bool right) -> std::optional<Rational> {
    const auto& ks = f.knots();
    std::size_t piece = 0;
    while (piece + 1 < ks.size() && (right ? ks[piece + 1].x <= x : ks[piece + 1].x < x)) ++piece;
    if (!right && x == 0) return std::nullopt;
    const ExactValue s = f.slope_after(piece);
    if (s.is_infinite()) return std::nullopt;
    return s.value();
  };
  for (const auto& x : xs) {
    const Rational a = num.eval(x).value();
    const Rational b = den.eval(x).value();
    if (a == 0 && b == 0) {
      for (bool right : {true, false}) {
        const auto sa = side_slopes(num, x, right);
        const auto sb = side_slopes(den, x, right);
        if (!sa || !sb) continue;
        if (*sa == 0 && *sb == 0) continue;
        if (*sa == 0 || *sb == 0) {
          r.compatible = false;
          continue;
        }
        include(*sa / *sb);
      }
    } else if (a == 0 || b == 0) {
      r.compatible = false;
    } else {
      include(a / b);
    }
  }
  if (end.is_infinite()) {
    const Rational ta = num.tail_slope().value();
    const Rational tb = den.tail_slope().value();
    if (ta > 0 && tb > 0) {
      include(ta / tb);
    } else if (ta > 0 || tb > 0) {
      r.compatible = false;
    }
  }
  return r;
}

SandwichFit fit_sandwich(const Corpus1D& t, const ClassificationResult& cls, const AlmostOrderConstant& k) {
  SandwichFit out;
  out.ctilde7 = std::pow(k.value(), 7);
  const bool gauge = cls.type == Classification::GaugeType;
  if (cls.type != Classification::IdentityType && !gauge) {
    out.flagged = true;
    out.diagnostics.push_back("sandwich fit needs IdentityType or GaugeType");
    return out;
  }
  std::vector<Rational> alphas;
  if (gauge) {
    for (const auto& [a, c] : cls.samples.c_exact) alphas.push_back(c * a);
  } else {
    for (const auto& [z, phi] : cls.samples.phi_exact) alphas.push_back(phi / z);
  }
  if (alphas.empty()) {
    out.flagged = true;
    out.diagnostics.push_back(gauge ? "no linear functions to fit the dilation" : "no indicators to fit the dilation");
    return out;
  }
  out.alpha_exact = std::all_of(alphas.begin(), alphas.end(), [&](const Rational& a) { return a == alphas.front(); });
  if (out.alpha_exact) {
    out.alpha = alphas.front();
  } else {
    // Least squares on log phi(z) - log z (slope fixed by the type).
    double s = 0;
    for (const auto& a : alphas) s += std::log(a.get_d());
    out.alpha = to_rational(std::exp(s / static_cast<double>(alphas.size())));
  }

  std::vector<PLConvex1D> refs;
  refs.reserve(t.size());
  bool any = false;
  bool compatible = true;
  Rational lo = 0, hi = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    refs.push_back(compose_dilate(gauge ? j_transform(t.domain[i]) : t.domain[i], out.alpha));
    const RatioRange r = ratio_range(t.image(i), refs.back());
    if (!r.compatible) {
      compatible = false;
      out.diagnostics.push_back("no finite sandwich for " + describe(t.domain[i]));
      continue;
    }
    if (!r.constrained) continue;
    lo = any ? std::min(lo, r.lo) : r.lo;
    hi = any ? std::max(hi, r.hi) : r.hi;
    any = true;
  }
  if (!compatible) {
    out.flagged = true;
    out.big_c = ExactValue::infinity();
    out.ratio = std::numeric_limits<double>::infinity();
    return out;
  }
  if (!any) lo = hi = 1;
  out.c = lo;
  out.big_c = ExactValue(hi);
  out.ratio = Rational(hi / lo).get_d();

  out.certified = true;
  for (std::size_t i = 0; i < t.size() && out.certified; ++i) {
    if (!leq(scale(refs[i], lo), t.image(i)) || !leq(t.image(i), scale(refs[i], hi))) {
      out.certified = false;
      out.diagnostics.push_back("sandwich re-verification failed for " + describe(t.domain[i]));
    }
  }
  if (Rational(hi / lo) > k.power(10)) {
    out.flagged = true;
    out.diagnostics.push_back("C/c exceeds C~^10");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Fuzzing

Jitter::Jitter(std::uint64_t seed, const AlmostOrderConstant& k) : rng_(seed), ctilde_(k.value()) {
  double h = std::sqrt(ctilde_);
  hi_ = to_rational(h);
  while (hi_ * hi_ > k.big()) {
    h = std::nextafter(h, 0.0);
    hi_ = to_rational(h);
  }
  if (hi_ < 1) hi_ = 1;
  lo_ = 1 / hi_;
}

Rational Jitter::next() {
  const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  Rational kappa = to_rational(std::pow(ctilde_, u - 0.5));
  if (kappa < lo_) kappa = lo_;
  if (kappa > hi_) kappa = hi_;
  return kappa;
}

PLConvex1D apply_base(BaseTransform b, const PLConvex1D& f) {
  switch (b) {
    case BaseTransform::Identity: return f;
    case BaseTransform::Gauge: return j_transform(f);
    case BaseTransform::Legendre: return legendre(f);
    case BaseTransform::A: return a_transform(f);
  }
  throw std::invalid_argument("apply_base: unknown base");
}

Corpus1D fuzz_transform(const FuzzConfig& cfg, const AlmostOrderConstant& k, const std::vector<PLConvex1D>& domain) {
  if (cfg.alpha <= 0) throw std::invalid_argument("fuzz_transform: alpha must be positive");
  Jitter jitter(cfg.seed, k);
  std::vector<PLConvex1D> images;
  images.reserve(domain.size());
  for (const auto& f : domain) {
    const Rational kappa = jitter.next();
    images.push_back(scale(compose_dilate(apply_base(cfg.base, f), cfg.alpha), kappa));
  }
  // Fisher-Yates with raw engine output, so the permutation does not depend
  // on the standard library's distribution implementations.
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::size_t> perm(domain.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng() % i]);

  Corpus1D t;
  t.domain = domain;
  t.codomain.resize(domain.size(), make_zero());
  t.mapping = perm;
  for (std::size_t i = 0; i < domain.size(); ++i) t.codomain[perm[i]] = std::move(images[i]);
  t.provenance.generator = std::string("fuzz base=") + to_string(cfg.base) + " ctilde=" + to_string(k.big()) +
                           " alpha=" + to_string(cfg.alpha);
  t.provenance.seed = cfg.seed;
  t.lattice_triples = designate_lattice_triples(t.domain);

  const auto violations = is_reversing(cfg.base) ? check_almost_reversing(t, k) : check_almost_preserving(t, k);
  if (!violations.empty()) {
    const auto& v = violations.front();
    throw FuzzConstructionError("fuzz_transform: construction bound violated (" + v.condition + " on pair " +
                                std::to_string(v.i) + "," + std::to_string(v.j) + " at " + v.witness + ")");
  }
  return t;
}

// ---------------------------------------------------------------------------
// Pipeline

namespace {

std::optional<std::pair<std::size_t, std::size_t>> find_extremes(const Corpus1D& t) {
  const PLConvex1D zero = make_zero();
  const PLConvex1D top = make_indicator(0);
  std::optional<std::size_t> iz, it;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!iz && t.domain[i] == zero) iz = i;
    if (!it && t.domain[i] == top) it = i;
  }
  if (!iz || !it) return std::nullopt;
  return std::make_pair(*iz, *it);
}

}  // namespace

bool check_extremes(const Corpus1D& t) {
  t.validate();
  const auto ex = find_extremes(t);
  if (!ex) throw ConfigurationError("check_extremes: corpus must contain 0 and 1_{0}");
  return t.image(ex->first) == make_zero() && t.image(ex->second) == make_indicator(0);
}

StabilityReport analyze(const Corpus1D& t, const AlmostOrderConstant& k, bool reversing,
                        const std::string& corpus_description) {
  StabilityReport r;
  r.corpus = corpus_description;
  r.provenance = t.provenance;
  r.ctilde = k.value();
  r.reversing = reversing;
  r.violations = reversing ? check_almost_reversing(t, k) : check_almost_preserving(t, k);
  // The reversing case is reduced to the preserving one through A o T.
  const Corpus1D s = reversing ? compose_with_dual(t) : t;
  r.inverse_violations = check_inverse_conditions(s, k);
  if (!t.lattice_triples.empty()) r.lattice_violations = check_lattice_stability(t, k, reversing);
  if (find_extremes(s)) r.extremes_ok = check_extremes(s);

  r.classification_detail = classify(s, k);
  const Classification raw = r.classification_detail.type;
  r.diagnostics = r.classification_detail.diagnostics;
  r.classification = raw;
  if (reversing && raw == Classification::IdentityType) r.classification = Classification::ReversingAType;
  if (reversing && raw == Classification::GaugeType) r.classification = Classification::ReversingLegendreType;

  if (!r.violations.empty() || !r.inverse_violations.empty() || !r.lattice_violations.empty() ||
      r.extremes_ok == false) {
    r.diagnostics.push_back("order conditions fail on the corpus");
    r.classification = Classification::Inconsistent;
  }
  if (raw == Classification::IdentityType || raw == Classification::GaugeType) {
    try {
      r.exponent = estimate_exponent(r.classification_detail.samples.phi);
    } catch (const std::invalid_argument& e) {
      r.diagnostics.push_back(std::string("exponent: ") + e.what());
    }
    r.sandwich = fit_sandwich(s, r.classification_detail, k);
    if (r.sandwich->flagged || !r.sandwich->certified) {
      r.diagnostics.push_back("sandwich not certified within C~^10");
      r.classification = Classification::Inconsistent;
    }
  }
  return r;
}

nlohmann::json to_json(const ConditionViolation& v) {
  return {{"i", v.i}, {"j", v.j}, {"condition", v.condition}, {"witness", v.witness}};
}

nlohmann::json to_json(const StabilityReport& r) {
  using nlohmann::json;
  auto list = [](const std::vector<ConditionViolation>& vs) {
    json a = json::array();
    for (const auto& v : vs) a.push_back(to_json(v));
    return a;
  };
  auto pairs = [](const std::vector<std::pair<Rational, Rational>>& ps) {
    json a = json::array();
    for (const auto& [x, y] : ps) a.push_back(json::array({rational_to_json(x), rational_to_json(y)}));
    return a;
  };
  json out;
  out["classification"] = to_string(r.classification);
  out["orientation"] = r.reversing ? "reversing" : "preserving";
  out["ctilde"] = r.ctilde;
  out["corpus"] = r.corpus;
  out["provenance"] = {{"generator", r.provenance.generator}, {"seed", r.provenance.seed}};
  out["violations"] = list(r.violations);
  out["inverse_violations"] = list(r.inverse_violations);
  out["lattice_violations"] = list(r.lattice_violations);
  out["extremes_ok"] = r.extremes_ok ? json(*r.extremes_ok) : json(nullptr);
  out["indicator_map"] = {{"phi", pairs(r.classification_detail.samples.phi_exact)},
                          {"c", pairs(r.classification_detail.samples.c_exact)}};
  if (r.exponent) {
    out["exponent"] = {{"gamma", r.exponent->gamma},
                       {"cauchy_defect", r.exponent->cauchy_defect},
                       {"sup_error", r.exponent->sup_error},
                       {"n", r.exponent->n}};
  } else {
    out["exponent"] = nullptr;
  }
  if (r.sandwich) {
    const SandwichFit& s = *r.sandwich;
    out["sandwich"] = {{"alpha", rational_to_json(s.alpha)},
                       {"alpha_exact", s.alpha_exact},
                       {"c", rational_to_json(s.c)},
                       {"C", s.big_c.is_infinite() ? json("inf") : rational_to_json(s.big_c.value())},
                       {"ratio", std::isfinite(s.ratio) ? json(s.ratio) : json("inf")},
                       {"ctilde7", s.ctilde7},
                       {"certified", s.certified},
                       {"flagged", s.flagged},
                       {"diagnostics", s.diagnostics}};
  } else {
    out["sandwich"] = nullptr;
  }
  out["diagnostics"] = r.diagnostics;
  return out;
}

}  // namespace convexlab
