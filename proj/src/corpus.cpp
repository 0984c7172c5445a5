#include "convexlab/corpus.hpp"

#include <map>

#include "convexlab/extremal.hpp"

namespace convexlab {

namespace {

Rational rpow(const Rational& r, int k) {
  Rational out = 1;
  for (int i = 0; i < (k < 0 ? -k : k); ++i) out *= r;
  return k < 0 ? Rational(1 / out) : out;
}

}  // namespace

std::string CorpusSpec::describe() const {
  std::string s = "dyadic corpus ratio=" + to_string(ratio) + " k=" + std::to_string(-half_range) + ".." +
                  std::to_string(half_range) + " families:";
  if (extremes) s += " extremes";
  if (indicators) s += " indicators";
  if (linears) s += " linears";
  if (triangles) s += " triangles(k=" + std::to_string(-triangle_half_range) + ".." + std::to_string(triangle_half_range) + ")";
  return s;
}

std::vector<PLConvex1D> build_corpus(const CorpusSpec& spec) {
  if (spec.ratio <= 1) throw ConfigurationError("corpus ratio must exceed 1");
  if (spec.half_range < 0 || spec.triangle_half_range < 0) throw ConfigurationError("corpus ranges must be >= 0");
  std::vector<PLConvex1D> out;
  if (spec.extremes) {
    out.push_back(make_zero());
    out.push_back(make_indicator(0));
  }
  for (int k = -spec.half_range; k <= spec.half_range; ++k) {
    if (spec.indicators) out.push_back(make_indicator(rpow(spec.ratio, k)));
  }
  for (int k = -spec.half_range; k <= spec.half_range; ++k) {
    if (spec.linears) out.push_back(make_linear(rpow(spec.ratio, k)));
  }
  if (spec.triangles) {
    for (int kz = -spec.triangle_half_range; kz <= spec.triangle_half_range; ++kz) {
      for (int ka = -spec.triangle_half_range; ka <= spec.triangle_half_range; ++ka) {
        out.push_back(make_triangle(rpow(spec.ratio, kz), rpow(spec.ratio, ka)));
      }
    }
  }
  return out;
}

std::vector<LatticeTriple> designate_lattice_triples(const std::vector<PLConvex1D>& domain) {
  std::map<std::string, long> index;
  for (std::size_t i = 0; i < domain.size(); ++i) index.emplace(describe(domain[i]), static_cast<long>(i));
  auto find = [&](const PLConvex1D& f) -> long {
    auto it = index.find(describe(f));
    return it == index.end() ? -1 : it->second;
  };
  std::vector<LatticeTriple> out;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    for (std::size_t j = i + 1; j < domain.size(); ++j) {
      const long s = find(sup2(domain[i], domain[j]));
      const long m = find(hat_inf2(domain[i], domain[j]));
      if (s >= 0 && m >= 0) out.push_back({i, j, s, m});
    }
  }
  return out;
}

}  // namespace convexlab
