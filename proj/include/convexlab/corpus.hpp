#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "convexlab/pl_convex.hpp"

namespace convexlab {

class ConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Provenance {
  std::string generator;
  std::uint64_t seed = 0;
};

// Designated pair for lattice-stability checks: domain[sup] is max(f_i, f_j)
// and domain[inf] their convex-envelope meet (-1 when absent).
struct LatticeTriple {
  std::size_t i = 0;
  std::size_t j = 0;
  long sup = -1;
  long inf = -1;
};

// A transform known on a finite family: T(domain[i]) = codomain[mapping[i]].
template <class F, class G = F>
struct CorpusTransform {
  std::vector<F> domain;
  std::vector<G> codomain;
  std::vector<std::size_t> mapping;
  Provenance provenance;
  std::vector<LatticeTriple> lattice_triples;

  std::size_t size() const { return domain.size(); }
  const G& image(std::size_t i) const { return codomain[mapping[i]]; }

  // Throws ConfigurationError unless mapping is a bijection onto codomain.
  void validate() const {
    if (domain.size() != codomain.size() || mapping.size() != domain.size()) {
      throw ConfigurationError("corpus transform: domain, codomain and mapping sizes differ");
    }
    std::vector<bool> hit(mapping.size(), false);
    for (std::size_t m : mapping) {
      if (m >= hit.size() || hit[m]) throw ConfigurationError("corpus transform: mapping is not a bijection");
      hit[m] = true;
    }
  }
};

using Corpus1D = CorpusTransform<PLConvex1D>;

// Families for the built-in one-dimensional corpus. Indicators 1_[0, r^k]
// and linear functions l_{r^k} for k = -half_range..half_range; triangles on
// a coarser grid; the two extremes 0 and 1_{0}.
struct CorpusSpec {
  bool indicators = true;
  bool linears = true;
  bool extremes = true;
  bool triangles = false;
  int half_range = 16;
  Rational ratio = 2;
  int triangle_half_range = 2;

  std::string describe() const;
};

std::vector<PLConvex1D> build_corpus(const CorpusSpec& spec);

// Every pair (i < j) whose sup and envelope meet are themselves members.
std::vector<LatticeTriple> designate_lattice_triples(const std::vector<PLConvex1D>& domain);

// Transform with T = fn on every element, codomain in domain order.
template <class Fn>
Corpus1D corpus_from_map(std::vector<PLConvex1D> domain, Fn&& fn, std::string generator) {
  Corpus1D t;
  t.codomain.reserve(domain.size());
  for (const auto& f : domain) t.codomain.push_back(fn(f));
  t.mapping.resize(domain.size());
  for (std::size_t i = 0; i < domain.size(); ++i) t.mapping[i] = i;
  t.domain = std::move(domain);
  t.provenance.generator = std::move(generator);
  return t;
}

}  // namespace convexlab
