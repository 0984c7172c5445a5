#pragma once

#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "convexlab/almost_order.hpp"
#include "convexlab/corpus.hpp"
#include "convexlab/grid.hpp"
#include "convexlab/pl_convex.hpp"

namespace convexlab {

struct ConditionViolation {
  std::size_t i = 0;
  std::size_t j = 0;
  std::string condition;  // e.g. "f<=g => Tf<=C*Tg"
  std::string witness;    // where the conclusion fails
};

namespace order_detail {

inline std::optional<std::string> violation(const PLConvex1D& f, const PLConvex1D& g, const Rational& factor) {
  if (auto x = find_violation(f, g, factor)) return "x=" + to_string(*x);
  return std::nullopt;
}

inline std::optional<std::string> violation(const GridFunction2D& f, const GridFunction2D& g, const Rational& factor) {
  if (auto n = find_violation(f, g, factor.get_d())) {
    return "node=(" + std::to_string(n->first) + "," + std::to_string(n->second) + ")";
  }
  return std::nullopt;
}

inline bool holds(const PLConvex1D& f, const PLConvex1D& g, const Rational& factor) { return leq(f, g, factor); }
inline bool holds(const GridFunction2D& f, const GridFunction2D& g, const Rational& factor) {
  return leq(f, g, factor.get_d());
}

inline PLConvex1D meet(const PLConvex1D& f, const PLConvex1D& g) { return hat_inf2(f, g); }
inline PLConvex1D join(const PLConvex1D& f, const PLConvex1D& g) { return sup2(f, g); }
inline GridFunction2D meet(const GridFunction2D& f, const GridFunction2D& g) { return hat_inf2_grid(f, g); }
inline GridFunction2D join(const GridFunction2D& f, const GridFunction2D& g) { return sup2_grid(f, g); }

// Runs check(i, j, out) for all ordered pairs i != j, parallel over i, and
// concatenates per-i results in index order.
template <class Check>
std::vector<ConditionViolation> all_pairs(std::size_t n, Check&& check) {
  std::vector<std::vector<ConditionViolation>> per(n);
  const long ln = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long li = 0; li < ln; ++li) {
    const auto i = static_cast<std::size_t>(li);
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) check(i, j, per[i]);
    }
  }
  std::vector<ConditionViolation> out;
  for (auto& v : per) out.insert(out.end(), v.begin(), v.end());
  return out;
}

// premise(a, b, factor) => conclusion lhs <= factor2 * rhs
template <class F>
void implication(const F& pa, const F& pb, const Rational& pfactor, const F& ca, const F& cb,
                 const Rational& cfactor, std::size_t i, std::size_t j, const char* name,
                 std::vector<ConditionViolation>& out) {
  if (!holds(pa, pb, pfactor)) return;
  if (auto w = violation(ca, cb, cfactor)) out.push_back({i, j, name, *w});
}

}  // namespace order_detail

// f <= g => Tf <= C Tg, and f <= c g => Tf <= Tg.
template <class F>
std::vector<ConditionViolation> check_almost_preserving(const CorpusTransform<F>& t, const AlmostOrderConstant& k) {
  t.validate();
  return order_detail::all_pairs(t.size(), [&](std::size_t i, std::size_t j, auto& out) {
    const F& f = t.domain[i];
    const F& g = t.domain[j];
    order_detail::implication(f, g, Rational(1), t.image(i), t.image(j), k.big(), i, j, "f<=g => Tf<=C*Tg", out);
    order_detail::implication(f, g, k.small(), t.image(i), t.image(j), Rational(1), i, j, "f<=c*g => Tf<=Tg", out);
  });
}

// f <= g => c Tg <= Tf, and f <= c g => Tg <= Tf.
template <class F>
std::vector<ConditionViolation> check_almost_reversing(const CorpusTransform<F>& t, const AlmostOrderConstant& k) {
  t.validate();
  return order_detail::all_pairs(t.size(), [&](std::size_t i, std::size_t j, auto& out) {
    const F& f = t.domain[i];
    const F& g = t.domain[j];
    order_detail::implication(f, g, Rational(1), t.image(j), t.image(i), k.big(), i, j, "f<=g => c*Tg<=Tf", out);
    order_detail::implication(f, g, k.small(), t.image(j), t.image(i), Rational(1), i, j, "f<=c*g => Tg<=Tf", out);
  });
}

// Tf <= Tg => f <= C g, and Tf <= c Tg => f <= g.
template <class F>
std::vector<ConditionViolation> check_inverse_conditions(const CorpusTransform<F>& t, const AlmostOrderConstant& k) {
  t.validate();
  return order_detail::all_pairs(t.size(), [&](std::size_t i, std::size_t j, auto& out) {
    const F& tf = t.image(i);
    const F& tg = t.image(j);
    order_detail::implication(tf, tg, Rational(1), t.domain[i], t.domain[j], k.big(), i, j, "Tf<=Tg => f<=C*g", out);
    order_detail::implication(tf, tg, k.small(), t.domain[i], t.domain[j], Rational(1), i, j, "Tf<=c*Tg => f<=g", out);
  });
}

// On each designated triple: c^2 T(max) <= max(Tf, Tg) <= C T(max) and
// c T(meet) <= meet(Tf, Tg) <= C^2 T(meet). A reversing transform exchanges
// the roles of max and meet on the image side.
template <class F>
std::vector<ConditionViolation> check_lattice_stability(const CorpusTransform<F>& t, const AlmostOrderConstant& k,
                                                        bool reversing = false) {
  t.validate();
  if (t.lattice_triples.empty()) throw ConfigurationError("lattice stability: no designated pairs");
  for (const LatticeTriple& tr : t.lattice_triples) {
    if (tr.sup < 0 || tr.inf < 0 || static_cast<std::size_t>(tr.sup) >= t.size() ||
        static_cast<std::size_t>(tr.inf) >= t.size() || tr.i >= t.size() || tr.j >= t.size()) {
      throw ConfigurationError("lattice stability: closure missing for a designated pair");
    }
    const F& f = t.domain[tr.i];
    const F& g = t.domain[tr.j];
    if (!(order_detail::join(f, g) == t.domain[static_cast<std::size_t>(tr.sup)]) ||
        !(order_detail::meet(f, g) == t.domain[static_cast<std::size_t>(tr.inf)])) {
      throw ConfigurationError("lattice stability: designated sup/meet is not the lattice operation");
    }
  }
  const Rational c1 = k.big();
  const Rational c2 = k.power(2);
  std::vector<std::vector<ConditionViolation>> per(t.lattice_triples.size());
  std::exception_ptr error;
  const long n = static_cast<long>(per.size());
#pragma omp parallel for schedule(dynamic)
  for (long li = 0; li < n; ++li) {
    try {
      const LatticeTriple& tr = t.lattice_triples[static_cast<std::size_t>(li)];
      auto& out = per[static_cast<std::size_t>(li)];
      const F& t_sup = t.image(static_cast<std::size_t>(tr.sup));
      const F& t_inf = t.image(static_cast<std::size_t>(tr.inf));
      const F join = order_detail::join(t.image(tr.i), t.image(tr.j));
      const F meet = order_detail::meet(t.image(tr.i), t.image(tr.j));
      const F& up = reversing ? meet : join;
      const F& down = reversing ? join : meet;
      auto check = [&](const F& a, const F& b, const Rational& fac, const char* name) {
        if (auto w = order_detail::violation(a, b, fac)) out.push_back({tr.i, tr.j, name, *w});
      };
      check(t_sup, up, c2, "c^2*T(sup) <= sup(Tf,Tg)");
      check(up, t_sup, c1, "sup(Tf,Tg) <= C*T(sup)");
      check(t_inf, down, c1, "c*T(inf) <= inf(Tf,Tg)");
      check(down, t_inf, c2, "inf(Tf,Tg) <= C^2*T(inf)");
    } catch (...) {
#pragma omp critical(convexlab_lattice_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  std::vector<ConditionViolation> all;
  for (auto& v : per) all.insert(all.end(), v.begin(), v.end());
  return all;
}

// T0 = 0 and T1_{0} = 1_{0}. Throws ConfigurationError when the corpus lacks
// either extreme.
bool check_extremes(const Corpus1D& t);

}  // namespace convexlab
