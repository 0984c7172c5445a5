#include "convexlab/grid_transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace convexlab {

namespace {

struct Node {
  double x1, x2, v;
};

void require_convex(const GridFunction2D& f, const char* op) {
  auto v = validate(f);
  if (!v.empty()) throw GridValidationError(op, std::move(v));
}

GridFunction2D legendre_kernel(const GridFunction2D& f, bool parallel) {
  if (f.tag() != ClassTag::Geometric) throw std::invalid_argument("legendre_grid: f must be geometric");
  require_convex(f, "legendre_grid");
  const LatticeSpec& L = f.lattice();
  std::vector<Node> pts;
  for (int j = 0; j < L.n; ++j) {
    for (int i = 0; i < L.n; ++i) {
      if (std::isfinite(f.at(i, j))) pts.push_back({L.coord(i), L.coord(j), f.at(i, j)});
    }
  }
  std::vector<double> out(f.values().size());
  const long total = static_cast<long>(out.size());
#pragma omp parallel for if (parallel) schedule(static)
  for (long k = 0; k < total; ++k) {
    const double s1 = L.coord(static_cast<int>(k % L.n));
    const double s2 = L.coord(static_cast<int>(k / L.n));
    double best = -kInf;
    for (const Node& p : pts) best = std::max(best, s1 * p.x1 + s2 * p.x2 - p.v);
    out[static_cast<std::size_t>(k)] = best;
  }
  // y = 0 contributes 0, so only rounding can go negative.
  for (double& v : out) v = std::max(v, 0.0);
  return GridFunction2D(L, std::move(out), f.tag());
}

GridFunction2D a_kernel(const GridFunction2D& f, bool parallel) {
  if (f.tag() != ClassTag::Geometric) throw std::invalid_argument("a_grid: f must be geometric");
  require_convex(f, "a_grid");
  const LatticeSpec& L = f.lattice();
  const int c = L.center();
  std::vector<Node> zeros;  // (y, 0)
  std::vector<Node> cands;  // (y, 1 / f(y))
  std::vector<Node> tails;  // (u / s, unused)
  for (int j = 0; j < L.n; ++j) {
    for (int i = 0; i < L.n; ++i) {
      const double v = f.at(i, j);
      if (std::isinf(v)) continue;
      const double y1 = L.coord(i), y2 = L.coord(j);
      if (v == 0.0) {
        zeros.push_back({y1, y2, 0.0});
        continue;
      }
      cands.push_back({y1, y2, 1.0 / v});
      const bool boundary = i == 0 || j == 0 || i == L.n - 1 || j == L.n - 1;
      if (!boundary) continue;
      const LatticeDirection d = primitive_direction(i - c, j - c);
      const double prev = f.at(i - d.p, j - d.q);
      if (std::isinf(prev)) continue;
      const double s = (v - prev) / (L.step() * d.norm());
      if (s <= 0) continue;
      const double r = std::hypot(y1, y2);
      tails.push_back({y1 / (r * s), y2 / (r * s), 0.0});
    }
  }

  std::vector<double> out(f.values().size());
  const long total = static_cast<long>(out.size());
#pragma omp parallel for if (parallel) schedule(static)
  for (long k = 0; k < total; ++k) {
    const double x1 = L.coord(static_cast<int>(k % L.n));
    const double x2 = L.coord(static_cast<int>(k / L.n));
    bool in_polar = true;
    for (const Node& z : zeros) {
      if (x1 * z.x1 + x2 * z.x2 > 1.0 + 1e-12) {
        in_polar = false;
        break;
      }
    }
    if (!in_polar) {
      out[static_cast<std::size_t>(k)] = kInf;
      continue;
    }
    double best = 0.0;
    for (const Node& p : cands) best = std::max(best, (x1 * p.x1 + x2 * p.x2 - 1.0) * p.v);
    for (const Node& t : tails) best = std::max(best, x1 * t.x1 + x2 * t.x2);
    out[static_cast<std::size_t>(k)] = best;
  }
  return GridFunction2D(L, std::move(out), ClassTag::Geometric);
}

}  // namespace

GridFunction2D legendre_grid(const GridFunction2D& f) { return legendre_kernel(f, true); }
GridFunction2D a_grid(const GridFunction2D& f) { return a_kernel(f, true); }
GridFunction2D j_grid(const GridFunction2D& f) { return legendre_grid(a_grid(f)); }

namespace serial {
GridFunction2D legendre_grid(const GridFunction2D& f) { return legendre_kernel(f, false); }
GridFunction2D a_grid(const GridFunction2D& f) { return a_kernel(f, false); }
}  // namespace serial

}  // namespace convexlab
